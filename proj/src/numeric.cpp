#include "liouville/numeric.hpp"

#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace liouville {

namespace {

unsigned digits10_for_bits(unsigned bits)
{
    unsigned d = 1;
    while (mp::detail::digits10_2_2(d) < bits) ++d;
    return d;
}

struct DefaultInit {
    DefaultInit() { set_precision_bits(default_precision_bits()); }
};
const DefaultInit default_init;

}  // namespace

unsigned default_precision_bits()
{
    const char* env = std::getenv("LIOUVILLE_PRECISION_BITS");
    if (env == nullptr || *env == '\0') return kDefaultPrecisionBits;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 64 || v > 65536) return kDefaultPrecisionBits;
    return static_cast<unsigned>(v);
}

unsigned precision_bits()
{
    return static_cast<unsigned>(mp::detail::digits10_2_2(Real::default_precision()));
}

void set_precision_bits(unsigned bits)
{
    Real::default_precision(digits10_for_bits(bits));
}

unsigned precision_of(const Real& x)
{
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision())
{
    set_precision_bits(bits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(long long n)
{
    Real r;
    mpfr_set_sj(r.backend().data(), n, MPFR_RNDN);
    return r;
}

Rational to_rational(const Real& x)
{
    if (!is_finite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
    Rational q;
    mpfr_get_q(q.backend().data(), x.backend().data());
    return q;
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto bad = [&]() { return std::invalid_argument("not a rational number: '" + s + "'"); };
    if (s.empty()) throw bad();

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational num = parse_rational(std::string_view(s).substr(0, slash));
        Rational den = parse_rational(std::string_view(s).substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return num / den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long long scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw bad();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw bad();
        ++i;
        if (i >= s.size()) throw bad();
        std::size_t used = 0;
        long long e = 0;
        try {
            e = std::stoll(s.substr(i), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (i + used != s.size() || e > 100000 || e < -100000) throw bad();
        scale += e;
    }

    // A leading zero would make GMP read the string as octal.
    auto nz = digits.find_first_not_of('0');
    Integer mant(nz == std::string::npos ? std::string("0") : digits.substr(nz));
    Integer ten_pow = mp::pow(Integer(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? Rational(mant, ten_pow) : Rational(mant * ten_pow);
    return negative ? Rational(-q) : q;
}

Real parse_real(std::string_view text)
{
    return to_real(parse_rational(text));
}

std::string format_real(const Real& x, int digits)
{
    if (mpfr_nan_p(x.backend().data())) return "nan";
    if (mpfr_inf_p(x.backend().data())) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string format_rational(const Rational& q)
{
    return q.str();
}

double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

Rational default_tolerance()
{
    return Rational(1, mp::pow(Integer(10), 30));
}

Real positive_infinity()
{
    Real r;
    mpfr_set_inf(r.backend().data(), 1);
    return r;
}

bool is_finite(const Real& x)
{
    return mpfr_number_p(x.backend().data()) != 0;
}

Real rpow(const Real& base, const Real& e)
{
    if (base == 0) {
        if (e == 0) return Real(1);
        if (e > 0) return Real(0);
        throw std::domain_error("zero raised to a negative power");
    }
    return mp::pow(base, e);
}

}  // namespace liouville
