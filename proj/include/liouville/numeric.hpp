#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace liouville {

namespace mp = boost::multiprecision;

using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Rational = mp::mpq_rational;
using Integer = mp::mpz_int;

inline constexpr unsigned kDefaultPrecisionBits = 128;

// LIOUVILLE_PRECISION_BITS if set and sane, otherwise 128.
unsigned default_precision_bits();

// Precision given to Reals created from now on. Boost keeps this in a
// process-wide variable, so none of the library is thread-safe.
unsigned precision_bits();
void set_precision_bits(unsigned bits);
unsigned precision_of(const Real& x);

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

Real to_real(const Rational& q);
Real to_real(long long n);
Rational to_rational(const Real& x);

// Accepts "a/b", integers and decimals with an optional exponent.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);
Real parse_real(std::string_view text);

std::string format_real(const Real& x, int digits = 17);
std::string format_rational(const Rational& q);
double to_double(const Rational& q);

// Relative tolerance τ for inequality checks: 10⁻³⁰.
Rational default_tolerance();

Real positive_infinity();
bool is_finite(const Real& x);

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

// Real pow with exact-zero handling: 0^0 = 1, 0^e = 0 for e > 0.
Real rpow(const Real& base, const Real& e);

}  // namespace liouville
