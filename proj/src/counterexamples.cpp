#include "liouville/counterexamples.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace liouville {

namespace {

Real rounded(const Real& x)
{
    Real out;
    mpfr_set(out.backend().data(), x.backend().data(), MPFR_RNDN);
    return out;
}

// Λ₁–Λ₃ lose about 2 log₂ m bits to cancellation in 1 − X·S and the
// squared differences.
unsigned guard_bits(long m)
{
    unsigned len = static_cast<unsigned>(std::bit_width(static_cast<unsigned long>(m < 1 ? 1 : m)));
    return 3 * len + 64;
}

template <class F>
Real guarded(long m, F&& f)
{
    Real tmp;
    {
        PrecisionScope scope(precision_bits() + guard_bits(m));
        tmp = f();
    }
    return rounded(tmp);
}

Real real_of(long n)
{
    return to_real(static_cast<long long>(n));
}

Real gradient_power(const Real& g, const Real& q, long layer)
{
    if (q == 0) return Real(1);
    if (g == 0) {
        if (q > 0) return Real(0);
        throw std::domain_error("zero gradient with q < 0 at layer " + std::to_string(layer));
    }
    return pow(g, q);
}

// Shared shape of Λ₁, Λ₂, Λ₃, Λ₄: decaying part v_k of u at k = m−1, m, m+1
// and the ratio r = W_{m−1}/W_m of adjacent weights.
struct ThreePoint {
    Real vm1, v, vp1;
    Real r;
};

// S' = (v_{m+1} + r v_{m−1})/(1 + r) and the gradient quadratic G.
void stencil_parts(const ThreePoint& t, Real& s, Real& g)
{
    Real one_r = 1 + t.r;
    s = (t.vp1 + t.r * t.vm1) / one_r;
    Real dp = t.v - t.vp1;
    Real dm = t.vm1 - t.v;
    g = (dp * dp + t.r * dm * dm) / (2 * one_r);
}

ThreePoint power_log_profile(long m, const Real& sigma, const Real& beta, const Real& w_pow, const Real& w_log)
{
    auto v = [&](long k) {
        Real K = real_of(k);
        return 1 / (pow(K, sigma) * pow(log(K), beta));
    };
    auto w = [&](long k) {
        Real K = real_of(k);
        return pow(K, w_pow) * pow(log(K), w_log);
    };
    ThreePoint t;
    t.vm1 = v(m - 1);
    t.v = v(m);
    t.vp1 = v(m + 1);
    t.r = w(m - 1) / w(m);
    return t;
}

void require_log_argument(long m)
{
    if (m < 3) throw std::domain_error("calibration function needs m >= 3 (ln(m-1) > 0)");
}

Real lambda1(const PQPoint& pq, const Rational& eps, long m)
{
    require_log_argument(m);
    auto ex = exponents(pq, ExponentFamily::RegimeI);
    Real p = to_real(pq.p), q = to_real(pq.q);
    ThreePoint t = power_log_profile(m, to_real(ex.sigma), to_real(ex.beta), to_real(*ex.lambda),
                                     to_real(ex.beta + eps));
    Real s, g;
    stencil_parts(t, s, g);
    Real x = 1 / t.v;
    return pow(x, p - 1) * (1 - s / t.v) * gradient_power(g, -q / 2, m);
}

Real lambda3(const PQPoint& pq, const Rational& eps, long m)
{
    require_log_argument(m);
    auto ex = exponents(pq, ExponentFamily::RegimeIII);
    Real p = to_real(pq.p), q = to_real(pq.q);
    ThreePoint t = power_log_profile(m, to_real(ex.sigma), to_real(ex.beta), to_real(ex.beta),
                                     to_real(ex.beta + eps));
    Real s, g;
    stencil_parts(t, s, g);
    return (1 - s / t.v) * pow(t.v + 1, -p) * t.v * gradient_power(g, -q / 2, m);
}

Real lambda2(const PQPoint& pq, const Rational& eps, long m)
{
    require_log_argument(m);
    Real p = to_real(pq.p), q = to_real(pq.q);
    Real half_eps = to_real(eps / 2);
    ThreePoint t = power_log_profile(m, Real(0), half_eps, Real(1), to_real(1 + eps));
    Real s, g;
    stencil_parts(t, s, g);
    return (1 - s / t.v) * pow(t.v + 1, -p) * t.v * gradient_power(g, -q / 2, m);
}

Real lambda4(const PQPoint& pq, const Rational& lambda, long m)
{
    if (m < 2) throw std::domain_error("calibration function needs m >= 2");
    Real p = to_real(pq.p);
    ThreePoint t;
    t.vm1 = 1 / real_of(m - 1);
    t.v = 1 / real_of(m);
    t.vp1 = 1 / real_of(m + 1);
    t.r = exp(-to_real(lambda));
    Real s, g;
    stencil_parts(t, s, g);
    return (t.v - s) * pow(t.v + 1, -p) / sqrt(g);
}

Real v1_root(const PQPoint& pq, const Rational& lambda)
{
    Real q = to_real(pq.q), l = to_real(lambda);
    return pow(Real(2), q / 2) * pow(1 - exp(-l / 4), 1 - q);
}

Real v1_interior(const PQPoint& pq, const Rational& lambda)
{
    Real q = to_real(pq.q), l = to_real(lambda);
    Real e = exp(-l);
    return pow(Real(2), q / 2) * pow(1 - exp(-l / 4), 1 - q) * pow((1 + e) / (1 + exp(-l / 2)), q / 2) *
           (1 - exp(-3 * l / 4)) / (1 + e);
}

Real v2_interior(const PQPoint& pq, const Rational& lambda)
{
    Real q = to_real(pq.q), l = to_real(lambda);
    Real e = exp(-l);
    return pow(1 - exp(-(l - 1)), 1 - q) * pow((2 + 2 * e) / (1 + exp(l - 2)), q / 2) * (1 - exp(Real(-1))) /
           (1 + e);
}

Rational round_significant(const Real& x, int digits, bool up)
{
    if (!(x > 0)) throw std::invalid_argument("round_significant: value must be positive");
    long e10 = static_cast<long>(floor(log10(x)).convert_to<double>());
    long k = digits - 1 - e10;
    Integer ten_k = mp::pow(Integer(10), static_cast<unsigned>(k < 0 ? -k : k));
    Real scaled = k >= 0 ? Real(x * to_real(Rational(ten_k))) : Real(x / to_real(Rational(ten_k)));
    Rational r = to_rational(up ? ceil(scaled) : floor(scaled));
    Integer n = mp::numerator(r);
    return k >= 0 ? Rational(n, ten_k) : Rational(n * ten_k);
}

const Rational& need(const std::optional<Rational>& v, const char* what)
{
    if (!v) throw std::invalid_argument(std::string("missing parameter: ") + what);
    return *v;
}

MarginReport finish(MarginReport r)
{
    r.verified = std::all_of(r.layers.begin(), r.layers.end(), [](const LayerMargin& l) { return l.ok; });
    if (!r.layers.empty()) {
        Real worst;
        bool first = true;
        for (const auto& l : r.layers) {
            Real rel = l.scale == 0 ? Real(0) : Real(l.margin / l.scale);
            if (first || rel > worst) {
                worst = rel;
                r.worst_layer = l.layer;
                r.max_margin = l.margin;
                first = false;
            }
        }
        r.max_relative_margin = worst;
    }
    r.precision = precision_bits();
    return r;
}

template <class Tree>
MarginReport margins(const Tree& t, const RadialFunction& u, const PQPoint& pq, long lo, long hi,
                     const Rational& tau)
{
    Real p = to_real(pq.p), q = to_real(pq.q), tr = to_real(tau);
    MarginReport r;
    r.layers.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long n = lo; n <= hi; ++n) {
        RadialOperators ops = radial_operators(t, u, n);
        const Real& un = u.at(n);
        if (!(un > 0)) throw std::domain_error("solution is not positive at layer " + std::to_string(n));
        LayerMargin l;
        l.layer = n;
        l.laplacian = ops.laplacian;
        l.gradient = ops.gradient;
        l.term = pow(un, p) * gradient_power(ops.gradient, q, n);
        l.margin = l.laplacian + l.term;
        l.scale = max(abs(l.laplacian), abs(l.term));
        l.ok = l.margin <= tr * l.scale;
        r.layers.push_back(std::move(l));
    }
    return finish(std::move(r));
}

MarginReport margins_of(const BuiltCounterexample& b, long horizon, const Rational& tau)
{
    return std::visit(
        [&](const auto& t) -> MarginReport {
            long lo = std::holds_alternative<TwoSidedRadialTree>(b.tree) ? -horizon : 0;
            return margins(t, b.u, b.spec.pq, lo, horizon, tau);
        },
        b.tree);
}

bool agrees(const MarginReport& a, const MarginReport& b, const Rational& tau)
{
    Real tr = to_real(tau);
    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        const auto& x = a.layers[i];
        const auto& y = b.layers[i];
        if (x.margin == 0 && y.margin == 0) continue;
        if (x.ok != y.ok) return false;
        if (abs(x.margin - y.margin) > abs(y.margin) / 1000000) return false;
        if (abs(y.margin) <= 10 * tr * y.scale) return false;
    }
    return true;
}

std::vector<long> sample_layers(long horizon)
{
    std::vector<long> n;
    for (long k = 1; k <= std::min<long>(horizon, 64); ++k) n.push_back(k);
    double x = 64;
    while (x < static_cast<double>(horizon)) {
        x *= 1.1;
        long k = static_cast<long>(x);
        if (k < horizon && k > n.back()) n.push_back(k);
    }
    if (n.back() != horizon) n.push_back(horizon);
    return n;
}

std::vector<long> tail_layers(long horizon)
{
    std::vector<long> n;
    long lo = std::max<long>(1, horizon / 2);
    const long steps = 32;
    for (long i = 0; i <= steps; ++i) {
        long k = lo + (horizon - lo) * i / steps;
        if (n.empty() || k > n.back()) n.push_back(k);
    }
    return n;
}

bool is_delta_regime(Regime r)
{
    return r == Regime::I || r == Regime::III || r == Regime::IV;
}

Rational regime_param(const RegimeSpec& s)
{
    switch (s.regime) {
    case Regime::I:
    case Regime::II:
    case Regime::III: return need(s.eps, "eps");
    default: return need(s.lambda, "lambda");
    }
}

// Threshold on the right of δ^e ≤ Λ; 1 for regime II.
Real threshold_of(const RegimeSpec& s)
{
    if (s.regime == Regime::II) return Real(1);
    return pow(to_real(need(s.delta, "delta")), to_real(delta_exponent(s.regime, s.pq)));
}

}  // namespace

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::IV: return "IV";
    case Regime::V1: return "V1";
    case Regime::V2: return "V2";
    }
    return "?";
}

Regime parse_regime(const std::string& s)
{
    if (s == "I") return Regime::I;
    if (s == "II") return Regime::II;
    if (s == "III") return Regime::III;
    if (s == "IV") return Regime::IV;
    if (s == "V1") return Regime::V1;
    if (s == "V2") return Regime::V2;
    throw std::invalid_argument("unknown regime '" + s + "' (expected I, II, III, IV, V1 or V2)");
}

void validate(const RegimeSpec& s)
{
    if (s.N < 2) throw std::invalid_argument("tree degree N must be at least 2");
    if (s.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    const PQPoint& pq = s.pq;
    auto fail = [&](const char* region) {
        throw std::invalid_argument("regime " + to_string(s.regime) + " needs (p,q) in " + region + ", got (" +
                                    format_rational(pq.p) + ", " + format_rational(pq.q) + ")");
    };
    switch (s.regime) {
    case Regime::I:
        if (!in_region(pq, GRegion::G1)) fail("G1");
        break;
    case Regime::II:
        if (!in_region(pq, GRegion::G2)) fail("G2");
        break;
    case Regime::III:
        if (!in_region(pq, GRegion::G3)) fail("G3");
        break;
    case Regime::IV:
        if (!in_region(pq, GRegion::G4)) fail("G4");
        break;
    case Regime::V1:
        if (!(pq.p + pq.q == 1 && pq.p >= 0 && pq.q > 0)) fail("{p+q=1, p>=0, q>0}");
        break;
    case Regime::V2:
        if (!(pq.p + pq.q == 1 && pq.q < 0)) fail("{p+q=1, q<0}");
        break;
    }
    if (s.regime == Regime::I || s.regime == Regime::II || s.regime == Regime::III) {
        if (!(need(s.eps, "eps") > 0)) throw std::invalid_argument("eps must be positive");
    } else if (!(need(s.lambda, "lambda") > 0)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (s.regime != Regime::V1 && s.regime != Regime::V2 && s.n0 < 2) {
        throw std::invalid_argument("n0 must be at least 2");
    }
    if (is_delta_regime(s.regime) && s.delta && !(*s.delta > 0)) {
        throw std::invalid_argument("delta must be positive");
    }
}

BuiltCounterexample build(const RegimeSpec& s)
{
    validate(s);
    const long H = s.horizon;
    std::vector<Real> w, u;
    w.reserve(static_cast<std::size_t>(H + 1));
    u.reserve(static_cast<std::size_t>(H + 1));

    auto m_of = [&](long n) { return real_of(n + s.n0); };

    switch (s.regime) {
    case Regime::I:
    case Regime::III: {
        auto ex = exponents(s.pq, s.regime == Regime::I ? ExponentFamily::RegimeI : ExponentFamily::RegimeIII);
        Real sigma = to_real(ex.sigma), beta = to_real(ex.beta);
        Real w_pow = s.regime == Regime::I ? to_real(*ex.lambda) : beta;
        Real w_log = to_real(ex.beta + need(s.eps, "eps"));
        Real delta = to_real(need(s.delta, "delta"));
        for (long n = 0; n <= H; ++n) {
            Real m = m_of(n), L = log(m);
            w.push_back(pow(m, w_pow) * pow(L, w_log));
            Real decay = delta / (pow(m, sigma) * pow(L, beta));
            u.push_back(s.regime == Regime::I ? decay : Real(decay + 1));
        }
        break;
    }
    case Regime::II: {
        const Rational& eps = need(s.eps, "eps");
        Real w_log = to_real(1 + eps), half = to_real(eps / 2);
        for (long n = 0; n <= H; ++n) {
            Real m = m_of(n), L = log(m);
            w.push_back(m * pow(L, w_log));
            u.push_back(1 / pow(L, half) + 1);
        }
        break;
    }
    case Regime::IV: {
        Real l = to_real(need(s.lambda, "lambda"));
        Real delta = to_real(need(s.delta, "delta"));
        for (long n = 0; n <= H; ++n) {
            Real m = m_of(n);
            w.push_back(l * exp(l * m));
            u.push_back(delta / m + delta);
        }
        break;
    }
    case Regime::V1: {
        Real l = to_real(need(s.lambda, "lambda"));
        for (long n = 0; n <= H; ++n) {
            w.push_back(l * exp(l * n));
            u.push_back(exp(-l * n / 4));
        }
        break;
    }
    case Regime::V2: {
        Real l = to_real(need(s.lambda, "lambda"));
        std::vector<Real> w_neg;
        for (long n = 0; n <= H; ++n) w.push_back(l * exp(l * n));
        for (long k = 1; k <= H + 1; ++k) w_neg.push_back(l * exp(-l * k));
        for (long n = -H; n <= H; ++n) u.push_back(exp(-(l - 1) * n));
        return {s, TwoSidedRadialTree(s.N, std::move(w), std::move(w_neg)), RadialFunction(-H, std::move(u)),
                precision_bits()};
    }
    }
    return {s, RadialTree(s.N, std::move(w)), RadialFunction(0, std::move(u)), precision_bits()};
}

MarginReport verify_radial(const RadialTree& t, const RadialFunction& u, const PQPoint& pq, long horizon,
                           const Rational& tau)
{
    if (horizon < 0 || horizon > t.horizon() || !u.has(0) || !u.has(horizon + 1)) {
        throw std::out_of_range("verify horizon " + std::to_string(horizon) + " exceeds the stored layers");
    }
    MarginReport r = margins(t, u, pq, 0, horizon, tau);
    r.note = "finite-horizon certificate";
    return r;
}

MarginReport verify_radial(const TwoSidedRadialTree& t, const RadialFunction& u, const PQPoint& pq, long horizon,
                           const Rational& tau)
{
    if (horizon < 0 || horizon > t.horizon() || !u.has(-horizon - 1) || !u.has(horizon + 1)) {
        throw std::out_of_range("verify horizon " + std::to_string(horizon) + " exceeds the stored layers");
    }
    MarginReport r = margins(t, u, pq, -horizon, horizon, tau);
    r.note = "finite-horizon certificate";
    return r;
}

MarginReport verify(const BuiltCounterexample& built, long horizon, const Rational& tau)
{
    if (horizon < 0 || horizon > built.spec.horizon - 1) {
        throw std::out_of_range("verify horizon must lie in [0, built horizon - 1]");
    }
    RegimeSpec trimmed = built.spec;
    trimmed.horizon = horizon + 1;
    const unsigned cap = 4096;
    unsigned P = std::max(precision_bits(), built.precision);
    for (;;) {
        MarginReport a, b;
        {
            PrecisionScope scope(P);
            a = margins_of(build(trimmed), horizon, tau);
        }
        {
            PrecisionScope scope(P + 64);
            b = margins_of(build(trimmed), horizon, tau);
        }
        a.precision = P;
        if (agrees(a, b, tau)) {
            a.note = "finite-horizon certificate";
            return a;
        }
        if (P >= cap) {
            b.precision = P + 64;
            b.note = "finite-horizon certificate; precision cap reached before two precisions agreed";
            return b;
        }
        P *= 2;
    }
}

Delta0 delta0(const RegimeSpec& s)
{
    const Real p = to_real(s.pq.p), q = to_real(s.pq.q);
    const Real n0 = real_of(s.n0);
    auto x_of = [](const Real& m, const Real& sigma, const Real& beta) { return pow(m, sigma) * pow(log(m), beta); };
    switch (s.regime) {
    case Regime::I: {
        auto ex = exponents(s.pq, ExponentFamily::RegimeI);
        Real sigma = to_real(ex.sigma), beta = to_real(ex.beta);
        Real x0 = x_of(n0, sigma, beta), x1 = x_of(n0 + 1, sigma, beta);
        Real A = 1 / x0 - 1 / x1;
        Real d = p + q - 1;
        Real v = pow(Real(2), q / (2 * d)) * pow(A, (1 - q) / d) * pow(x0, p / d);
        return {v, BoundDirection::Upper};
    }
    case Regime::III: {
        auto ex = exponents(s.pq, ExponentFamily::RegimeIII);
        Real sigma = to_real(ex.sigma), beta = to_real(ex.beta);
        Real x0 = x_of(n0, sigma, beta), x1 = x_of(n0 + 1, sigma, beta);
        Real A = 1 / x0 - 1 / x1;
        Real d = q - 1;
        Real v = pow(Real(2), q / (2 * d)) * pow(A, (1 - q) / d) * pow(1 / x0 + 1, -p / d);
        return {v, BoundDirection::Upper};
    }
    case Regime::IV: {
        Real v = pow(Real(2), 1 / (2 * p)) / (1 / n0 + 1);
        return {v, BoundDirection::Lower};
    }
    default:
        throw std::invalid_argument("regime " + to_string(s.regime) + " has no delta0 formula");
    }
}

Real lambda_fn(Regime r, const PQPoint& pq, const Rational& param, long m)
{
    switch (r) {
    case Regime::I: return guarded(m, [&] { return lambda1(pq, param, m); });
    case Regime::II: return guarded(m, [&] { return lambda2(pq, param, m); });
    case Regime::III: return guarded(m, [&] { return lambda3(pq, param, m); });
    case Regime::IV: return guarded(m, [&] { return lambda4(pq, param, m); });
    case Regime::V1: return m == 0 ? v1_root(pq, param) : v1_interior(pq, param);
    case Regime::V2: return v2_interior(pq, param);
    }
    throw std::invalid_argument("unknown regime");
}

Real lambda_limit(Regime r, const PQPoint& pq, const Rational& param)
{
    switch (r) {
    case Regime::I:
    case Regime::III: {
        auto ex = exponents(pq, r == Regime::I ? ExponentFamily::RegimeI : ExponentFamily::RegimeIII);
        Real q = to_real(pq.q);
        return pow(2 / to_real(ex.sigma), q / 2 - 1) * to_real(param);
    }
    case Regime::II: return positive_infinity();
    case Regime::IV: {
        Real e = exp(-to_real(param));
        return sqrt(Real(2)) * (1 - e) / (1 + e);
    }
    default:
        throw std::invalid_argument("regime " + to_string(r) + " has no calibration limit");
    }
}

Real lambda_asymptote(Regime r, const PQPoint& pq, const Rational& param)
{
    if (r == Regime::I || r == Regime::III) {
        auto ex = exponents(pq, r == Regime::I ? ExponentFamily::RegimeI : ExponentFamily::RegimeIII);
        Real q = to_real(pq.q), sigma = to_real(ex.sigma);
        return pow(Real(2), q / 2 - 1) * pow(sigma, 1 - q) * to_real(param);
    }
    return lambda_limit(r, pq, param);
}

Rational delta_exponent(Regime r, const PQPoint& pq)
{
    switch (r) {
    case Regime::I: return pq.p + pq.q - 1;
    case Regime::III: return pq.q - 1;
    case Regime::IV: return pq.p;
    default: throw std::invalid_argument("regime " + to_string(r) + " has no delta");
    }
}

TailReport tail_check(const RegimeSpec& s, long horizon)
{
    TailReport t;
    const Rational param = regime_param(s);
    if (s.regime == Regime::V1 || s.regime == Regime::V2) {
        Real rhs = lambda_fn(s.regime, s.pq, param, 1);
        if (s.regime == Regime::V1) rhs = min(rhs, lambda_fn(s.regime, s.pq, param, 0));
        t.min_ratio = rhs;
        t.holds = rhs >= 1;
        t.doubled_margin = rhs >= 2;
        t.rule = "layer condition is the same on every layer; closed form checked";
        return t;
    }
    Real threshold = threshold_of(s);
    Real limit = lambda_asymptote(s.regime, s.pq, param);
    bool above = true, nondecreasing = true, above_limit = true, doubled = true;
    Real prev;
    bool first = true;
    for (long n : tail_layers(horizon)) {
        Real v = lambda_fn(s.regime, s.pq, param, n + s.n0);
        Real ratio = v / threshold;
        if (first || ratio < t.min_ratio) t.min_ratio = ratio;
        above = above && v >= threshold;
        doubled = doubled && v >= 2 * threshold;
        above_limit = above_limit && v >= limit;
        if (!first && v < prev) nondecreasing = false;
        prev = v;
        first = false;
    }
    t.doubled_margin = doubled;
    if (doubled) {
        t.holds = true;
        t.rule = "lambda >= 2*threshold on [H/2,H]";
    } else if (above && nondecreasing) {
        t.holds = true;
        t.rule = "lambda >= threshold on [H/2,H] and nondecreasing there";
    } else if (above && above_limit) {
        t.holds = true;
        t.rule = "lambda >= threshold on [H/2,H] and above its limit there";
    } else {
        t.holds = false;
        t.rule = above ? "lambda >= threshold on [H/2,H] but decreasing toward a limit below it"
                       : "lambda below threshold on [H/2,H]";
    }
    return t;
}

CalibrationResult calibrate(const CalibrationRequest& req)
{
    CalibrationResult res;
    RegimeSpec s;
    s.regime = req.regime;
    s.pq = req.pq;
    s.N = req.N;
    s.eps = req.eps;
    s.lambda = req.lambda;
    s.horizon = req.horizon + 1;
    if (req.horizon < 1) throw std::invalid_argument("calibration horizon must be at least 1");

    auto try_spec = [&](const RegimeSpec& spec) -> bool {
        TailReport tail = tail_check(spec, req.horizon);
        if (!tail.holds) return false;
        MarginReport rep = verify(build(spec), req.horizon, req.tau);
        res.spec = spec;
        res.report = std::move(rep);
        res.tail = std::move(tail);
        return res.report.verified;
    };

    if (req.regime == Regime::V1 || req.regime == Regime::V2) {
        s.n0 = 0;
        const Real need_rhs = 1 + Real(1) / 1000;
        for (long l = 1; l <= 64; l *= 2) {
            s.lambda = Rational(l);
            validate(s);
            Real rhs = lambda_fn(s.regime, s.pq, *s.lambda, 1);
            if (s.regime == Regime::V1) rhs = min(rhs, lambda_fn(s.regime, s.pq, *s.lambda, 0));
            if (rhs < need_rhs) continue;
            if (try_spec(s)) {
                res.success = true;
                res.message = "lambda = " + std::to_string(l);
                return res;
            }
        }
        res.success = false;
        res.message = "no lambda in {1, 2, ..., 64} passes";
        return res;
    }

    const Rational param = regime_param(s);
    Real best_ratio;
    long best_n0 = 0;
    bool have_best = false;
    const long n0_cap = 1L << 62;
    for (long n0 = 2; n0 > 0 && n0 <= n0_cap; n0 *= 2) {
        s.n0 = n0;
        s.delta.reset();
        validate(s);
        if (is_delta_regime(s.regime)) {
            Delta0 d0 = delta0(s);
            Real lim = min(lambda_limit(s.regime, s.pq, param), lambda_asymptote(s.regime, s.pq, param));
            Real e = to_real(delta_exponent(s.regime, s.pq));
            Real d1 = pow(lim / 2, 1 / e);
            bool lower = d0.direction == BoundDirection::Lower;
            Real d = lower ? max(d0.value, d1) : min(d0.value, d1);
            s.delta = round_significant(d, 12, lower);
        }
        Real threshold = threshold_of(s);
        Real worst;
        bool pass = true, first = true;
        for (long n : sample_layers(req.horizon)) {
            Real v = lambda_fn(s.regime, s.pq, param, n + n0);
            Real ratio = v / threshold;
            if (first || ratio < worst) worst = ratio;
            first = false;
            if (v < threshold) {
                pass = false;
                break;
            }
        }
        if (!have_best || worst > best_ratio) {
            best_ratio = worst;
            best_n0 = n0;
            have_best = true;
        }
        if (!pass) continue;
        if (try_spec(s)) {
            res.success = true;
            res.message = "n0 = " + std::to_string(n0);
            return res;
        }
    }
    res.success = false;
    res.message = "no n0 in {2, 4, ..., 2^62} passes; best sampled min lambda/threshold = " +
                  format_real(best_ratio, 6) + " at n0 = " + std::to_string(best_n0);
    return res;
}

Real ball_volume(const AnyRadialTree& t, long n)
{
    return std::visit([&](const auto& tree) { return tree.ball_volume(n); }, t);
}

Real p0_of(const AnyRadialTree& t)
{
    return std::visit([](const auto& tree) { return tree.p0(); }, t);
}

VolumeBand volume_band(const BuiltCounterexample& built, const std::function<Real(long)>& target, long n_lo,
                       long n_hi)
{
    return volume_band(built.tree, target, n_lo, n_hi);
}

VolumeBand volume_band(const AnyRadialTree& any, const std::function<Real(long)>& target, long n_lo, long n_hi)
{
    if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("volume band needs 2 <= n_lo <= n_hi");
    VolumeBand band;
    bool first = true;
    std::visit(
        [&](const auto& tree) {
            if (n_hi > tree.horizon()) throw std::out_of_range("volume band exceeds the built horizon");
            Real vol = tree.ball_volume(n_lo - 1);
            for (long n = n_lo; n <= n_hi; ++n) {
                if constexpr (std::is_same_v<std::decay_t<decltype(tree)>, RadialTree>) {
                    vol += tree.layer_measure(n);
                } else {
                    vol += tree.layer_measure(n) + tree.layer_measure(-n);
                }
                Real g = target(n);
                if (!(g > 0)) throw std::invalid_argument("volume target is not positive at n = " + std::to_string(n));
                Real ratio = vol / g;
                if (first || ratio < band.ratio_min) band.ratio_min = ratio;
                if (first || ratio > band.ratio_max) band.ratio_max = ratio;
                first = false;
            }
        },
        any);
    return band;
}

HarnackReport radial_harnack(const RadialFunction& u, long lo, long hi, const Real& p0)
{
    HarnackReport r;
    r.worst_ratio = 1;
    for (long n = lo; n <= hi; ++n) {
        if (!(u.at(n) > 0)) throw std::invalid_argument("radial_harnack: u is not positive at layer " + std::to_string(n));
    }
    for (long n = lo; n < hi; ++n) {
        Real ratio = max(u.at(n) / u.at(n + 1), u.at(n + 1) / u.at(n));
        if (!r.worst_edge || ratio > r.worst_ratio) {
            r.worst_ratio = ratio;
            r.worst_edge = std::make_pair(static_cast<Vertex>(n - lo), static_cast<Vertex>(n + 1 - lo));
        }
    }
    r.holds = r.worst_ratio <= p0;
    return r;
}

}  // namespace liouville
