#include "liouville/caccioppoli.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace liouville {

namespace {

Rational h_at(unsigned long long n, std::size_t d)
{
    if (d == std::numeric_limits<std::size_t>::max()) return Rational(0);
    if (d <= n) return Rational(1);
    if (d >= 2 * n) return Rational(0);
    return Rational(2) - Rational(static_cast<unsigned long long>(d), n);
}

Real gradient_power(const Real& g, const Real& q)
{
    if (q == 0) return Real(1);
    if (g == 0) {
        if (q > 0) return Real(0);
        return positive_infinity();
    }
    return pow(g, q);
}

bool member(const std::vector<bool>& omega, Vertex x)
{
    return omega.empty() || omega[x];
}

}  // namespace

TestFunction h_function(unsigned n, Vertex base)
{
    if (n < 1) throw std::invalid_argument("h_n needs n >= 1");
    return {TestFunction::Kind::H, n, base};
}

TestFunction phi_function(unsigned i, Vertex base)
{
    if (i < 1 || i > 32) throw std::invalid_argument("phi_i needs 1 <= i <= 32");
    return {TestFunction::Kind::Phi, i, base};
}

TestFunction parse_test_function(const std::string& text, Vertex base)
{
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("test function must look like h:8 or phi:3");
    std::string kind = text.substr(0, colon);
    unsigned value = 0;
    const char* first = text.data() + colon + 1;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw std::invalid_argument("bad test function parameter in '" + text + "'");
    if (kind == "h") return h_function(value, base);
    if (kind == "phi") return phi_function(value, base);
    throw std::invalid_argument("unknown test function kind '" + kind + "'");
}

std::string to_string(const TestFunction& tf)
{
    return (tf.kind == TestFunction::Kind::H ? "h:" : "phi:") + std::to_string(tf.parameter);
}

Rational test_function_at_distance(const TestFunction& tf, std::size_t d)
{
    if (tf.kind == TestFunction::Kind::H) return h_at(tf.parameter, d);
    const unsigned i = tf.parameter;
    Rational sum(0);
    for (unsigned k = i - 1; k <= 2 * i - 2; ++k) sum += h_at(1ULL << k, d);
    return sum / i;
}

Real test_function_value(const TestFunction& tf, const WeightedGraph& g, Vertex x)
{
    if (tf.base >= g.vertex_count() || x >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    return to_real(test_function_at_distance(tf, bfs_distances(g, tf.base)[x]));
}

GraphFunction evaluate(const TestFunction& tf, const WeightedGraph& g)
{
    if (tf.base >= g.vertex_count()) throw std::out_of_range("base vertex out of range");
    auto d = bfs_distances(g, tf.base);
    GraphFunction out;
    out.reserve(d.size());
    for (std::size_t di : d) out.push_back(to_real(test_function_at_distance(tf, di)));
    return out;
}

CConstants c_constant(const Real& p0, const Rational& t, const PQPoint& pq)
{
    if (p0 < 1) throw std::domain_error("p0 must be at least 1");
    const Rational denom = pq.p + pq.q - t;
    if (denom == 0) throw std::domain_error("p + q - t vanishes");
    if (pq.p + pq.q == 1) throw std::domain_error("p + q - 1 vanishes");
    Real e = to_real((pq.p + t * (pq.q - 1)) / denom);
    Real tr = to_real(t);
    Real C = pow(sqrt(2 * p0) * (1 + pow(p0, tr)), e + 1) * pow(pow(p0, tr + 1), e) / 4;
    Real rho = to_real(denom / (pq.p + pq.q - 1));
    return {C, pow(C, rho)};
}

std::string to_string(EstimateVariant v)
{
    return v == EstimateVariant::Est1 ? "est1" : "est2";
}

EstimateVariant parse_variant(const std::string& s)
{
    if (s == "est1") return EstimateVariant::Est1;
    if (s == "est2") return EstimateVariant::Est2;
    throw std::invalid_argument("variant must be est1 or est2");
}

EstimateReport estimate_sides(const WeightedGraph& g, const GraphFunction& u, const std::vector<bool>& omega,
                              const GraphFunction& phi, const Rational& s, const Rational& t, const PQPoint& pq,
                              const Real& p0, EstimateVariant variant, const Rational& tau)
{
    const std::size_t nv = g.vertex_count();
    require_total(g, u);
    require_total(g, phi);
    if (!omega.empty() && omega.size() != nv) throw std::invalid_argument("omega mask has the wrong size");

    EstimateReport r;
    r.variant = variant;
    r.s = s;
    r.t = t;
    r.pq = pq;
    r.p0 = p0;
    std::size_t omega_size = 0;
    for (Vertex x = 0; x < nv; ++x) omega_size += member(omega, x) ? 1 : 0;
    if (omega_size == 0) throw std::invalid_argument("omega is empty");
    const bool whole = omega_size == nv;
    r.omega = whole ? "V" : "subset of " + std::to_string(omega_size) + " vertices";

    auto fail = [&](std::string why) {
        r.hypotheses_met = false;
        r.failed_hypotheses.push_back(std::move(why));
    };

    if (!(t > 0) || !(s > 0)) fail("s and t must be positive");
    if (pq.p + pq.q == 1 || t == 1 || t == pq.p + pq.q) {
        fail("exponents undefined: needs p + q != 1, t != 1 and t != p + q");
        r.lhs = r.rhs = 0;
        return r;
    }
    if (r.hypotheses_met && !satisfies_st_cond(pq, s, t)) fail("(s, t) violate the admissibility conditions");
    LemmaExponents ex = lemma_exponents(pq, t);
    const Rational a_rho = ex.a * ex.rho;
    if (!(a_rho > 0)) fail("a*rho is not positive");

    if (variant == EstimateVariant::Est1 && !(t < 1)) {
        r.variant = EstimateVariant::Est2;
        r.notes.push_back("est1 has a negative or undefined middle exponent for t >= 1; evaluated est2 instead");
    }

    const Real p = to_real(pq.p), q = to_real(pq.q), tr = to_real(tau);
    for (Vertex x = 0; x < nv; ++x) {
        if (!(u[x] > 0)) {
            fail("u is not positive at vertex " + std::to_string(x));
            break;
        }
    }
    for (Vertex x = 0; x < nv; ++x) {
        if (phi[x] < 0 || phi[x] > 1) {
            fail("phi is outside [0,1] at vertex " + std::to_string(x));
            break;
        }
        if (!member(omega, x) && phi[x] != 0) {
            fail("phi is not supported inside omega (vertex " + std::to_string(x) + ")");
            break;
        }
    }
    if (p0 < p0_of(g)) fail("graph violates the p0 condition for p0 = " + format_real(p0, 10));
    if (r.hypotheses_met) {
        HarnackReport h = harnack_check(g, u, p0);
        if (!h.holds) fail("Harnack ratio " + format_real(h.worst_ratio, 10) + " exceeds p0");
    }

    std::vector<Real> grad(nv);
    for (Vertex x = 0; x < nv; ++x) grad[x] = gradient_norm(g, u, x);

    if (r.hypotheses_met) {
        for (Vertex x = 0; x < nv; ++x) {
            if (!member(omega, x)) continue;
            if (grad[x] == 0 && q < 0) {
                fail("zero gradient with q < 0 at vertex " + std::to_string(x));
                break;
            }
            Real lap = laplacian(g, u, x);
            Real term = pow(u[x], p) * gradient_power(grad[x], q);
            Real F = lap + term;
            if (F > tr * max(abs(lap), abs(term))) {
                fail("u does not satisfy the inequality at vertex " + std::to_string(x));
                break;
            }
        }
    }
    if (r.hypotheses_met && !whole) {
        bool done = false;
        for (Vertex x = 0; x < nv && !done; ++x) {
            if (!member(omega, x) || phi[x] == 0) continue;
            for (const auto& nb : g.neighbors(x)) {
                if (!member(omega, nb.v) && u[nb.v] < u[x]) {
                    fail("u decreases across the boundary edge (" + std::to_string(x) + ", " +
                         std::to_string(nb.v) + ")");
                    done = true;
                    break;
                }
            }
        }
    }

    if (p0 >= 1 && pq.p + pq.q != 1) {
        CConstants c = c_constant(p0, t, pq);
        r.C = c.C;
        r.C_prime = c.C_prime;
    }

    const Real sr = to_real(s);
    const Real energy_exp = p - to_real(t);
    Real lhs(0), M(0), Sigma(0);
    const Real ar = to_real(a_rho);
    for (Vertex x = 0; x < nv; ++x) {
        if (!member(omega, x) || phi[x] == 0) continue;
        Real density = pow(u[x], energy_exp) * gradient_power(grad[x], q) * rpow(phi[x], sr);
        lhs += g.measure(x) * density;
        for (const auto& nb : g.neighbors(x)) {
            if (member(omega, nb.v) && phi[nb.v] != phi[x]) M += nb.mu * density;
        }
    }
    if (a_rho > 0) {
        for (Vertex x = 0; x < nv; ++x) {
            if (!member(omega, x)) continue;
            for (const auto& nb : g.neighbors(x)) {
                if (member(omega, nb.v) && phi[nb.v] != phi[x]) Sigma += nb.mu * pow(abs(phi[nb.v] - phi[x]), ar);
            }
        }
    }
    r.lhs = lhs;

    if (!r.hypotheses_met && r.C == 0) {
        r.rhs = 0;
        r.holds = false;
        return r;
    }
    const Real a = to_real(ex.a), rho = to_real(ex.rho);
    if (r.variant == EstimateVariant::Est1) {
        if (M == 0 || Sigma == 0) {
            r.rhs = 0;
        } else {
            Real log_rhs = log(r.C) + a * log(2 * sr) + (1 - a) * log(to_real(t)) + log(M) / to_real(ex.gamma) +
                           log(Sigma) / rho;
            r.rhs = exp(log_rhs);
        }
    } else {
        if (Sigma == 0) {
            r.rhs = 0;
        } else {
            Real log_rhs =
                rho * log(r.C) + a * rho * log(2 * sr) + (1 - a) * rho * log(to_real(t)) + log(Sigma);
            r.rhs = exp(log_rhs);
        }
    }
    r.holds = r.lhs <= r.rhs + tr * r.rhs;
    return r;
}

EstimateReport estimate_sides(const WeightedGraph& g, const GraphFunction& u, const std::vector<bool>& omega,
                              const TestFunction& phi, const Rational& s, const Rational& t, const PQPoint& pq,
                              const Real& p0, EstimateVariant variant, const Rational& tau)
{
    return estimate_sides(g, u, omega, evaluate(phi, g), s, t, pq, p0, variant, tau);
}

ExpVolumeBound exp_volume_bound_log(const Real& p0, const Real& z, const Real& n, const Real& log_vol2n)
{
    if (z < 1) throw std::invalid_argument("exp_volume_bound needs z >= 1");
    if (n < 1) throw std::invalid_argument("exp_volume_bound needs n >= 1");
    if (!(p0 > 0)) throw std::invalid_argument("exp_volume_bound needs p0 > 0");
    ExpVolumeBound b;
    b.log_value = z * log(sqrt(2 * p0) * z / n) + log_vol2n;
    b.value = exp(b.log_value);
    b.overflow = !is_finite(b.value);
    if (b.overflow) b.value = positive_infinity();
    return b;
}

ExpVolumeBound exp_volume_bound(const Real& p0, const Real& z, const Real& n, const Real& vol2n)
{
    if (!(vol2n > 0)) throw std::invalid_argument("exp_volume_bound needs a positive volume");
    return exp_volume_bound_log(p0, z, n, log(vol2n));
}

Real kappa0(const Real& p0, KappaVariant variant, const std::optional<Real>& q)
{
    if (p0 < 1) throw std::invalid_argument("kappa0 needs p0 >= 1");
    const Real e = exp(Real(1));
    if (variant == KappaVariant::V1) return 1 / (2 * sqrt(2 * p0) * e);
    if (!q) throw std::invalid_argument("kappa0 for V2 needs q");
    return 1 / (pow(e * sqrt(2 * p0) * (1 + p0), 2 - *q) * pow(p0 * p0, 1 - *q));
}

Rational z_of_lambda(const Rational& lambda)
{
    if (!(lambda > 1)) throw std::invalid_argument("z = lambda/(lambda-1) needs lambda > 1");
    return lambda / (lambda - 1);
}

}  // namespace liouville
