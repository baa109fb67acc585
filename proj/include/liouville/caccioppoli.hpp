#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liouville/graph.hpp"
#include "liouville/regions.hpp"

namespace liouville {

// h_n(x) = 1 for d ≤ n, 2 − d/n for n < d < 2n, 0 beyond.
// φ_i = (1/i) Σ_{k=i−1}^{2i−2} h_{2^k}.
struct TestFunction {
    enum class Kind { H, Phi };
    Kind kind = Kind::H;
    unsigned parameter = 1;
    Vertex base = 0;
};

TestFunction h_function(unsigned n, Vertex base = 0);
TestFunction phi_function(unsigned i, Vertex base = 0);

// "h:8", "phi:3". Throws std::invalid_argument otherwise.
TestFunction parse_test_function(const std::string& text, Vertex base = 0);
std::string to_string(const TestFunction& tf);

// Exact value at graph distance d (SIZE_MAX means unreachable, value 0).
Rational test_function_at_distance(const TestFunction& tf, std::size_t d);
Real test_function_value(const TestFunction& tf, const WeightedGraph& g, Vertex x);
// All vertices from a single BFS.
GraphFunction evaluate(const TestFunction& tf, const WeightedGraph& g);

struct CConstants {
    Real C;
    Real C_prime;  // C^ρ with ρ = (p+q−t)/(p+q−1)
};

// Throws std::domain_error when p+q = t or p+q = 1, or when p₀ < 1.
CConstants c_constant(const Real& p0, const Rational& t, const PQPoint& pq);

enum class EstimateVariant { Est1, Est2 };
std::string to_string(EstimateVariant v);
EstimateVariant parse_variant(const std::string& s);

struct EstimateReport {
    EstimateVariant variant = EstimateVariant::Est2;
    Real lhs;
    Real rhs;
    Real C;
    Real C_prime;
    Rational s, t;
    PQPoint pq;
    Real p0;
    std::string omega;
    bool hypotheses_met = true;
    std::vector<std::string> failed_hypotheses;
    std::vector<std::string> notes;
    bool holds = false;  // lhs ≤ rhs(1 + τ)
};

// Both sides of the energy estimate by direct summation. LHS over Ω; the
// RHS edge sums run over ordered adjacent pairs inside Ω. Every hypothesis
// is re-checked and failures are listed instead of thrown. est-1 is only
// evaluated for t < 1; other t fall back to est-2 with a note.
// omega is a membership mask; an empty mask means Ω = V.
EstimateReport estimate_sides(const WeightedGraph& g, const GraphFunction& u, const std::vector<bool>& omega,
                              const GraphFunction& phi, const Rational& s, const Rational& t, const PQPoint& pq,
                              const Real& p0, EstimateVariant variant, const Rational& tau = default_tolerance());
EstimateReport estimate_sides(const WeightedGraph& g, const GraphFunction& u, const std::vector<bool>& omega,
                              const TestFunction& phi, const Rational& s, const Rational& t, const PQPoint& pq,
                              const Real& p0, EstimateVariant variant, const Rational& tau = default_tolerance());

struct ExpVolumeBound {
    Real value;  // +∞ when exp(log_value) overflows
    Real log_value;
    bool overflow = false;
};

// (√(2p₀)·z/n)^z · vol, evaluated in log space. Needs z ≥ 1, n ≥ 1.
ExpVolumeBound exp_volume_bound(const Real& p0, const Real& z, const Real& n, const Real& vol2n);
ExpVolumeBound exp_volume_bound_log(const Real& p0, const Real& z, const Real& n, const Real& log_vol2n);

enum class KappaVariant { V1, V2 };

// V1: 1/(2√(2p₀)e). V2: 1/((e√(2p₀)(1+p₀))^{2−q}(p₀²)^{1−q}), q required.
Real kappa0(const Real& p0, KappaVariant variant, const std::optional<Real>& q = std::nullopt);

// z = λ/(λ−1) for λ > 1.
Rational z_of_lambda(const Rational& lambda);

}  // namespace liouville
