#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liouville/graph.hpp"
#include "liouville/numeric.hpp"
#include "liouville/radial.hpp"
#include "liouville/regions.hpp"

namespace liouville {

enum class Regime { I, II, III, IV, V1, V2 };

std::string to_string(Regime r);
Regime parse_regime(const std::string& s);

struct RegimeSpec {
    Regime regime = Regime::I;
    PQPoint pq;
    unsigned N = 3;
    std::optional<Rational> eps;     // I, II, III
    std::optional<Rational> lambda;  // IV, V1, V2
    long n0 = 2;                     // I–IV
    std::optional<Rational> delta;   // I, III, IV
    long horizon = 10000;            // last built layer (per arm for V2)
};

// Throws std::invalid_argument when parameters or the region do not match.
void validate(const RegimeSpec& spec);

using AnyRadialTree = std::variant<RadialTree, TwoSidedRadialTree>;

struct BuiltCounterexample {
    RegimeSpec spec;
    AnyRadialTree tree;
    RadialFunction u;
    unsigned precision = 0;
};

BuiltCounterexample build(const RegimeSpec& spec);

struct LayerMargin {
    long layer = 0;
    Real laplacian;
    Real gradient;
    Real term;    // u^p |∇u|^q
    Real margin;  // Δu + u^p |∇u|^q
    Real scale;   // max(|Δu|, |term|)
    bool ok = false;
};

struct MarginReport {
    std::vector<LayerMargin> layers;
    Real max_margin;           // margin at the worst layer
    Real max_relative_margin;  // margin / scale at the worst layer
    long worst_layer = 0;
    unsigned precision = 0;
    bool verified = false;
    std::string note;
};

// Margins on layers 0..horizon (−horizon..horizon when two-sided) at the
// current precision, without escalation.
MarginReport verify_radial(const RadialTree& t, const RadialFunction& u, const PQPoint& pq, long horizon,
                           const Rational& tau = default_tolerance());
MarginReport verify_radial(const TwoSidedRadialTree& t, const RadialFunction& u, const PQPoint& pq, long horizon,
                           const Rational& tau = default_tolerance());

// Rebuilds from the spec at increasing precision until two precisions 64
// bits apart agree on every layer and no margin sits within 10τ of zero.
MarginReport verify(const BuiltCounterexample& built, long horizon, const Rational& tau = default_tolerance());

enum class BoundDirection { Upper, Lower };

struct Delta0 {
    Real value;
    BoundDirection direction;
};

Delta0 delta0(const RegimeSpec& spec);

// Calibration functions evaluated at absolute argument m = n + n₀. For V1,
// m = 0 gives the root condition and m ≥ 1 the interior condition; V2 has a
// single interior condition. The V forms return right-hand sides to be
// compared with 1.
Real lambda_fn(Regime r, const PQPoint& pq, const Rational& param, long m);

// Closed-form limits as printed with the constructions: (2/σ)^{q/2−1}ε for
// Λ₁ and Λ₃, +∞ for Λ₂, √2(1−e^{−λ})/(1+e^{−λ}) for Λ₄.
Real lambda_limit(Regime r, const PQPoint& pq, const Rational& param);

// The value Λ actually tends to. For Λ₁ and Λ₃ this is 2^{q/2−1}σ^{1−q}ε,
// which equals lambda_limit only when σ = 1.
Real lambda_asymptote(Regime r, const PQPoint& pq, const Rational& param);

// Exponent e with layer condition δ^e ≤ Λ(n+n₀): p+q−1, q−1 or p.
Rational delta_exponent(Regime r, const PQPoint& pq);

struct TailReport {
    bool holds = false;
    bool doubled_margin = false;  // Λ ≥ 2·threshold on the whole tail
    std::string rule;
    Real min_ratio;  // min Λ / threshold on the tail grid
};

struct CalibrationResult {
    bool success = false;
    RegimeSpec spec;
    MarginReport report;
    TailReport tail;
    std::string message;
};

struct CalibrationRequest {
    Regime regime = Regime::I;
    PQPoint pq;
    std::optional<Rational> eps;
    std::optional<Rational> lambda;  // IV only
    unsigned N = 3;
    long horizon = 10000;            // layers to certify
    Rational tau = default_tolerance();
};

CalibrationResult calibrate(const CalibrationRequest& req);

// Tail check for a fixed spec on layers [horizon/2, horizon].
TailReport tail_check(const RegimeSpec& spec, long horizon);

struct VolumeBand {
    Real ratio_min;
    Real ratio_max;
};

// Band of μ(B(o,n))/target(n) over 2 ≤ n_lo ≤ n ≤ n_hi.
VolumeBand volume_band(const AnyRadialTree& tree, const std::function<Real(long)>& target, long n_lo, long n_hi);
VolumeBand volume_band(const BuiltCounterexample& built, const std::function<Real(long)>& target, long n_lo,
                       long n_hi);

Real ball_volume(const AnyRadialTree& t, long n);
Real p0_of(const AnyRadialTree& t);

// Adjacent-layer ratio scan over layers [lo, hi].
HarnackReport radial_harnack(const RadialFunction& u, long lo, long hi, const Real& p0);

}  // namespace liouville
