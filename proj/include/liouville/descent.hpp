#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liouville/graph.hpp"
#include "liouville/regions.hpp"

namespace liouville {

struct WalkStep {
    Vertex vertex;
    Real u;
    Real laplacian;
    Real gradient;
    std::optional<Real> drop;  // u(x_i) − u(x_{i+1}); absent on the last vertex
};

enum class WalkEnd { MaxSteps, ZeroGradient, LocalMinimum, Revisit };
std::string to_string(WalkEnd e);

struct DescentWalk {
    std::vector<WalkStep> steps;
    WalkEnd end = WalkEnd::MaxSteps;
};

// Greedy walk to the minimizing neighbor, ties to the smallest id. Stops
// after max_steps moves, at a zero-gradient vertex, at a vertex with no
// strictly smaller neighbor, or before revisiting a vertex.
// Throws std::invalid_argument on nonpositive u or zero gradient at x0.
DescentWalk descent_walk(const WeightedGraph& g, const GraphFunction& u, Vertex x0, std::size_t max_steps);

struct BoundFamily {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::optional<std::size_t> first_failure;  // step index
    Real worst_margin;                         // max of lhs − rhs over checked steps
    bool passed() const { return failed == 0; }
};

struct WalkDiagnostics {
    BoundFamily strict_decrease;  // u(x_{i+1}) < u(x_i)
    BoundFamily sandwich;         // 0 > Δu(x_i) ≥ u(x_{i+1}) − u(x_i)
    BoundFamily jensen;           // |Δu| ≤ √2 |∇u|
    BoundFamily gradient_drop;    // |∇u(x_i)| ≤ √((1+p₀²)/2)(u(x_i) − u(x_{i+1})), needs p₀
    BoundFamily reverse_jensen;   // 1 ≤ √2 u^{−p}|∇u|^{1−q} where u solves the inequality
    BoundFamily pointwise;        // u^{p−1}|∇u|^q ≤ 1 where u solves the inequality
    std::size_t solution_steps = 0;  // steps where the inequality holds
};

WalkDiagnostics walk_diagnostics(const DescentWalk& walk, const WeightedGraph& g, const GraphFunction& u,
                                 const PQPoint& pq, const std::optional<Real>& p0 = std::nullopt,
                                 const Rational& tau = default_tolerance());

struct PointwiseReport {
    std::vector<std::optional<Real>> margins;  // u^{p−1}|∇u|^q − 1; absent when skipped
    std::vector<Vertex> skipped_zero_gradient;  // q < 0 and |∇u| = 0
    std::vector<Vertex> not_solution;           // inequality fails here, bound not asserted
    bool hypotheses_met = true;
    bool holds = true;  // every asserted margin ≤ τ
    Real max_margin;
};

PointwiseReport pointwise_bound_check(const WeightedGraph& g, const GraphFunction& u, const PQPoint& pq,
                                      const Rational& tau = default_tolerance());

}  // namespace liouville
