#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "liouville/numeric.hpp"

namespace liouville {

using Vertex = std::size_t;

struct Edge {
    Vertex x;
    Vertex y;
    Real mu;
};

struct Neighbor {
    Vertex v;
    Real mu;
};

// Finite graph with symmetric positive weights. Immutable once built.
class WeightedGraph {
public:
    // Edges are canonicalized to (min, max). Rejects self-loops, duplicate
    // pairs, nonpositive weights, out-of-range ids and isolated vertices.
    WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Neighbor>& neighbors(Vertex x) const;
    const Real& measure(Vertex x) const;
    bool connected() const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<Real> measure_;
};

using GraphFunction = std::vector<Real>;

Real vertex_measure(const WeightedGraph& g, Vertex x);
Real laplacian(const WeightedGraph& g, const GraphFunction& u, Vertex x);
Real gradient_norm(const WeightedGraph& g, const GraphFunction& u, Vertex x);
// Γ(u,u)(x) from the polarized form; equals gradient_norm squared.
Real carre_du_champ(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& v, Vertex x);

// Neighbors outside omega are dropped from the sum but μ(x) stays the
// full-graph measure. omega is a membership mask over all vertices.
Real restricted_gradient_norm(const WeightedGraph& g, const GraphFunction& u, Vertex x,
                              const std::vector<bool>& omega);

// Smallest admissible p₀: max over both orientations of μ(x)/μ_xy.
Real p0_of(const WeightedGraph& g);

// Graph distances from o; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const WeightedGraph& g, Vertex o);
Real ball_volume(const WeightedGraph& g, Vertex o, std::size_t n);

// Σ_{k=first}^{n_max} k / volume(k).
template <class Volume>
Real nash_williams_partial(Volume&& volume, std::size_t n_max, std::size_t first = 1);

struct HarnackReport {
    bool holds = true;
    std::optional<std::pair<Vertex, Vertex>> worst_edge;
    Real worst_ratio;  // max over edges of max(u(x)/u(y), u(y)/u(x))
};

HarnackReport harnack_check(const WeightedGraph& g, const GraphFunction& u, const Real& p0);

void require_total(const WeightedGraph& g, const GraphFunction& u);

}  // namespace liouville

#include "liouville/detail/nash_williams.ipp"
