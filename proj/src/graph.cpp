#include "liouville/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace liouville {

namespace {

void check_vertex(const WeightedGraph& g, Vertex x)
{
    if (x >= g.vertex_count()) throw std::out_of_range("unknown vertex " + std::to_string(x));
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : adjacency_(vertex_count)
{
    if (vertex_count == 0) throw std::invalid_argument("graph has no vertices");
    std::set<std::pair<Vertex, Vertex>> seen;
    edges_.reserve(edges.size());
    for (auto& e : edges) {
        if (e.x >= vertex_count || e.y >= vertex_count) {
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.x) + " " +
                                        std::to_string(e.y));
        }
        if (e.x == e.y) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.x));
        if (!(e.mu > 0)) {
            throw std::invalid_argument("nonpositive weight on edge " + std::to_string(e.x) + " " +
                                        std::to_string(e.y));
        }
        if (e.x > e.y) std::swap(e.x, e.y);
        if (!seen.emplace(e.x, e.y).second) {
            throw std::invalid_argument("duplicate edge " + std::to_string(e.x) + " " + std::to_string(e.y));
        }
        adjacency_[e.x].push_back({e.y, e.mu});
        adjacency_[e.y].push_back({e.x, e.mu});
        edges_.push_back(std::move(e));
    }

    measure_.resize(vertex_count);
    for (Vertex x = 0; x < vertex_count; ++x) {
        if (adjacency_[x].empty()) throw std::invalid_argument("isolated vertex " + std::to_string(x));
        Real m = 0;
        for (const auto& nb : adjacency_[x]) m += nb.mu;
        measure_[x] = m;
    }
}

const std::vector<Neighbor>& WeightedGraph::neighbors(Vertex x) const
{
    check_vertex(*this, x);
    return adjacency_[x];
}

const Real& WeightedGraph::measure(Vertex x) const
{
    check_vertex(*this, x);
    return measure_[x];
}

bool WeightedGraph::connected() const
{
    auto d = bfs_distances(*this, 0);
    return std::none_of(d.begin(), d.end(),
                        [](std::size_t v) { return v == std::numeric_limits<std::size_t>::max(); });
}

void require_total(const WeightedGraph& g, const GraphFunction& u)
{
    if (u.size() != g.vertex_count()) {
        throw std::invalid_argument("function has " + std::to_string(u.size()) + " values for " +
                                    std::to_string(g.vertex_count()) + " vertices");
    }
}

Real vertex_measure(const WeightedGraph& g, Vertex x)
{
    return g.measure(x);
}

Real laplacian(const WeightedGraph& g, const GraphFunction& u, Vertex x)
{
    require_total(g, u);
    Real s = 0;
    for (const auto& nb : g.neighbors(x)) s += nb.mu * (u[nb.v] - u[x]);
    return s / g.measure(x);
}

Real carre_du_champ(const WeightedGraph& g, const GraphFunction& u, const GraphFunction& v, Vertex x)
{
    require_total(g, u);
    require_total(g, v);
    Real s = 0;
    for (const auto& nb : g.neighbors(x)) s += nb.mu * (u[nb.v] - u[x]) * (v[nb.v] - v[x]);
    return s / (2 * g.measure(x));
}

Real gradient_norm(const WeightedGraph& g, const GraphFunction& u, Vertex x)
{
    return sqrt(carre_du_champ(g, u, u, x));
}

Real restricted_gradient_norm(const WeightedGraph& g, const GraphFunction& u, Vertex x,
                              const std::vector<bool>& omega)
{
    require_total(g, u);
    if (omega.size() != g.vertex_count()) throw std::invalid_argument("omega mask has wrong size");
    check_vertex(g, x);
    if (!omega[x]) throw std::invalid_argument("vertex " + std::to_string(x) + " is not in omega");
    Real s = 0;
    for (const auto& nb : g.neighbors(x)) {
        if (!omega[nb.v]) continue;
        Real d = u[nb.v] - u[x];
        s += nb.mu * d * d;
    }
    return sqrt(s / (2 * g.measure(x)));
}

Real p0_of(const WeightedGraph& g)
{
    Real best = 1;
    for (const auto& e : g.edges()) {
        best = max(best, g.measure(e.x) / e.mu);
        best = max(best, g.measure(e.y) / e.mu);
    }
    return best;
}

std::vector<std::size_t> bfs_distances(const WeightedGraph& g, Vertex o)
{
    check_vertex(g, o);
    constexpr auto unreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> d(g.vertex_count(), unreached);
    std::deque<Vertex> queue{o};
    d[o] = 0;
    while (!queue.empty()) {
        Vertex x = queue.front();
        queue.pop_front();
        for (const auto& nb : g.neighbors(x)) {
            if (d[nb.v] != unreached) continue;
            d[nb.v] = d[x] + 1;
            queue.push_back(nb.v);
        }
    }
    return d;
}

Real ball_volume(const WeightedGraph& g, Vertex o, std::size_t n)
{
    auto d = bfs_distances(g, o);
    Real v = 0;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (d[x] <= n) v += g.measure(x);
    }
    return v;
}

HarnackReport harnack_check(const WeightedGraph& g, const GraphFunction& u, const Real& p0)
{
    require_total(g, u);
    if (p0 < 1) throw std::invalid_argument("harnack_check: p0 must be at least 1");
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (!(u[x] > 0)) throw std::invalid_argument("harnack_check: u is not positive at vertex " + std::to_string(x));
    }
    HarnackReport r;
    r.worst_ratio = 1;
    for (const auto& e : g.edges()) {
        Real ratio = max(u[e.x] / u[e.y], u[e.y] / u[e.x]);
        if (!r.worst_edge || ratio > r.worst_ratio) {
            r.worst_ratio = ratio;
            r.worst_edge = std::make_pair(e.x, e.y);
        }
    }
    r.holds = r.worst_ratio <= p0;
    return r;
}

}  // namespace liouville
