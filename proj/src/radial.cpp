#include "liouville/radial.hpp"

#include <stdexcept>
#include <string>

namespace liouville {

namespace {

void require_positive_weights(const std::vector<Real>& w, const char* what)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0)) throw std::invalid_argument(std::string(what) + ": nonpositive weight at index " + std::to_string(i));
    }
}

Real power_of(unsigned base, long e)
{
    return pow(Real(base), Real(e));
}

}  // namespace

const Real& RadialFunction::at(long n) const
{
    if (!has(n)) throw std::out_of_range("radial function has no value at layer " + std::to_string(n));
    return values[static_cast<std::size_t>(n - first)];
}

RadialTree::RadialTree(unsigned N, std::vector<Real> w) : N_(N), w_(std::move(w))
{
    if (N_ < 2) throw std::invalid_argument("tree degree must be at least 2");
    if (w_.empty()) throw std::invalid_argument("radial tree needs at least one layer weight");
    require_positive_weights(w_, "radial tree");
}

const Real& RadialTree::weight(long n) const
{
    if (n < 0 || n > horizon()) throw std::out_of_range("no stored weight for layer " + std::to_string(n));
    return w_[static_cast<std::size_t>(n)];
}

RadialLayer RadialTree::layer(long n) const
{
    RadialLayer l;
    l.index = n;
    l.vertex_count = n == 0 ? Integer(1) : Integer(N_) * mp::pow(Integer(N_ - 1), static_cast<unsigned>(n - 1));
    l.outward_degree = n == 0 ? N_ : N_ - 1;
    l.outward_weight = weight(n);
    return l;
}

Stencil RadialTree::stencil(long n) const
{
    if (n == 0) return {N_ * weight(0), Real(0)};
    return {weight(n), weight(n - 1)};
}

Real RadialTree::layer_measure(long n) const
{
    if (n == 0) return N_ * weight(0);
    return N_ * (weight(n - 1) + weight(n));
}

Real RadialTree::ball_volume(long n) const
{
    if (n < 0) throw std::invalid_argument("ball radius must be nonnegative");
    Real v = 0;
    for (long k = 0; k <= n; ++k) v += layer_measure(k);
    return v;
}

Real RadialTree::p0() const
{
    Real best = N_;  // root: μ(o) = N μ_0
    for (long n = 1; n <= horizon(); ++n) {
        const Real& a = w_[n];
        const Real& b = w_[n - 1];
        // N−1 outward edges of mass a/(N−1) each, one inward edge of mass b.
        best = max(best, (a + b) * (N_ - 1) / a);
        best = max(best, (a + b) / b);
    }
    return best;
}

TwoSidedRadialTree::TwoSidedRadialTree(unsigned N, std::vector<Real> w_pos, std::vector<Real> w_neg)
    : N_(N), w_pos_(std::move(w_pos)), w_neg_(std::move(w_neg))
{
    if (N_ < 2) throw std::invalid_argument("tree degree must be at least 2");
    if (w_pos_.empty() || w_neg_.empty()) throw std::invalid_argument("two-sided tree needs weights on both arms");
    require_positive_weights(w_pos_, "two-sided tree, positive arm");
    require_positive_weights(w_neg_, "two-sided tree, negative arm");
}

long TwoSidedRadialTree::horizon() const
{
    return std::min(highest_weight(), -lowest_weight() - 1);
}

const Real& TwoSidedRadialTree::weight(long n) const
{
    if (n >= 0 && n <= highest_weight()) return w_pos_[static_cast<std::size_t>(n)];
    if (n < 0 && n >= lowest_weight()) return w_neg_[static_cast<std::size_t>(-n - 1)];
    throw std::out_of_range("no stored weight for layer " + std::to_string(n));
}

RadialLayer TwoSidedRadialTree::layer(long n) const
{
    RadialLayer l;
    l.index = n;
    if (n == 0) {
        l.vertex_count = 1;
        l.outward_degree = N_ - 1;
    } else if (n > 0) {
        l.vertex_count = mp::pow(Integer(N_ - 1), static_cast<unsigned>(n));
        l.outward_degree = N_ - 1;
    } else {
        l.vertex_count = mp::pow(Integer(N_ - 1), static_cast<unsigned>(-n - 1));
        l.outward_degree = N_ - 1;
    }
    l.outward_weight = n >= 0 ? weight(n) : weight(n - 1);
    return l;
}

Stencil TwoSidedRadialTree::stencil(long n) const
{
    if (n == 0) return {(N_ - 1) * weight(0), weight(-1)};
    return {weight(n), weight(n - 1)};
}

Real TwoSidedRadialTree::layer_measure(long n) const
{
    if (n == 0) return (N_ - 1) * weight(0) + weight(-1);
    if (n > 0) return (N_ - 1) * (weight(n) + weight(n - 1));
    return weight(n) + weight(n - 1);
}

Real TwoSidedRadialTree::ball_volume(long n) const
{
    if (n < 0) throw std::invalid_argument("ball radius must be nonnegative");
    Real v = layer_measure(0);
    for (long k = 1; k <= n; ++k) v += layer_measure(k) + layer_measure(-k);
    return v;
}

Real TwoSidedRadialTree::p0() const
{
    Real best = 1;
    long lo = -horizon(), hi = horizon();
    for (long n = lo; n <= hi; ++n) {
        Stencil s = stencil(n);
        Real m = s.plus + s.minus;
        if (n == 0) {
            best = max(best, m * (N_ - 1) / s.plus);
            best = max(best, m / s.minus);
        } else if (n > 0) {
            best = max(best, m * (N_ - 1) / s.plus);
            best = max(best, m / s.minus);
        } else {
            best = max(best, m / s.plus);
            best = max(best, m * (N_ - 1) / s.minus);
        }
    }
    return best;
}

RadialOperators radial_operators(const Stencil& s, const Real* u_minus, const Real& u, const Real& u_plus)
{
    Real dp = u_plus - u;
    Real m = s.plus + s.minus;
    Real lap = s.plus * dp;
    Real g2 = s.plus * dp * dp;
    if (s.minus != 0) {
        if (u_minus == nullptr) throw std::invalid_argument("stencil reads a missing inner layer");
        Real dm = *u_minus - u;
        lap += s.minus * dm;
        g2 += s.minus * dm * dm;
    }
    return {lap / m, sqrt(g2 / (2 * m))};
}

RadialOperators radial_operators(const RadialTree& t, const RadialFunction& u, long n)
{
    if (n < 0 || n > t.horizon()) throw std::out_of_range("layer " + std::to_string(n) + " outside the tree");
    Stencil s = t.stencil(n);
    const Real* um = n > 0 ? &u.at(n - 1) : nullptr;
    return radial_operators(s, um, u.at(n), u.at(n + 1));
}

RadialOperators radial_operators(const TwoSidedRadialTree& t, const RadialFunction& u, long n)
{
    if (n < -t.horizon() || n > t.horizon()) throw std::out_of_range("layer " + std::to_string(n) + " outside the tree");
    Stencil s = t.stencil(n);
    return radial_operators(s, &u.at(n - 1), u.at(n), u.at(n + 1));
}

GraphFunction MaterializedTree::lift(const RadialFunction& u) const
{
    GraphFunction f;
    f.reserve(layer.size());
    for (long n : layer) f.push_back(u.at(n));
    return f;
}

MaterializedTree materialize(const RadialTree& t, long R)
{
    if (R < 1) throw std::invalid_argument("materialize: radius must be at least 1");
    if (R - 1 > t.horizon()) throw std::out_of_range("materialize: radius exceeds stored weights");
    const unsigned N = t.degree();
    std::vector<long> layer{0};
    std::vector<Edge> edges;
    std::vector<Vertex> frontier{0};
    for (long n = 0; n < R; ++n) {
        Real mu = t.weight(n) / power_of(N - 1, n);
        unsigned children = n == 0 ? N : N - 1;
        std::vector<Vertex> next;
        for (Vertex x : frontier) {
            for (unsigned c = 0; c < children; ++c) {
                Vertex y = layer.size();
                layer.push_back(n + 1);
                edges.push_back({x, y, mu});
                next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return {WeightedGraph(layer.size(), std::move(edges)), std::move(layer)};
}

MaterializedTree materialize(const TwoSidedRadialTree& t, long R)
{
    if (R < 1) throw std::invalid_argument("materialize: radius must be at least 1");
    if (R - 1 > t.highest_weight() || -R < t.lowest_weight()) {
        throw std::out_of_range("materialize: radius exceeds stored weights");
    }
    const unsigned N = t.degree();
    std::vector<long> layer{0};
    std::vector<Edge> edges;
    std::vector<Vertex> pos{0};
    std::vector<Vertex> neg;

    // Root: N−1 children on the positive side, then p.
    {
        Real mu = t.weight(0);
        std::vector<Vertex> next;
        for (unsigned c = 0; c + 1 < N; ++c) {
            Vertex y = layer.size();
            layer.push_back(1);
            edges.push_back({0, y, mu});
            next.push_back(y);
        }
        Vertex p = layer.size();
        layer.push_back(-1);
        edges.push_back({0, p, t.weight(-1)});
        pos = std::move(next);
        neg = {p};
    }
    for (long n = 1; n < R; ++n) {
        Real mu_pos = t.weight(n) / power_of(N - 1, n);
        // Edges of E′_{−n−1} join D′_{−n} to D′_{−n−1}.
        Real mu_neg = t.weight(-n - 1) / power_of(N - 1, n);
        std::vector<Vertex> next_pos, next_neg;
        for (Vertex x : pos) {
            for (unsigned c = 0; c + 1 < N; ++c) {
                Vertex y = layer.size();
                layer.push_back(n + 1);
                edges.push_back({x, y, mu_pos});
                next_pos.push_back(y);
            }
        }
        for (Vertex x : neg) {
            for (unsigned c = 0; c + 1 < N; ++c) {
                Vertex y = layer.size();
                layer.push_back(-n - 1);
                edges.push_back({x, y, mu_neg});
                next_neg.push_back(y);
            }
        }
        pos = std::move(next_pos);
        neg = std::move(next_neg);
    }
    return {WeightedGraph(layer.size(), std::move(edges)), std::move(layer)};
}

Caterpillar materialize_caterpillar(const RadialTree& t, long L)
{
    if (L < 1) throw std::invalid_argument("caterpillar needs at least one spine edge");
    if (L > t.horizon()) throw std::out_of_range("caterpillar spine exceeds stored weights");
    const unsigned N = t.degree();
    std::vector<long> layer{0};
    std::vector<Edge> edges;
    std::vector<Vertex> spine{0};
    for (long n = 0; n <= L; ++n) {
        Real mu = t.weight(n) / power_of(N - 1, n);
        unsigned children = n == 0 ? N : N - 1;
        Vertex x = spine.back();
        Vertex first_child = layer.size();
        for (unsigned c = 0; c < children; ++c) {
            layer.push_back(n + 1);
            edges.push_back({x, layer.size() - 1, mu});
        }
        if (n < L) spine.push_back(first_child);
    }
    return {{WeightedGraph(layer.size(), std::move(edges)), std::move(layer)}, std::move(spine)};
}

}  // namespace liouville
