#pragma once

#include <cstddef>
#include <vector>

#include "liouville/graph.hpp"
#include "liouville/numeric.hpp"

namespace liouville {

// Layer-compressed spherically symmetric trees. Weights are stored
// normalized, w_n = μ_n (N−1)^n, so that every operator depends only on
// ratios of stored values and nothing overflows.

struct RadialLayer {
    long index = 0;
    Integer vertex_count;
    unsigned outward_degree = 0;
    Real outward_weight;  // normalized
};

// Per-vertex edge mass toward layer n+1 and toward layer n−1, both scaled
// by the same layer-dependent factor.
struct Stencil {
    Real plus;
    Real minus;
};

struct RadialOperators {
    Real laplacian;
    Real gradient;
};

// Values u_n for n = first, first+1, ...
struct RadialFunction {
    long first = 0;
    std::vector<Real> values;

    RadialFunction() = default;
    RadialFunction(long first_layer, std::vector<Real> v) : first(first_layer), values(std::move(v)) {}

    long last() const { return first + static_cast<long>(values.size()) - 1; }
    bool has(long n) const { return n >= first && n <= last(); }
    const Real& at(long n) const;
};

class RadialTree {
public:
    // w[n] for n = 0..horizon.
    RadialTree(unsigned N, std::vector<Real> w);

    unsigned degree() const { return N_; }
    long horizon() const { return static_cast<long>(w_.size()) - 1; }
    const Real& weight(long n) const;
    const std::vector<Real>& weights() const { return w_; }

    RadialLayer layer(long n) const;
    Stencil stencil(long n) const;
    Real layer_measure(long n) const;
    Real ball_volume(long n) const;
    Real p0() const;

private:
    unsigned N_;
    std::vector<Real> w_;
};

// Root o, special neighbor p on the negative arm. Layer n ≥ 0 is D′_n on
// the positive side, layer −k is D′_{−k} behind p. Edge set E′_n joins
// layers n and n+1 for every integer n.
class TwoSidedRadialTree {
public:
    // w_pos[n] = w_n for n ≥ 0, w_neg[k] = w_{−(k+1)}.
    TwoSidedRadialTree(unsigned N, std::vector<Real> w_pos, std::vector<Real> w_neg);

    unsigned degree() const { return N_; }
    // Layers −horizon..horizon have complete stencils.
    long horizon() const;
    long lowest_weight() const { return -static_cast<long>(w_neg_.size()); }
    long highest_weight() const { return static_cast<long>(w_pos_.size()) - 1; }
    const Real& weight(long n) const;
    const std::vector<Real>& positive_weights() const { return w_pos_; }
    const std::vector<Real>& negative_weights() const { return w_neg_; }

    RadialLayer layer(long n) const;
    Stencil stencil(long n) const;
    Real layer_measure(long n) const;
    Real ball_volume(long n) const;
    Real p0() const;

private:
    unsigned N_;
    std::vector<Real> w_pos_;
    std::vector<Real> w_neg_;
};

RadialOperators radial_operators(const Stencil& s, const Real* u_minus, const Real& u, const Real& u_plus);
RadialOperators radial_operators(const RadialTree& t, const RadialFunction& u, long n);
RadialOperators radial_operators(const TwoSidedRadialTree& t, const RadialFunction& u, long n);

// Explicit vertex-level copy of a tree ball. Vertex 0 is the root; ids are
// assigned in BFS order, so children of a vertex have consecutive ids.
struct MaterializedTree {
    WeightedGraph graph;
    std::vector<long> layer;

    GraphFunction lift(const RadialFunction& u) const;
};

// Ball of radius R around the root. Needs weights up to layer R−1.
MaterializedTree materialize(const RadialTree& t, long R);
MaterializedTree materialize(const TwoSidedRadialTree& t, long R);

// A ray o = s_0, s_1, ..., s_L together with every neighbor of each s_n.
// Operators at the s_n are exact; the spine child of s_n is the smallest
// id among its children.
struct Caterpillar {
    MaterializedTree tree;
    std::vector<Vertex> spine;
};

Caterpillar materialize_caterpillar(const RadialTree& t, long L);

}  // namespace liouville
