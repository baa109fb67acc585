#include <doctest.h>

#include <random>

#include "liouville/radial.hpp"

using namespace liouville;

namespace {

Real rel_diff(const Real& a, const Real& b)
{
    Real s = max(abs(a), abs(b));
    return s == 0 ? Real(0) : Real(abs(a - b) / s);
}

std::vector<Real> random_weights(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> d(0.05, 20.0);
    std::vector<Real> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(Real(d(rng)));
    return w;
}

RadialFunction random_radial(std::mt19937_64& rng, long first, std::size_t n)
{
    std::uniform_real_distribution<double> d(0.1, 4.0);
    std::vector<Real> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Real(d(rng)));
    return RadialFunction(first, std::move(v));
}

const Real kAgree("1e-25");

}  // namespace

TEST_CASE("layer bookkeeping of the one-sided tree")
{
    RadialTree t(3, {Real(1), Real(2), Real(4), Real(8)});
    CHECK(t.horizon() == 3);
    CHECK(t.layer(0).vertex_count == 1);
    CHECK(t.layer(0).outward_degree == 3);
    CHECK(t.layer(3).vertex_count == 12);
    CHECK(t.layer(3).outward_degree == 2);
    for (long n = 0; n < 3; ++n) {
        CHECK(t.layer(n + 1).vertex_count == t.layer(n).vertex_count * t.layer(n).outward_degree);
    }
    CHECK_THROWS_AS(t.weight(4), std::out_of_range);
    CHECK_THROWS_AS(RadialTree(1, {Real(1)}), std::invalid_argument);
    CHECK_THROWS_AS(RadialTree(3, {Real(1), Real(-1)}), std::invalid_argument);
}

TEST_CASE("root reduction: Δu = u1 − u0 and |∇u| = |u0 − u1|/√2")
{
    RadialTree t(5, {Real(2), Real(7)});
    RadialFunction u(0, {Real(3), Real(1.25), Real(1)});
    RadialOperators ops = radial_operators(t, u, 0);
    CHECK(ops.laplacian == Real(-1.75));
    CHECK(rel_diff(ops.gradient, Real(1.75) / sqrt(Real(2))) < kAgree);
}

TEST_CASE("one-sided radial operators and volumes match materialized balls")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        unsigned N = 2 + trial % 3;
        long R = 3 + trial % 6;  // up to 8
        RadialTree t(N, random_weights(rng, static_cast<std::size_t>(R)));
        RadialFunction u = random_radial(rng, 0, static_cast<std::size_t>(R + 1));
        MaterializedTree m = materialize(t, R);
        GraphFunction f = m.lift(u);
        Real worst = 0;
        for (Vertex x = 0; x < m.graph.vertex_count(); ++x) {
            long n = m.layer[x];
            if (n >= R) continue;  // leaves of the finite ball
            RadialOperators ops = radial_operators(t, u, n);
            worst = max(worst, rel_diff(ops.laplacian, laplacian(m.graph, f, x)));
            worst = max(worst, rel_diff(ops.gradient, gradient_norm(m.graph, f, x)));
        }
        for (long n = 0; n < R; ++n) worst = max(worst, rel_diff(t.ball_volume(n), ball_volume(m.graph, 0, n)));
        CHECK(worst < kAgree);
    }
}

TEST_CASE("two-sided radial operators and volumes match materialized balls")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        unsigned N = 2 + trial % 3;
        long R = 3 + trial % 6;
        TwoSidedRadialTree t(N, random_weights(rng, static_cast<std::size_t>(R)),
                             random_weights(rng, static_cast<std::size_t>(R)));
        RadialFunction u = random_radial(rng, -R, static_cast<std::size_t>(2 * R + 1));
        MaterializedTree m = materialize(t, R);
        GraphFunction f = m.lift(u);
        Real worst = 0;
        for (Vertex x = 0; x < m.graph.vertex_count(); ++x) {
            long n = m.layer[x];
            if (n >= R || n <= -R) continue;
            RadialOperators ops = radial_operators(t, u, n);
            worst = max(worst, rel_diff(ops.laplacian, laplacian(m.graph, f, x)));
            worst = max(worst, rel_diff(ops.gradient, gradient_norm(m.graph, f, x)));
        }
        for (long n = 0; n < R; ++n) worst = max(worst, rel_diff(t.ball_volume(n), ball_volume(m.graph, 0, n)));
        CHECK(worst < kAgree);
    }
}

TEST_CASE("two-sided tree structure")
{
    TwoSidedRadialTree t(3, {Real(1), Real(2), Real(3)}, {Real(1), Real(1), Real(1), Real(1)});
    CHECK(t.horizon() == 2);
    MaterializedTree m = materialize(t, 2);
    // Root: N−1 children forward, one edge to p.
    CHECK(m.graph.neighbors(0).size() == 3);
    std::size_t back = 0;
    for (const auto& nb : m.graph.neighbors(0)) back += m.layer[nb.v] == -1 ? 1 : 0;
    CHECK(back == 1);
    for (Vertex x = 1; x < m.graph.vertex_count(); ++x) {
        long n = m.layer[x];
        if (n > -2 && n < 2) CHECK(m.graph.neighbors(x).size() == 3);
    }
    CHECK(t.layer(-1).vertex_count == 1);
    CHECK(t.layer(-3).vertex_count == 4);
}

TEST_CASE("p0 of radial trees matches the materialized edge scan")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        unsigned N = 2 + trial % 3;
        RadialTree t(N, random_weights(rng, 6));
        // Scan interior vertices only; the extra layer keeps layer 5 interior.
        RadialTree longer(N, [&] {
            auto w = t.weights();
            w.push_back(Real(1));
            return w;
        }());
        MaterializedTree big = materialize(longer, 7);
        Real scan = 1;
        for (const auto& e : big.graph.edges()) {
            for (Vertex x : {e.x, e.y}) {
                if (big.layer[x] <= 5) scan = max(scan, big.graph.measure(x) / e.mu);
            }
        }
        CHECK(rel_diff(t.p0(), scan) < kAgree);
    }
}

TEST_CASE("caterpillar reproduces the radial operators on its spine")
{
    std::mt19937_64 rng(5);
    RadialTree t(3, random_weights(rng, 30));
    RadialFunction u = random_radial(rng, 0, 31);
    Caterpillar c = materialize_caterpillar(t, 20);
    GraphFunction f = c.tree.lift(u);
    REQUIRE(c.spine.size() == 21);
    for (long n = 0; n <= 20; ++n) {
        Vertex x = c.spine[static_cast<std::size_t>(n)];
        CHECK(c.tree.layer[x] == n);
        RadialOperators ops = radial_operators(t, u, n);
        CHECK(rel_diff(ops.laplacian, laplacian(c.tree.graph, f, x)) < kAgree);
        CHECK(rel_diff(ops.gradient, gradient_norm(c.tree.graph, f, x)) < kAgree);
    }
    for (long n = 0; n < 20; ++n) {
        Vertex s = c.spine[static_cast<std::size_t>(n)];
        Vertex next = c.spine[static_cast<std::size_t>(n + 1)];
        for (const auto& nb : c.tree.graph.neighbors(s)) {
            if (c.tree.layer[nb.v] == n + 1) CHECK(next <= nb.v);
        }
    }
}
