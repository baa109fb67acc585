#include <doctest.h>

#include "liouville/counterexamples.hpp"

using namespace liouville;

namespace {

PQPoint pq(const char* p, const char* q)
{
    return {parse_rational(p), parse_rational(q)};
}

Real rel(const Real& a, const Real& b)
{
    return abs(a - b) / abs(b);
}

RegimeSpec regime_i(long n0, const Rational& delta, long horizon)
{
    RegimeSpec s;
    s.regime = Regime::I;
    s.pq = pq("2", "1");
    s.eps = Rational(1, 10);
    s.n0 = n0;
    s.delta = delta;
    s.horizon = horizon;
    return s;
}

}  // namespace

TEST_CASE("regime names round-trip")
{
    for (Regime r : {Regime::I, Regime::II, Regime::III, Regime::IV, Regime::V1, Regime::V2}) {
        CHECK(parse_regime(to_string(r)) == r);
    }
    CHECK_THROWS_AS(parse_regime("VI"), std::invalid_argument);
}

TEST_CASE("validate rejects region mismatches and missing parameters")
{
    RegimeSpec s = regime_i(2, Rational(1), 10);
    CHECK_NOTHROW(validate(s));
    s.pq = pq("0", "3");
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
    s = regime_i(1, Rational(1), 10);
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
    s = regime_i(2, Rational(1), 10);
    s.eps.reset();
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
    RegimeSpec v2;
    v2.regime = Regime::V2;
    v2.pq = pq("1/2", "1/2");
    v2.lambda = Rational(2);
    CHECK_THROWS_AS(validate(v2), std::invalid_argument);
}

TEST_CASE("regime I layer values at n0 = 2, delta = 1")
{
    BuiltCounterexample b = build(regime_i(2, Rational(1), 4));
    const auto& t = std::get<RadialTree>(b.tree);
    // w0 = 2^{3/2}(ln 2)^{3/5}, u0 = (√2 · √ln 2)^{-1}, independently evaluated.
    CHECK(rel(t.weight(0), Real("2.270075335734646806679321721689401199846")) < Real(1e-30));
    CHECK(rel(b.u.at(0), Real("0.8493218002880190427215028341028896197151")) < Real(1e-30));
    Real two = 2;
    CHECK(rel(t.weight(0), exp(Real(1.5) * log(two) + Real(3) / 5 * log(log(two)))) < Real(1e-30));
}

TEST_CASE("regime IV solution decreases; regime V1 with lambda 4 is e^{-n}")
{
    RegimeSpec iv;
    iv.regime = Regime::IV;
    iv.pq = pq("-2", "1");
    iv.lambda = Rational(1);
    iv.delta = Rational(3, 2);
    iv.horizon = 50;
    BuiltCounterexample b = build(iv);
    for (long n = 0; n <= 50; ++n) {
        CHECK(b.u.at(n) == Real(3) / 2 / (n + 2) + Real(3) / 2);
        if (n > 0) CHECK(b.u.at(n) < b.u.at(n - 1));
    }
    RegimeSpec v1;
    v1.regime = Regime::V1;
    v1.pq = pq("1/2", "1/2");
    v1.lambda = Rational(4);
    v1.horizon = 20;
    BuiltCounterexample c = build(v1);
    for (long n = 0; n <= 20; ++n) CHECK(rel(c.u.at(n), exp(Real(-n))) < Real(1e-35));
}

TEST_CASE("regime V2 builds a two-sided tree over [-H, H]")
{
    RegimeSpec v2;
    v2.regime = Regime::V2;
    v2.pq = pq("2", "-1");
    v2.lambda = Rational(4);
    v2.horizon = 30;
    BuiltCounterexample b = build(v2);
    const auto& t = std::get<TwoSidedRadialTree>(b.tree);
    CHECK(t.horizon() == 30);
    CHECK(b.u.first == -30);
    CHECK(b.u.last() == 30);
    CHECK(rel(t.weight(-31), 4 * exp(Real(-124))) < Real(1e-35));
    CHECK(verify(b, 29).verified);
}

TEST_CASE("delta0 values and directions")
{
    Delta0 d = delta0(regime_i(2, Rational(1), 4));
    CHECK(d.direction == BoundDirection::Upper);
    // q = 1: A drops out and δ₀ = 2^{1/4}·√2·√ln 2.
    CHECK(rel(d.value, Real("1.400184376050916511378502539489667032254")) < Real(1e-30));
    Delta0 d3 = delta0(regime_i(3, Rational(1), 4));
    Real x0 = sqrt(3 * log(Real(3)));
    CHECK(rel(d3.value, pow(Real(2), Real(0.25)) * x0) < Real(1e-30));

    RegimeSpec iv;
    iv.regime = Regime::IV;
    iv.pq = pq("-2", "1");
    iv.lambda = Rational(1);
    for (long n0 : {2L, 5L, 40L}) {
        iv.n0 = n0;
        Delta0 e = delta0(iv);
        CHECK(e.direction == BoundDirection::Lower);
        CHECK(rel(e.value, pow(Real(2), Real(-0.25)) / (1 + Real(1) / n0)) < Real(1e-30));
    }
    RegimeSpec v1;
    v1.regime = Regime::V1;
    v1.pq = pq("1/2", "1/2");
    v1.lambda = Rational(8);
    CHECK_THROWS_AS(delta0(v1), std::invalid_argument);
}

TEST_CASE("calibration functions and limits")
{
    const Rational eps(1, 10);
    CHECK(rel(lambda_limit(Regime::I, pq("2", "1"), eps), Real("0.05")) < Real(1e-35));
    // On p = 3 − 2q the closed form is the true limit: 2^{−3/4}·2 for (2, 1/2, ε = 2).
    Real l1 = lambda_fn(Regime::I, pq("2", "1/2"), Rational(2), 1000000);
    CHECK(rel(l1, 2 * pow(Real(2), Real(-3) / 4)) < Real(1e-3));
    CHECK_FALSE(is_finite(lambda_limit(Regime::II, pq("0", "3"), Rational(1, 2))));
    CHECK(rel(lambda_limit(Regime::III, pq("-1", "1.5"), eps), Real("0.084089641525371454303112547623321489504")) <
          Real(1e-30));
    Real l4lim = lambda_limit(Regime::IV, pq("-2", "1"), Rational(1));
    CHECK(rel(l4lim, Real("0.6535323512024061840663446115802374561406")) < Real(1e-30));
    CHECK(abs(lambda_fn(Regime::IV, pq("-2", "1"), Rational(1), 10000) - l4lim) < Real(1e-3));

    // V1 root condition at λ = 8: 2^{1/4}(1 − e^{−2})^{1/2}.
    Real v1 = lambda_fn(Regime::V1, pq("0.5", "0.5"), Rational(8), 0);
    CHECK(rel(v1, Real("1.105812176344732243552937906000819166051")) < Real(1e-30));
    CHECK(v1 >= 1);
    CHECK_THROWS_AS(lambda_fn(Regime::I, pq("2", "1"), eps, 2), std::domain_error);
    CHECK_THROWS_AS(lambda_limit(Regime::V1, pq("0.5", "0.5"), Rational(8)), std::invalid_argument);
}

TEST_CASE("corrected asymptote equals the closed-form limit when sigma = 1")
{
    const Rational eps(1, 10);
    CHECK(rel(lambda_asymptote(Regime::III, pq("-1", "1.5"), eps), lambda_limit(Regime::III, pq("-1", "1.5"), eps)) <
          Real(1e-35));
    // (2,1) has σ = 1/2: the closed form is off by σ^{q/2} = 1/√2.
    CHECK(rel(lambda_asymptote(Regime::I, pq("2", "1"), eps), lambda_limit(Regime::I, pq("2", "1"), eps) * sqrt(Real(2))) <
          Real(1e-35));
    CHECK(rel(lambda_asymptote(Regime::I, pq("2", "1"), eps), sqrt(Real(2)) / 20) < Real(1e-35));
}

TEST_CASE("calibration functions converge monotonically on a sampled grid")
{
    struct Case {
        Regime r;
        PQPoint x;
        Rational param;
    };
    for (const Case& c : {Case{Regime::I, pq("2", "1"), Rational(1, 10)}, Case{Regime::III, pq("-1", "1.5"), Rational(1, 10)},
                          Case{Regime::IV, pq("-2", "1"), Rational(1)}}) {
        Real target = lambda_asymptote(c.r, c.x, c.param);
        Real prev = -1;
        for (long n : {1000L, 10000L, 100000L, 1000000L}) {
            Real err = abs(lambda_fn(c.r, c.x, c.param, n) / target - 1);
            if (prev >= 0) CHECK(err < prev);
            prev = err;
        }
    }
}

TEST_CASE("V2 closed form grows with lambda")
{
    Real prev = 0;
    for (int l = 2; l <= 64; l *= 2) {
        Real v = lambda_fn(Regime::V2, pq("2", "-1"), Rational(l), 1);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev > 1);
}

TEST_CASE("constant solution verifies with exact zero margins")
{
    RadialTree t(3, std::vector<Real>(12, Real(2)));
    RadialFunction u(0, std::vector<Real>(12, Real(5)));
    MarginReport r = verify_radial(t, u, pq("2", "1"), 10);
    CHECK(r.verified);
    for (const auto& l : r.layers) CHECK(l.margin == 0);
}

TEST_CASE("q < 0 with zero gradient is an error")
{
    RadialTree t(3, std::vector<Real>(6, Real(2)));
    RadialFunction u(0, std::vector<Real>(6, Real(1)));
    CHECK_THROWS_AS(verify_radial(t, u, pq("2", "-1"), 4), std::domain_error);
}

TEST_CASE("verify rejects horizons beyond the stored layers")
{
    BuiltCounterexample b = build(regime_i(2, Rational(1), 20));
    CHECK_THROWS_AS(verify(b, 20), std::out_of_range);
    CHECK_NOTHROW(verify(b, 19));
}

TEST_CASE("calibrated regime I verifies; ten times delta fails")
{
    CalibrationRequest req;
    req.regime = Regime::I;
    req.pq = pq("2", "1");
    req.eps = Rational(1, 10);
    req.horizon = 400;
    CalibrationResult res = calibrate(req);
    REQUIRE(res.success);
    CHECK(res.report.verified);
    CHECK(res.tail.holds);
    const RegimeSpec& s = res.spec;

    Real threshold = pow(to_real(*s.delta), to_real(delta_exponent(s.regime, s.pq)));
    for (long n = 1; n <= 400; ++n) CHECK(threshold <= lambda_fn(Regime::I, s.pq, *s.eps, n + s.n0));

    RegimeSpec big = s;
    big.delta = *s.delta * 10;
    MarginReport bad = verify(build(big), 400);
    CHECK_FALSE(bad.verified);
    CHECK(bad.max_margin > 0);

    BuiltCounterexample b = build(s);
    const auto& t = std::get<RadialTree>(b.tree);
    HarnackReport h = radial_harnack(b.u, 0, 400, t.p0());
    CHECK(h.holds);
    for (long n = 1; n <= 400; ++n) CHECK(b.u.at(n) < b.u.at(n - 1));
}

TEST_CASE("radial verification agrees with vertexwise evaluation on small balls")
{
    for (Regime r : {Regime::I, Regime::IV, Regime::V1}) {
        RegimeSpec s;
        s.regime = r;
        s.horizon = 9;
        if (r == Regime::I) s = regime_i(4, Rational(1, 10), 9);
        if (r == Regime::IV) {
            s.pq = pq("-2", "1");
            s.lambda = Rational(1);
            s.delta = Rational(2);
        }
        if (r == Regime::V1) {
            s.pq = pq("1/2", "1/2");
            s.lambda = Rational(8);
            s.n0 = 0;
        }
        BuiltCounterexample b = build(s);
        const auto& t = std::get<RadialTree>(b.tree);
        MarginReport rep = verify_radial(t, b.u, s.pq, 7);
        MaterializedTree m = materialize(t, 8);
        GraphFunction f = m.lift(b.u);
        Real p = to_real(s.pq.p), q = to_real(s.pq.q);
        for (Vertex x = 0; x < m.graph.vertex_count(); ++x) {
            long n = m.layer[x];
            if (n > 7) continue;
            Real F = laplacian(m.graph, f, x) + pow(f[x], p) * pow(gradient_norm(m.graph, f, x), q);
            const Real& R = rep.layers[static_cast<std::size_t>(n)].margin;
            CHECK(abs(F - R) <= Real(1e-30) * max(Real(1), abs(R)));
        }
    }
}

TEST_CASE("volume bands")
{
    BuiltCounterexample b = build(regime_i(2, Rational(1), 4200));
    auto right = [](long n) {
        Real x = to_real(static_cast<long long>(n));
        return Real(pow(x, Real(2.5)) * pow(log(x), Real(0.6)));
    };
    auto wrong = [](long n) {
        Real x = to_real(static_cast<long long>(n));
        return Real(pow(x, Real(5)));
    };
    VolumeBand good = volume_band(b, right, 16, 4096);
    CHECK(good.ratio_max / good.ratio_min <= 4);
    VolumeBand bad_short = volume_band(b, wrong, 16, 256);
    VolumeBand bad = volume_band(b, wrong, 16, 4096);
    CHECK(bad.ratio_max / bad.ratio_min > bad_short.ratio_max / bad_short.ratio_min);
    CHECK(bad.ratio_max / bad.ratio_min > 100);

    RegimeSpec iv;
    iv.regime = Regime::IV;
    iv.pq = pq("-2", "1");
    iv.lambda = Rational(1);
    iv.delta = Rational(2);
    iv.horizon = 300;
    VolumeBand e = volume_band(build(iv), [](long n) { return Real(exp(to_real(static_cast<long long>(n)))); }, 16, 300);
    CHECK(e.ratio_max / e.ratio_min <= 4);
    CHECK_THROWS_AS(volume_band(b, [](long) { return Real(0); }, 16, 20), std::invalid_argument);
}
