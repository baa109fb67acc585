#include "liouville/cli.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "liouville/caccioppoli.hpp"
#include "liouville/counterexamples.hpp"
#include "liouville/descent.hpp"
#include "liouville/io.hpp"
#include "liouville/regions.hpp"

namespace liouville::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad input: flags, values or input files. Exit status 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kJsonDigits = 20;

std::string jr(const Real& x)
{
    return format_real(x, kJsonDigits);
}

std::string jq(const Rational& q)
{
    return format_rational(q);
}

Json header(const char* command)
{
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

void emit(std::ostream& out, const Json& j)
{
    out << j.dump(2) << "\n";
}

Rational rational_flag(const std::string& text, const char* name)
{
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--") + name + ": " + e.what());
    }
}

std::optional<Rational> optional_rational(const std::string& text, const char* name)
{
    if (text.empty()) return std::nullopt;
    return rational_flag(text, name);
}

template <class F>
auto load(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    } catch (const std::out_of_range& e) {
        throw InputError(e.what());
    }
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    return f;
}

struct Common {
    std::string p, q;
    unsigned precision = 0;
    std::string tau;
};

PQPoint pq_of(const Common& c)
{
    if (c.p.empty() || c.q.empty()) throw InputError("--p and --q are required");
    return {rational_flag(c.p, "p"), rational_flag(c.q, "q")};
}

Rational tau_of(const Common& c)
{
    if (c.tau.empty()) return default_tolerance();
    Rational t = rational_flag(c.tau, "tau");
    if (t < 0) throw InputError("--tau must be nonnegative");
    return t;
}

void add_common(CLI::App* sub, Common& c, bool needs_pq = true)
{
    if (needs_pq) {
        sub->add_option("--p", c.p, "exponent p (a/b or decimal)")->required();
        sub->add_option("--q", c.q, "exponent q (a/b or decimal)")->required();
    }
    sub->add_option("--precision", c.precision, "working precision in bits")->check(CLI::Range(64u, 65536u));
    sub->add_option("--tau", c.tau, "relative tolerance (default 1e-30)");
}

Json report_json(const MarginReport& r)
{
    Json j;
    j["verified"] = r.verified;
    j["max_margin"] = jr(r.max_margin);
    j["max_relative_margin"] = jr(r.max_relative_margin);
    j["worst_layer"] = r.worst_layer;
    j["layers_checked"] = r.layers.size();
    j["precision_bits"] = r.precision;
    j["note"] = r.note;
    return j;
}

Json spec_json(const RegimeSpec& s, long horizon)
{
    Json j;
    j["regime"] = to_string(s.regime);
    j["p"] = jq(s.pq.p);
    j["q"] = jq(s.pq.q);
    j["N"] = s.N;
    if (s.eps) j["eps"] = jq(*s.eps);
    if (s.lambda) j["lambda"] = jq(*s.lambda);
    if (s.regime != Regime::V1 && s.regime != Regime::V2) j["n0"] = s.n0;
    if (s.delta) j["delta"] = jq(*s.delta);
    j["horizon"] = horizon;
    return j;
}

// ---- classify

struct ClassifyOpts {
    Common c;
};

int cmd_classify(const ClassifyOpts& o, std::ostream& out)
{
    PQPoint pq = pq_of(o.c);
    Json j = header("classify");
    j["p"] = jq(pq.p);
    j["q"] = jq(pq.q);
    j["g"] = to_string(classify_g(pq));
    KRegion k = classify_k(pq);
    j["k"] = to_string(k);
    if (k != KRegion::OnLine) {
        STSelection st = choose_st(pq);
        Json s;
        s["t_lo"] = jq(st.t_range.lo);
        s["t_hi"] = st.t_range.hi ? Json(jq(*st.t_range.hi)) : Json(nullptr);
        s["t"] = jq(st.t_default);
        s["s_min"] = jq(st.s_min);
        s["s"] = jq(st.s_default);
        s["a"] = jq(st.exponents.a);
        s["gamma"] = jq(st.exponents.gamma);
        s["rho"] = jq(st.exponents.rho);
        j["st"] = s;
    }
    emit(out, j);
    return kOk;
}

// ---- construct

struct ConstructOpts {
    Common c;
    std::string regime, eps, lambda, delta;
    unsigned N = 3;
    long n0 = 0;
    long horizon = 10000;
    std::string csv, radial_out;
};

std::optional<std::pair<std::string, std::function<Real(long)>>> volume_target(const RegimeSpec& s)
{
    if (s.regime == Regime::I) {
        Rational d = s.pq.p + s.pq.q - 1;
        Real a = to_real((2 * s.pq.p + s.pq.q) / d), b = to_real(1 / d + *s.eps);
        std::string name = "n^" + jq((2 * s.pq.p + s.pq.q) / d) + " (ln n)^" + jq(1 / d + *s.eps);
        return std::make_pair(name, [a, b](long n) {
            Real x = to_real(static_cast<long long>(n));
            return Real(pow(x, a) * pow(log(x), b));
        });
    }
    if (s.regime == Regime::IV) {
        Real l = to_real(*s.lambda);
        return std::make_pair("e^(" + jq(*s.lambda) + " n)", [l](long n) {
            return Real(exp(l * to_real(static_cast<long long>(n))));
        });
    }
    return std::nullopt;
}

int cmd_construct(const ConstructOpts& o, std::ostream& out, std::ostream& err)
{
    RegimeSpec spec;
    try {
        spec.regime = parse_regime(o.regime);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    spec.pq = pq_of(o.c);
    spec.N = o.N;
    spec.eps = optional_rational(o.eps, "eps");
    spec.lambda = optional_rational(o.lambda, "lambda");
    spec.delta = optional_rational(o.delta, "delta");
    const Rational tau = tau_of(o.c);
    if (o.horizon < 1) throw InputError("--horizon must be at least 1");
    const long H = o.horizon;

    bool direct = false;
    switch (spec.regime) {
    case Regime::I:
    case Regime::III:
    case Regime::IV: direct = spec.delta.has_value(); break;
    case Regime::II: direct = o.n0 > 0; break;
    case Regime::V1:
    case Regime::V2: direct = spec.lambda.has_value(); break;
    }
    if (spec.regime == Regime::II && spec.delta) throw InputError("regime II takes no --delta");
    if ((spec.regime == Regime::V1 || spec.regime == Regime::V2) && (spec.delta || o.n0 > 0)) {
        throw InputError("regimes V1 and V2 take neither --delta nor --n0");
    }
    spec.n0 = o.n0 > 0 ? o.n0 : 2;
    if (spec.regime == Regime::V1 || spec.regime == Regime::V2) spec.n0 = 0;
    spec.horizon = H + 1;
    if (direct || spec.regime == Regime::II || spec.regime == Regime::V1 || spec.regime == Regime::V2) {
        RegimeSpec probe = spec;
        if (spec.regime == Regime::V1 || spec.regime == Regime::V2) {
            if (!probe.lambda) probe.lambda = Rational(1);
        }
        load([&] {
            validate(probe);
            return 0;
        });
    } else {
        RegimeSpec probe = spec;
        probe.delta = Rational(1);
        load([&] {
            validate(probe);
            return 0;
        });
    }

    Json j = header("construct");
    MarginReport rep;
    std::optional<TailReport> tail;
    BuiltCounterexample built = [&] {
        if (direct) return build(spec);
        CalibrationRequest req;
        req.regime = spec.regime;
        req.pq = spec.pq;
        req.eps = spec.eps;
        req.lambda = spec.lambda;
        req.N = spec.N;
        req.horizon = H;
        req.tau = tau;
        CalibrationResult res = calibrate(req);
        j["calibration"] = {{"success", res.success}, {"message", res.message}};
        if (!res.success) throw std::runtime_error("calibration failed: " + res.message);
        spec = res.spec;
        rep = std::move(res.report);
        tail = std::move(res.tail);
        return build(spec);
    }();
    if (direct) {
        rep = verify(built, H, tau);
        if (spec.regime != Regime::II || H >= 2) tail = tail_check(spec, H);
    }

    j["spec"] = spec_json(spec, H);
    Json r = report_json(rep);
    for (auto it = r.begin(); it != r.end(); ++it) j[it.key()] = it.value();
    if (tail) {
        j["tail"] = {{"holds", tail->holds},
                     {"doubled_margin", tail->doubled_margin},
                     {"rule", tail->rule},
                     {"min_ratio", jr(tail->min_ratio)}};
        j["certificate"] = rep.verified && tail->holds ? "finite-horizon certificate + tail margin"
                                                       : "finite-horizon check only";
    }
    j["p0"] = jr(p0_of(built.tree));
    if (auto target = volume_target(spec); target && H >= 32) {
        long hi = std::min<long>(4096, H);
        VolumeBand band = volume_band(built, target->second, 16, hi);
        j["volume_band"] = {{"target", target->first},
                            {"n_lo", 16},
                            {"n_hi", hi},
                            {"ratio_min", jr(band.ratio_min)},
                            {"ratio_max", jr(band.ratio_max)},
                            {"spread", jr(band.ratio_max / band.ratio_min)}};
    }
    if (!o.csv.empty()) {
        auto f = open_out(o.csv);
        write_layer_csv(f, built, rep);
    }
    if (!o.radial_out.empty()) {
        auto f = open_out(o.radial_out);
        write_radial(f, built.tree);
    }
    emit(out, j);
    if (!rep.verified) err << "verification failed at layer " << rep.worst_layer << "\n";
    return rep.verified ? kOk : kVerificationFailed;
}

// ---- verify

struct VerifyOpts {
    Common c;
    std::string radial, graph, u;
    long horizon = -1;
};

int cmd_verify(const VerifyOpts& o, std::ostream& out)
{
    PQPoint pq = pq_of(o.c);
    const Rational tau = tau_of(o.c);
    if (o.radial.empty() == o.graph.empty()) throw InputError("give exactly one of --radial and --graph");
    Json j = header("verify");
    j["p"] = jq(pq.p);
    j["q"] = jq(pq.q);
    if (!o.radial.empty()) {
        AnyRadialTree tree = load([&] {
            std::ifstream f(o.radial);
            if (!f) throw std::invalid_argument("cannot open " + o.radial);
            return read_radial(f);
        });
        RadialFunction u = load([&] { return read_layer_function_csv_file(o.u); });
        MarginReport rep = std::visit(
            [&](const auto& t) {
                long h = o.horizon >= 0 ? o.horizon : std::min(t.horizon(), u.last() - 1);
                return verify_radial(t, u, pq, h, tau);
            },
            tree);
        Json r = report_json(rep);
        for (auto it = r.begin(); it != r.end(); ++it) j[it.key()] = it.value();
        emit(out, j);
        return rep.verified ? kOk : kVerificationFailed;
    }
    WeightedGraph g = load([&] { return read_graph_file(o.graph); });
    GraphFunction u = load([&] { return read_function_csv_file(o.u, g.vertex_count()); });
    const Real p = to_real(pq.p), q = to_real(pq.q), tr = to_real(tau);
    bool ok = true;
    Real worst;
    Vertex worst_v = 0;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (!(u[x] > 0)) throw std::domain_error("u is not positive at vertex " + std::to_string(x));
        Real lap = laplacian(g, u, x), grad = gradient_norm(g, u, x);
        Real gq;
        if (q == 0) gq = 1;
        else if (grad == 0 && q < 0) throw std::domain_error("zero gradient with q < 0 at vertex " + std::to_string(x));
        else gq = grad == 0 ? Real(0) : Real(pow(grad, q));
        Real term = pow(u[x], p) * gq;
        Real F = lap + term;
        if (x == 0 || F > worst) {
            worst = F;
            worst_v = x;
        }
        if (F > tr * max(abs(lap), abs(term))) ok = false;
    }
    j["verified"] = ok;
    j["max_margin"] = jr(worst);
    j["worst_vertex"] = worst_v;
    j["vertices_checked"] = g.vertex_count();
    emit(out, j);
    return ok ? kOk : kVerificationFailed;
}

// ---- estimate

struct EstimateOpts {
    Common c;
    std::string graph, u, phi = "phi:3", s, t, p0, variant = "est2";
    Vertex base = 0;
    long omega_radius = -1;
};

int cmd_estimate(const EstimateOpts& o, std::ostream& out)
{
    PQPoint pq = pq_of(o.c);
    const Rational tau = tau_of(o.c);
    WeightedGraph g = load([&] { return read_graph_file(o.graph); });
    GraphFunction u = load([&] { return read_function_csv_file(o.u, g.vertex_count()); });
    TestFunction tf = load([&] { return parse_test_function(o.phi, o.base); });
    if (o.base >= g.vertex_count()) throw InputError("--base out of range");
    EstimateVariant variant = load([&] { return parse_variant(o.variant); });

    std::optional<STSelection> st;
    auto selection = [&]() -> const STSelection& {
        if (!st) st = load([&] { return choose_st(pq); });
        return *st;
    };
    Rational t = o.t.empty() ? selection().t_default : rational_flag(o.t, "t");
    Rational s = o.s.empty() ? selection().s_default : rational_flag(o.s, "s");
    Real p0 = o.p0.empty() ? p0_of(g) : to_real(rational_flag(o.p0, "p0"));

    std::vector<bool> omega;
    if (o.omega_radius >= 0) {
        auto d = bfs_distances(g, o.base);
        omega.resize(g.vertex_count());
        for (Vertex x = 0; x < g.vertex_count(); ++x) omega[x] = d[x] <= static_cast<std::size_t>(o.omega_radius);
    }
    EstimateReport r = estimate_sides(g, u, omega, tf, s, t, pq, p0, variant, tau);

    Json j = header("estimate");
    j["variant"] = to_string(r.variant);
    j["phi"] = to_string(tf);
    j["s"] = jq(r.s);
    j["t"] = jq(r.t);
    j["p"] = jq(pq.p);
    j["q"] = jq(pq.q);
    j["p0"] = jr(r.p0);
    j["omega"] = r.omega;
    j["lhs"] = jr(r.lhs);
    j["rhs"] = jr(r.rhs);
    j["C"] = jr(r.C);
    j["C_prime"] = jr(r.C_prime);
    j["hypotheses_met"] = r.hypotheses_met;
    j["failed_hypotheses"] = r.failed_hypotheses;
    j["notes"] = r.notes;
    j["holds"] = r.holds;
    emit(out, j);
    if (!r.hypotheses_met) return kHypothesesNotMet;
    return r.holds ? kOk : kVerificationFailed;
}

// ---- volume

struct VolumeOpts {
    Common c;
    std::string radial, graph;
    Vertex base = 0;
    std::string power = "0", log_power = "0", exp_rate = "0", max_spread = "4";
    long n_lo = 16, n_hi = 4096;
    bool nash_williams = false;
};

int cmd_volume(const VolumeOpts& o, std::ostream& out)
{
    if (o.radial.empty() == o.graph.empty()) throw InputError("give exactly one of --radial and --graph");
    if (o.n_lo < 2 || o.n_hi < o.n_lo) throw InputError("need 2 <= --n-lo <= --n-hi");
    const Real a = to_real(rational_flag(o.power, "power"));
    const Real b = to_real(rational_flag(o.log_power, "log-power"));
    const Real k = to_real(rational_flag(o.exp_rate, "exp-rate"));
    const Real spread_cap = to_real(rational_flag(o.max_spread, "max-spread"));

    // Cumulative volumes V(0..n_hi).
    std::vector<Real> vol;
    if (!o.radial.empty()) {
        AnyRadialTree tree = load([&] {
            std::ifstream f(o.radial);
            if (!f) throw std::invalid_argument("cannot open " + o.radial);
            return read_radial(f);
        });
        std::visit(
            [&](const auto& t) {
                if (o.n_hi > t.horizon()) throw InputError("--n-hi exceeds the tree horizon");
                Real acc = t.layer_measure(0);
                vol.push_back(acc);
                for (long n = 1; n <= o.n_hi; ++n) {
                    acc += t.layer_measure(n);
                    if constexpr (std::is_same_v<std::decay_t<decltype(t)>, TwoSidedRadialTree>) {
                        acc += t.layer_measure(-n);
                    }
                    vol.push_back(acc);
                }
            },
            tree);
    } else {
        WeightedGraph g = load([&] { return read_graph_file(o.graph); });
        if (o.base >= g.vertex_count()) throw InputError("--base out of range");
        auto d = bfs_distances(g, o.base);
        vol.assign(static_cast<std::size_t>(o.n_hi + 1), Real(0));
        for (Vertex x = 0; x < g.vertex_count(); ++x) {
            if (d[x] <= static_cast<std::size_t>(o.n_hi)) vol[d[x]] += g.measure(x);
        }
        for (std::size_t n = 1; n < vol.size(); ++n) vol[n] += vol[n - 1];
    }

    Real rmin, rmax;
    for (long n = o.n_lo; n <= o.n_hi; ++n) {
        Real x = to_real(static_cast<long long>(n));
        Real target = pow(x, a) * pow(log(x), b) * exp(k * x);
        Real ratio = vol[n] / target;
        if (n == o.n_lo || ratio < rmin) rmin = ratio;
        if (n == o.n_lo || ratio > rmax) rmax = ratio;
    }
    Real spread = rmax / rmin;
    bool bounded = spread <= spread_cap;
    Json j = header("volume");
    j["target"] = "n^" + o.power + " (ln n)^" + o.log_power + " e^(" + o.exp_rate + " n)";
    j["n_lo"] = o.n_lo;
    j["n_hi"] = o.n_hi;
    j["ratio_min"] = jr(rmin);
    j["ratio_max"] = jr(rmax);
    j["spread"] = jr(spread);
    j["max_spread"] = o.max_spread;
    j["bounded"] = bounded;
    if (o.nash_williams) {
        Real sum(0);
        for (long n = 1; n <= o.n_hi; ++n) sum += to_real(static_cast<long long>(n)) / vol[n];
        j["nash_williams_partial"] = jr(sum);
    }
    emit(out, j);
    return bounded ? kOk : kVerificationFailed;
}

// ---- descend

struct DescendOpts {
    Common c;
    std::string graph, u, p0, csv;
    Vertex start = 0;
    std::size_t steps = 1000;
};

Json family_json(const BoundFamily& f)
{
    Json j;
    j["checked"] = f.checked;
    j["failed"] = f.failed;
    j["passed"] = f.passed();
    j["worst_margin"] = f.checked ? Json(jr(f.worst_margin)) : Json(nullptr);
    j["first_failure"] = f.first_failure ? Json(*f.first_failure) : Json(nullptr);
    return j;
}

int cmd_descend(const DescendOpts& o, std::ostream& out)
{
    PQPoint pq = pq_of(o.c);
    const Rational tau = tau_of(o.c);
    WeightedGraph g = load([&] { return read_graph_file(o.graph); });
    GraphFunction u = load([&] { return read_function_csv_file(o.u, g.vertex_count()); });
    if (o.start >= g.vertex_count()) throw InputError("--start out of range");
    std::optional<Real> p0;
    if (!o.p0.empty()) p0 = to_real(rational_flag(o.p0, "p0"));

    DescentWalk w = descent_walk(g, u, o.start, o.steps);
    WalkDiagnostics d = walk_diagnostics(w, g, u, pq, p0, tau);

    Json j = header("descend");
    std::vector<Vertex> path;
    for (const auto& s : w.steps) path.push_back(s.vertex);
    j["walk"] = path;
    j["end"] = to_string(w.end);
    j["solution_steps"] = d.solution_steps;
    j["strict_decrease"] = family_json(d.strict_decrease);
    j["sandwich"] = family_json(d.sandwich);
    j["jensen"] = family_json(d.jensen);
    j["gradient_drop"] = family_json(d.gradient_drop);
    j["reverse_jensen"] = family_json(d.reverse_jensen);
    j["pointwise"] = family_json(d.pointwise);
    bool ok = d.strict_decrease.passed() && d.sandwich.passed() && d.jensen.passed() && d.gradient_drop.passed() &&
              d.reverse_jensen.passed() && d.pointwise.passed();
    j["passed"] = ok;
    if (!o.csv.empty()) {
        auto f = open_out(o.csv);
        f << "step,vertex,u,laplacian,grad,drop\n";
        for (std::size_t i = 0; i < w.steps.size(); ++i) {
            const auto& s = w.steps[i];
            f << i << "," << s.vertex << "," << format_real(s.u, kJsonDigits) << ","
              << format_real(s.laplacian, kJsonDigits) << "," << format_real(s.gradient, kJsonDigits) << ","
              << (s.drop ? format_real(*s.drop, kJsonDigits) : std::string()) << "\n";
        }
    }
    emit(out, j);
    return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Positive solutions of Δu + u^p|∇u|^q ≤ 0 on weighted graphs"};
    app.require_subcommand(1);

    ClassifyOpts classify;
    auto* c_cmd = app.add_subcommand("classify", "region labels and (s,t) selection for (p,q)");
    add_common(c_cmd, classify.c);

    ConstructOpts construct;
    auto* k_cmd = app.add_subcommand("construct", "build and verify a radial counterexample");
    add_common(k_cmd, construct.c);
    k_cmd->add_option("--regime", construct.regime, "I, II, III, IV, V1 or V2")->required();
    k_cmd->add_option("--eps", construct.eps, "epsilon (regimes I-III)");
    k_cmd->add_option("--lambda", construct.lambda, "lambda (regimes IV, V1, V2)");
    k_cmd->add_option("--delta", construct.delta, "delta; omit to calibrate");
    k_cmd->add_option("--n0", construct.n0, "layer offset n0; omit to calibrate");
    k_cmd->add_option("--N", construct.N, "tree degree")->check(CLI::Range(2u, 1000000u));
    k_cmd->add_option("--horizon", construct.horizon, "layers to verify");
    k_cmd->add_option("--csv", construct.csv, "per-layer CSV output path");
    k_cmd->add_option("--radial-out", construct.radial_out, "radial tree output path");

    VerifyOpts verify_o;
    auto* v_cmd = app.add_subcommand("verify", "check the inequality on a stored graph or radial tree");
    add_common(v_cmd, verify_o.c);
    v_cmd->add_option("--radial", verify_o.radial, "radial tree file");
    v_cmd->add_option("--graph", verify_o.graph, "edge-list file");
    v_cmd->add_option("--u", verify_o.u, "u values (layer,value or vertex,value CSV)")->required();
    v_cmd->add_option("--horizon", verify_o.horizon, "radial layers to check");

    EstimateOpts estimate;
    auto* e_cmd = app.add_subcommand("estimate", "both sides of the energy estimate on a graph");
    add_common(e_cmd, estimate.c);
    e_cmd->add_option("--graph", estimate.graph, "edge-list file")->required();
    e_cmd->add_option("--u", estimate.u, "vertex,value CSV")->required();
    e_cmd->add_option("--phi", estimate.phi, "test function h:<n> or phi:<i>");
    e_cmd->add_option("--base", estimate.base, "base vertex of the test function");
    e_cmd->add_option("--s", estimate.s, "s (default from the region rule)");
    e_cmd->add_option("--t", estimate.t, "t (default from the region rule)");
    e_cmd->add_option("--p0", estimate.p0, "p0 (default: smallest admissible)");
    e_cmd->add_option("--variant", estimate.variant, "est1 or est2");
    e_cmd->add_option("--omega-radius", estimate.omega_radius, "Omega = ball of this radius (default: all of V)");

    VolumeOpts volume;
    auto* w_cmd = app.add_subcommand("volume", "ball volumes against a target profile");
    add_common(w_cmd, volume.c, false);
    w_cmd->add_option("--radial", volume.radial, "radial tree file");
    w_cmd->add_option("--graph", volume.graph, "edge-list file");
    w_cmd->add_option("--base", volume.base, "center vertex for --graph");
    w_cmd->add_option("--power", volume.power, "target n^a");
    w_cmd->add_option("--log-power", volume.log_power, "target (ln n)^b");
    w_cmd->add_option("--exp-rate", volume.exp_rate, "target e^(k n)");
    w_cmd->add_option("--n-lo", volume.n_lo, "first radius");
    w_cmd->add_option("--n-hi", volume.n_hi, "last radius");
    w_cmd->add_option("--max-spread", volume.max_spread, "bound on ratio_max/ratio_min");
    w_cmd->add_flag("--nash-williams", volume.nash_williams, "also report the sum of n/V(n)");

    DescendOpts descend;
    auto* d_cmd = app.add_subcommand("descend", "greedy descent walk with diagnostics");
    add_common(d_cmd, descend.c);
    d_cmd->add_option("--graph", descend.graph, "edge-list file")->required();
    d_cmd->add_option("--u", descend.u, "vertex,value CSV")->required();
    d_cmd->add_option("--start", descend.start, "start vertex");
    d_cmd->add_option("--steps", descend.steps, "maximum number of moves");
    d_cmd->add_option("--p0", descend.p0, "p0 for the gradient-drop bound");
    d_cmd->add_option("--csv", descend.csv, "per-step CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    }

    auto bits = [&]() -> unsigned {
        for (const Common* c : {&classify.c, &construct.c, &verify_o.c, &estimate.c, &volume.c, &descend.c}) {
            if (c->precision) return c->precision;
        }
        return 0;
    }();
    std::optional<PrecisionScope> scope;
    if (bits) scope.emplace(bits);

    try {
        if (*c_cmd) return cmd_classify(classify, out);
        if (*k_cmd) return cmd_construct(construct, out, err);
        if (*v_cmd) return cmd_verify(verify_o, out);
        if (*e_cmd) return cmd_estimate(estimate, out);
        if (*w_cmd) return cmd_volume(volume, out);
        if (*d_cmd) return cmd_descend(descend, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const std::logic_error& e) {
        err << "hypotheses not met: " << e.what() << "\n";
        return kHypothesesNotMet;
    }
    return kParseError;
}

}  // namespace liouville::cli
