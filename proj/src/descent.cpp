#include "liouville/descent.hpp"

#include <stdexcept>

namespace liouville {

namespace {

void record(BoundFamily& f, std::size_t step, const Real& margin, bool ok)
{
    if (f.checked == 0 || margin > f.worst_margin) f.worst_margin = margin;
    ++f.checked;
    if (!ok) {
        ++f.failed;
        if (!f.first_failure) f.first_failure = step;
    }
}

// Margin of Δu + u^p|∇u|^q, or nullopt when undefined (q < 0, zero gradient).
std::optional<Real> inequality_margin(const Real& lap, const Real& u, const Real& grad, const Real& p, const Real& q,
                                      Real& scale)
{
    Real gq;
    if (q == 0) {
        gq = 1;
    } else if (grad == 0) {
        if (q < 0) return std::nullopt;
        gq = 0;
    } else {
        gq = pow(grad, q);
    }
    Real term = pow(u, p) * gq;
    scale = max(abs(lap), abs(term));
    return lap + term;
}

}  // namespace

std::string to_string(WalkEnd e)
{
    switch (e) {
    case WalkEnd::MaxSteps: return "max-steps";
    case WalkEnd::ZeroGradient: return "zero-gradient";
    case WalkEnd::LocalMinimum: return "local-minimum";
    case WalkEnd::Revisit: return "revisit";
    }
    return "?";
}

DescentWalk descent_walk(const WeightedGraph& g, const GraphFunction& u, Vertex x0, std::size_t max_steps)
{
    require_total(g, u);
    if (x0 >= g.vertex_count()) throw std::out_of_range("start vertex out of range");
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (!(u[x] > 0)) throw std::invalid_argument("u is not positive at vertex " + std::to_string(x));
    }
    if (gradient_norm(g, u, x0) == 0) throw std::invalid_argument("zero gradient at the start vertex: no descent possible");

    DescentWalk w;
    std::vector<bool> seen(g.vertex_count(), false);
    Vertex x = x0;
    for (;;) {
        seen[x] = true;
        WalkStep st{x, u[x], laplacian(g, u, x), gradient_norm(g, u, x), std::nullopt};
        w.steps.push_back(std::move(st));
        if (w.steps.back().gradient == 0) {
            w.end = WalkEnd::ZeroGradient;
            break;
        }
        if (w.steps.size() > max_steps) {
            w.end = WalkEnd::MaxSteps;
            break;
        }
        const auto& nbs = g.neighbors(x);
        Vertex best = nbs.front().v;
        for (const auto& nb : nbs) {
            if (u[nb.v] < u[best] || (u[nb.v] == u[best] && nb.v < best)) best = nb.v;
        }
        if (!(u[best] < u[x])) {
            w.end = WalkEnd::LocalMinimum;
            break;
        }
        if (seen[best]) {
            w.end = WalkEnd::Revisit;
            break;
        }
        w.steps.back().drop = u[x] - u[best];
        x = best;
    }
    return w;
}

WalkDiagnostics walk_diagnostics(const DescentWalk& walk, const WeightedGraph& g, const GraphFunction& u,
                                 const PQPoint& pq, const std::optional<Real>& p0, const Rational& tau)
{
    require_total(g, u);
    WalkDiagnostics d;
    const Real p = to_real(pq.p), q = to_real(pq.q), tr = to_real(tau);
    const Real root2 = sqrt(Real(2));
    std::optional<Real> drop_factor;
    if (p0) drop_factor = sqrt((1 + *p0 * *p0) / 2);

    for (std::size_t i = 0; i < walk.steps.size(); ++i) {
        const WalkStep& st = walk.steps[i];
        const Real& lap = st.laplacian;
        const Real& grad = st.gradient;

        Real jm = abs(lap) - root2 * grad;
        record(d.jensen, i, jm, jm <= tr * root2 * grad);

        if (st.drop) {
            const Real& drop = *st.drop;
            record(d.strict_decrease, i, -drop, drop > 0);
            // 0 > Δu and Δu ≥ −drop; margin is the worse of the two sides.
            Real m = max(lap, -drop - lap);
            record(d.sandwich, i, m, lap < 0 && lap >= -drop - tr * drop);
            if (drop_factor && lap <= 0) {
                Real rhs = *drop_factor * drop;
                record(d.gradient_drop, i, grad - rhs, grad <= rhs + tr * rhs);
            }
        }

        Real scale;
        auto F = inequality_margin(lap, st.u, grad, p, q, scale);
        if (!F || *F > tr * scale) continue;
        ++d.solution_steps;
        if (grad != 0) {
            Real rhs = root2 * pow(st.u, -p) * pow(grad, 1 - q);
            record(d.reverse_jensen, i, 1 - rhs, 1 <= rhs + tr * rhs);
        }
        Real gq = q == 0 ? Real(1) : (grad == 0 ? Real(0) : Real(pow(grad, q)));
        Real lhs = pow(st.u, p - 1) * gq;
        record(d.pointwise, i, lhs - 1, lhs <= 1 + tr);
    }
    return d;
}

PointwiseReport pointwise_bound_check(const WeightedGraph& g, const GraphFunction& u, const PQPoint& pq,
                                      const Rational& tau)
{
    require_total(g, u);
    PointwiseReport r;
    const Real p = to_real(pq.p), q = to_real(pq.q), tr = to_real(tau);
    r.margins.resize(g.vertex_count());
    bool first = true;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (!(u[x] > 0)) throw std::invalid_argument("u is not positive at vertex " + std::to_string(x));
        Real lap = laplacian(g, u, x), grad = gradient_norm(g, u, x);
        Real scale;
        auto F = inequality_margin(lap, u[x], grad, p, q, scale);
        if (!F) {
            r.skipped_zero_gradient.push_back(x);
            continue;
        }
        if (*F > tr * scale) {
            r.not_solution.push_back(x);
            r.hypotheses_met = false;
            continue;
        }
        Real gq = q == 0 ? Real(1) : (grad == 0 ? Real(0) : Real(pow(grad, q)));
        Real m = pow(u[x], p - 1) * gq - 1;
        if (first || m > r.max_margin) r.max_margin = m;
        first = false;
        if (m > tr) r.holds = false;
        r.margins[x] = std::move(m);
    }
    return r;
}

}  // namespace liouville
