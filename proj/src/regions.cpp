#include "liouville/regions.hpp"

#include <stdexcept>

namespace liouville {

std::string to_string(GRegion g)
{
    switch (g) {
    case GRegion::G1: return "G1";
    case GRegion::G2: return "G2";
    case GRegion::G3: return "G3";
    case GRegion::G4: return "G4";
    case GRegion::G5: return "G5";
    case GRegion::G6: return "G6";
    }
    return "?";
}

std::string to_string(KRegion k)
{
    switch (k) {
    case KRegion::K1: return "K1";
    case KRegion::K2: return "K2";
    case KRegion::K3: return "K3";
    case KRegion::K4: return "K4";
    case KRegion::OnLine: return "on-line";
    }
    return "?";
}

bool in_region(const PQPoint& pq, GRegion g)
{
    const Rational& p = pq.p;
    const Rational& q = pq.q;
    switch (g) {
    case GRegion::G1: return p >= 0 && 1 - p < q && q < 2;
    case GRegion::G2: return q >= 2;
    case GRegion::G3: return p < 0 && 1 < q && q < 2;
    case GRegion::G4: return p < 0 && q == 1;
    case GRegion::G5: return (p + q == 1 && p >= 0 && q > 0) || (p + q == 1 && q < 0);
    case GRegion::G6: return (p < 1 - q && q < 1) || (p == 1 && q == 0);
    }
    return false;
}

bool in_region(const PQPoint& pq, KRegion k)
{
    const Rational& p = pq.p;
    const Rational& q = pq.q;
    switch (k) {
    case KRegion::K1: return p < 1 - q && q <= 1;
    case KRegion::K2: return p >= 0 && 1 - p < q && q <= 1;
    case KRegion::K3: return p > 1 - q && q > 1;
    case KRegion::K4: return p < 0 && 1 < q && q < 1 - p;
    case KRegion::OnLine: return p + q == 1;
    }
    return false;
}

GRegion classify_g(const PQPoint& pq)
{
    const Rational& p = pq.p;
    const Rational& q = pq.q;
    if (q >= 2) return GRegion::G2;
    if (p == 1 && q == 0) return GRegion::G6;
    if (p + q == 1) {
        // q ≥ 2 is handled above; p < 0 with 1 < q < 2 falls in G3.
        if (q > 1) return GRegion::G3;
        return GRegion::G5;
    }
    if (p + q < 1) {
        if (q < 1) return GRegion::G6;
        if (q == 1) return GRegion::G4;
        return GRegion::G3;  // p < 1−q < 0 and 1 < q < 2
    }
    // p + q > 1, q < 2
    if (p >= 0) return GRegion::G1;
    return GRegion::G3;  // p < 0 forces q > 1−p > 1
}

KRegion classify_k(const PQPoint& pq)
{
    const Rational& p = pq.p;
    const Rational& q = pq.q;
    if (p + q == 1) return KRegion::OnLine;
    if (p + q < 1) return q <= 1 ? KRegion::K1 : KRegion::K4;
    return q <= 1 ? KRegion::K2 : KRegion::K3;
}

LemmaExponents lemma_exponents(const PQPoint& pq, const Rational& t)
{
    const Rational& p = pq.p;
    const Rational& q = pq.q;
    if (p + q == 1) throw std::invalid_argument("lemma exponents undefined on p+q = 1");
    if (p + q == t) throw std::invalid_argument("lemma exponents undefined at t = p+q");
    if (t == 1) throw std::invalid_argument("lemma exponents undefined at t = 1");
    Rational num = 2 * p + q + t * (q - 2);
    LemmaExponents e;
    e.a = num / (p + q - t);
    Rational bden = p + t * (q - 1);
    if (bden != 0) e.b = num / bden;
    e.gamma = (p + q - t) / (1 - t);
    e.rho = (p + q - t) / (p + q - 1);
    e.s_min = num / (p + q - 1);
    return e;
}

bool satisfies_st_cond(const PQPoint& pq, const Rational& s, const Rational& t)
{
    if (pq.p + pq.q == 1 || pq.p + pq.q == t || t == 1) return false;
    LemmaExponents e = lemma_exponents(pq, t);
    return e.a > 1 && e.gamma > 1 && s > e.s_min;
}

STSelection choose_st(const PQPoint& pq)
{
    KRegion k = classify_k(pq);
    OpenInterval range;
    switch (k) {
    case KRegion::OnLine:
        throw std::invalid_argument("no K-region on the line p+q = 1");
    case KRegion::K1:
        range = {Rational(1), std::nullopt};
        break;
    case KRegion::K2:
        range = {Rational(0), Rational(1)};
        break;
    case KRegion::K3: {
        Rational lo = -pq.p / (pq.q - 1);
        range = {lo > 0 ? lo : Rational(0), Rational(1)};
        break;
    }
    case KRegion::K4:
        range = {Rational(1), Rational(-pq.p / (pq.q - 1))};
        break;
    }
    STSelection sel;
    sel.k = k;
    sel.t_range = range;
    sel.t_default = range.hi ? Rational((range.lo + *range.hi) / 2) : Rational(range.lo + 1);
    sel.exponents = lemma_exponents(pq, sel.t_default);
    sel.s_min = sel.exponents.s_min;
    sel.s_default = sel.s_min + 1;
    return sel;
}

CounterexampleExponents exponents(const PQPoint& pq, ExponentFamily family)
{
    CounterexampleExponents e;
    if (family == ExponentFamily::RegimeI) {
        Rational d = pq.p + pq.q - 1;
        if (d == 0) throw std::invalid_argument("regime I exponents need p+q != 1");
        e.lambda = (pq.p + 1) / d;
        e.beta = 1 / d;
        e.sigma = (2 - pq.q) / d;
    } else {
        Rational d = pq.q - 1;
        if (d == 0) throw std::invalid_argument("regime III exponents need q != 1");
        e.beta = 1 / d;
        e.sigma = (2 - pq.q) / d;
    }
    return e;
}

}  // namespace liouville
