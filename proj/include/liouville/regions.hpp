#pragma once

#include <optional>
#include <string>

#include "liouville/numeric.hpp"

namespace liouville {

struct PQPoint {
    Rational p;
    Rational q;
};

enum class GRegion { G1, G2, G3, G4, G5, G6 };
enum class KRegion { K1, K2, K3, K4, OnLine };

std::string to_string(GRegion g);
std::string to_string(KRegion k);

GRegion classify_g(const PQPoint& pq);
KRegion classify_k(const PQPoint& pq);

// Raw defining inequalities, used to re-check a label independently.
bool in_region(const PQPoint& pq, GRegion g);
bool in_region(const PQPoint& pq, KRegion k);

// Open interval (lo, hi); hi absent means (lo, ∞).
struct OpenInterval {
    Rational lo;
    std::optional<Rational> hi;

    bool contains(const Rational& t) const { return t > lo && (!hi || t < *hi); }
};

struct LemmaExponents {
    Rational a;
    std::optional<Rational> b;  // undefined when p + t(q−1) = 0
    Rational gamma;
    Rational rho;
    Rational s_min;
};

// Exponents a, b, γ, ρ and the s threshold at (p, q, t). Throws when
// p+q = 1, p+q = t or t = 1.
LemmaExponents lemma_exponents(const PQPoint& pq, const Rational& t);

// a > 1, γ > 1 and s > s_min, checked exactly.
bool satisfies_st_cond(const PQPoint& pq, const Rational& s, const Rational& t);

struct STSelection {
    KRegion k;
    OpenInterval t_range;
    Rational t_default;
    Rational s_min;
    Rational s_default;
    LemmaExponents exponents;
};

// t from the K-region rule, t_default the midpoint (or lower end + 1 on a
// half-line), s_default = s_min + 1. Throws on the line p+q = 1.
STSelection choose_st(const PQPoint& pq);

enum class ExponentFamily { RegimeI, RegimeIII };

struct CounterexampleExponents {
    Rational sigma;
    Rational beta;
    std::optional<Rational> lambda;  // weight exponent, regime I only
};

// Regime I: λ=(p+1)/(p+q−1), β=1/(p+q−1), σ=(2−q)/(p+q−1).
// Regime III: β=1/(q−1), σ=(2−q)/(q−1).
CounterexampleExponents exponents(const PQPoint& pq, ExponentFamily family);

}  // namespace liouville
