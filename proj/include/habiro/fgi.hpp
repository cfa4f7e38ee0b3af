// Formal Gaussian integration: the bracket <.>_Lambda, the normalized
// infinite-Pochhammer factors psi, the integrals I_{A,M,l}(t,x), their sums
// f^FGI_{A,m} and the congruence-class combinations Omega^FGI_{A,m,k}.
//
// Expansions at q = zeta_M + x are assembled from Bernoulli levels of
// log(T; e^{Mh})_inf. The transcendental constants that appear along the way
// (Li_2 and log(1-.) at the points zeta^b Z) are carried as formal atoms; the
// normalization must cancel them exactly, and the builder asserts that it
// does. Everything that remains is exact cyclotomic-rational data.
#pragma once

#include "habiro/nahm.hpp"
#include <map>

namespace habiro {

using TS = MultiSeries<Cyc>; // u-Laurent (signed exponents) over Q(zeta)
using XTS = LSeries<TS>;     // x-Laurent of TS

struct FgiContext {
    unsigned M = 1;   // root order zeta_M
    unsigned N = 1;   // number of t-variables
    long utrunc = 1;  // total u-degree bound for TS (internal budget)
    long xtrunc = 1;  // exclusive x bound for XTS (internal budget)
    Cyc zeta;         // zeta_M
    XTS h;            // log(1 + x / zeta_M)
    XTS hinv;         // 1 / h
    // Nahm data in u-units: z_j(u^M), its powers and roots
    std::vector<TS> z;          // z_j(u^M)
    std::vector<TS> zinv;       // z_j(u^M)^{-1}
    std::vector<TS> Zs;         // z_j(u^M)^{1/M}
    std::vector<TS> inv1mz;     // (1 - z_j(u^M))^{-1} via the Nahm relation
    std::vector<TS> inv1mZs;    // (1 - Zs_j)^{-1}
    NahmMatrix A;

    TS ts_const(const Cyc& c) const {
        return TS::constant(c, N, 1, utrunc);
    }
    XTS xt_const(const Cyc& c) const { return XTS(ts_const(c)); }
    XTS xt_ts(const TS& t) const { return XTS(t); }
};

FgiContext make_fgi_context(const NahmMatrix& A, unsigned M, long ordU, long ordX,
                            long wmax);

// One-variable w-polynomial with XTS coefficients.
struct W1 {
    std::vector<XTS> c;
    XTS at(size_t a) const { return a < c.size() ? c[a] : XTS(0); }
};

// psi_{l, Z_j, zeta_M}(w, x): normalized infinite-Pochhammer factor for the
// j-th variable; zeta_twist multiplies the root argument by zeta_M^{twist}
// (the Galois action on z^{1/M} used by the permutation property).
W1 psi_factor(const FgiContext& C, unsigned j, long l, long wmax, long zeta_twist = 0);

namespace fgi_detail {
// Atom kinds: 0 = Li_2(zeta^b Z_j), 1 = log(1 - zeta^b Z_j).
struct AtomKey {
    int kind;
    unsigned j;
    long b;
    bool operator<(const AtomKey& o) const {
        return std::tie(kind, j, b) < std::tie(o.kind, o.j, o.b);
    }
};
struct AC {
    XTS main;
    std::map<AtomKey, XTS> atoms;
};
// Raw Bernoulli assembly of log(q^{l+1} Z e^w; q)_inf by w-degree; when
// skip_normalized is set, the four removed levels are omitted.
std::vector<AC> log_poch_bernoulli(const FgiContext& C, unsigned j, long l,
                                   long wmax, long zeta_twist, bool skip_normalized);
// log(1 - q^{a} Z_j e^w) as atom-bearing w-coefficients.
std::vector<AC> log_one_minus_qZ(const FgiContext& C, unsigned j, long a,
                                 long wmax, long zeta_twist);
} // namespace fgi_detail

// I_{A,M,l}(u, x): u-exponents are integers (the caller rescales to t^{1/m}).
// The polar prefactor exp(V(u^M)/(M^2 log q)) is multiplied out inside the
// window when include_polar is set.
XTS fgi_I(const FgiContext& C, const std::vector<unsigned>& l, long wmax,
          bool include_polar, const std::vector<long>& zeta_twists = {});

// f^FGI_{A,m}(t, x) = sum_k I_{A,m,k}: MultiSeries in t^{1/m}-units with
// x-Laurent coefficients, plus the polar datum V (returned separately when
// include_polar is false).
struct FgiSum {
    MSX series;              // exponents scaled by 1/m (denom = m)
    LSeries<Rat> polarV;     // V(t) in integer t-units
    bool polar_included = false;
};
FgiSum fgi_series(const NahmMatrix& A, unsigned m, long ordT_scaled, long ordX,
                  bool include_polar);

// Omega^FGI_{A,m,k}(t, q) at q = zeta_{m m'} + x; integer t-exponents;
// directly comparable with nahm_expansion(A, m, k, m', ...).
MSX omega_fgi(const NahmMatrix& A, unsigned m, const std::vector<unsigned>& k,
              unsigned mp, long ordT, long ordX);

} // namespace habiro
