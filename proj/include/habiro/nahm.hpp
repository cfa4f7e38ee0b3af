// Nahm sums: the t-deformed Nahm equations, the V / delta / U_m invariants,
// expansions of the congruence sums at roots of unity, and rank-one WKB.
#pragma once

#include "habiro/cyclotomic.hpp"
#include "habiro/exact_core.hpp"
#include "habiro/multiseries.hpp"

namespace habiro {

struct NahmMatrix {
    unsigned N = 1;
    std::vector<std::vector<long>> a; // symmetric N x N

    static NahmMatrix rank1(long A) { return NahmMatrix{1, {{A}}}; }
    static NahmMatrix make(std::vector<std::vector<long>> m);

    long at(unsigned i, unsigned j) const { return a[i][j]; }
    long diag(unsigned j) const { return a[j][j]; }
};

using MSQ = MultiSeries<Rat>;
using XC = LSeries<Cyc>;       // Laurent series in x over Q(zeta)
using MSX = MultiSeries<XC>;   // t-series with x-Laurent coefficients

// zeta_M + x truncated at x^trunc.
XC q_at_root(unsigned M, long trunc);
// (zeta_M + x)^e (any sign of e) truncated.
XC q_power_at_root(unsigned M, long e, long trunc);

// Unique solution z(t) in Z[[t]]^N of 1 - z_j = (-1)^{A_jj} t_j prod_i z_i^{A_ij},
// z(0) = 1; integer t-exponents, truncated at total degree ordT (exclusive).
std::vector<MSQ> solve_deformed_nahm(const NahmMatrix& A, long ordT);

// V(t) = -sum_j Li_2(1 - z_j) - (1/2) sum_{ij} A_ij log z_i log z_j.
MSQ potential_V(const NahmMatrix& A, long ordT);
MSQ potential_V(const NahmMatrix& A, const std::vector<MSQ>& z);

// delta(t) = prod_j z_j^{-A_jj} det(diag(1-z) A + diag(z)).
MSQ discriminant_delta(const NahmMatrix& A, long ordT);
MSQ discriminant_delta(const NahmMatrix& A, const std::vector<MSQ>& z);

// U_m(t), normalized so U_m(0) = 1; exponents in (1/m) Z^N (denom m).
MultiSeries<Cyc> unit_Um(const NahmMatrix& A, unsigned m, long ordT_scaled);

// F_{A,m,k}(t^{1/m}, q) expanded at q = zeta_{m m'} + x.
// Integer t-exponents (the congruence restriction absorbs the 1/m rescale);
// x-coefficients are Laurent with per-order pole budgets asserted internally.
MSX nahm_expansion(const NahmMatrix& A, unsigned m, const std::vector<unsigned>& k,
                   unsigned mp, long ordT, long ordX);

// Full f_m(t, x) = F_A(t^{1/m}, zeta_m + x); exponents in (1/m) Z^N, total
// scaled degree < ordT_scaled.
MSX nahm_full_expansion(const NahmMatrix& A, unsigned m, long ordT_scaled, long ordX);

// log of a t-series of x-Laurent coefficients with constant term 1.
MSX mseries_log_xt(const MSX& f);

struct WkbRank1 {
    long A = 0;
    // b[k] and c[k] are the h^k coefficients (k >= 1) as polynomials in X.
    std::vector<PolyQ> b;
    std::vector<PolyQ> c;
};
// WKB coefficients for the 1x1 matrix (A): b_1 = A(A-1)/2 X^2, b_k in X*Delta*Q[X],
// c_k in X*Q[X] with Delta = X(AX+1)((A-1)X+1).
WkbRank1 wkb_rank1(long A, unsigned ordH);

} // namespace habiro
