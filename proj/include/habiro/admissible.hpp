// Admissible series: extraction of the Pochhammer-product exponents c_{n,i}
// (generalized DT invariants) and the Laurent polynomials L_n(q), the ratio
// and symmetrization with their exact q-coefficients, level-m decomposition,
// and the Dwork-type quotient integrality verdicts.
#pragma once

#include "habiro/nahm.hpp"
#include <functional>
#include <map>
#include <optional>

namespace habiro {

using QS = LSeries<Rat>; // q-power-series window or exact Laurent polynomial

struct DTTable {
    // rows[n] = (i0, coefficients of q^{i0}, q^{i0+1}, ...), trailing nonzero
    std::map<long, std::pair<long, std::vector<Int>>> rows;
    Int coeff(long n, long i) const;
};

struct NotAdmissible : std::runtime_error {
    explicit NotAdmissible(const std::string& w) : std::runtime_error(w) {}
};

// [t^n] F_A(t, q) truncated at q^window for a rank-one matrix.
QS fa_t_coeff_rank1(long A, long n, long window);

// log F as t-coefficients (t-order <= nmax) given the t-coefficients of F.
std::vector<QS> log_t_series(const std::function<QS(long)>& f, long nmax);

// L_n(q) for n <= nmax from log F = -sum_{n,l} L_n(q^l)/(l (1-q^l)) t^{nl};
// q-window series; finite support is certified within (window - guard).
std::vector<QS> extract_Ln_windowed(const std::function<QS(long)>& f, long nmax,
                                    long window, long guard);

// c_{n,i} for the rank-one F_A; window defaults to the support bound
// n^2 + n + 1 plus a guard. Throws NotAdmissible if a coefficient fails to
// be integral or the support does not terminate inside the window.
DTTable extract_dt_rank1(long A, long nmax, long window = 0);

// Rebuild the t-coefficients of prod (q^i t^n; q)_inf^{c_{n,i}} mod q^window.
std::vector<QS> rebuild_from_dt(const DTTable& dt, long nmax, long window);

// Exact Laurent-polynomial coefficients of G(t,q) = F_A(qt,q)/F_A(t,q)
// from the Riccati recursion (division-free, so integrality is manifest).
std::vector<QS> ratio_G_series(long A, long ordT);

// Exact Laurent-polynomial coefficients of F^sym = F_A(t,q) F_{1-A}(t,q),
// computed in a wide q-window and certified polynomial inside it.
std::vector<QS> fsym_series(long A, long ordT, long guard = 8);

struct LevelMVerdict {
    bool admissible = true;
    std::string reason;
    // L_n represented as numerator Laurent polynomial over prod Phi_d (m∤d):
    std::vector<QS> Ln_numerator;   // exact Laurent polynomials when admissible
    std::vector<PolyZ> denominators; // the cleared cyclotomic product per n
    std::vector<Cyc> Ln_at_zeta_m;   // values L_n(zeta_m)
};

// Level-m decomposition of F(t, q) (t-coefficients given mod q^window):
// log F = -sum_{n, (l,m)=1} L_n(q^l)/(l (1-q^{ml})) t^{nl}.
LevelMVerdict level_m_decompose(const std::function<QS(long)>& f, unsigned m,
                                long nmax, long window, long guard);

struct DworkVerdict {
    bool pass = true;
    std::string witness; // first failing coefficient, when pass = false
};

// Dwork quotient for the congruence sum F_{A,m,k}:
// log F(t^{p/m}, q^p) - p log F(t^{1/m}, q) at q = zeta_m + x must lie in
// (p/x) Z_(p)[t^{1/m}, zeta_m][[t, x]] coefficientwise.
DworkVerdict dwork_quotient_admissible(const NahmMatrix& A, unsigned m,
                                       const std::vector<unsigned>& k,
                                       long p, long ordT, long ordX);

// Compose a Laurent x-series with a positive-valuation substitution.
XC compose_laurent(const XC& f, const XC& sub);

// p-adic valuation of a cyclotomic coefficient (power-basis minimum).
long cyc_valuation(const Cyc& c, long p);

} // namespace habiro
