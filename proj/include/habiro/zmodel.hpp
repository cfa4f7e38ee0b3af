// Rank-one algebraic model: the function field Q(z) with the Nahm relation
// t = (1-z)(-1)^A z^{-A} eliminating t. Exact home for the (t, z)-polynomial
// identities satisfied by the ratio and symmetrization coefficients.
#pragma once

#include "habiro/ratfunc.hpp"
#include <map>

namespace habiro {

struct ZModel {
    long A = 0;
    RF z;     // the transcendental z
    RF t;     // t as a rational function of z

    // t d/dt acting through dz/dt.
    RF t_ddt(const RF& f) const;
};

ZModel z_model(long A);

// Evaluate sum_{j,i} c[j][i] z^j t^i in Q(z).
RF tz_polynomial(const ZModel& M, const std::vector<std::vector<Rat>>& c);

// G(t, 1+x) = sum_{k} g_k x^k from the Riccati equation
// 1 - G + (-q)^A t G(t) G(qt) ... G(q^{A-1} t) = 0, for A >= 1; g_0 = z.
std::vector<RF> ratio_g_alg(long A, unsigned ordX);

} // namespace habiro
