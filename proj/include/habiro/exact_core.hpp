// Bernoulli numbers/polynomials and q-Pochhammer products.
#pragma once

#include "habiro/poly.hpp"
#include "habiro/series.hpp"

namespace habiro {

// B_k with B_1 = -1/2 (generating series x e^{xy}/(e^x - 1) at y = 0).
Rat bernoulli(unsigned k);

// B_k(y) as a polynomial in y.
PolyQ bernoulli_poly(unsigned k);

// (q;q)_n = prod_{j=1}^{n} (1 - q^j) for a ring element q.
template <class C>
C q_pochhammer(unsigned n, const C& q) {
    C acc(1);
    C qj(1);
    for (unsigned j = 1; j <= n; ++j) {
        qj = qj * q;
        acc = acc * (C(1) - qj);
    }
    return acc;
}

// (x;q)_n = prod_{j=0}^{n-1} (1 - q^j x).
template <class C>
C q_pochhammer(unsigned n, const C& x, const C& q) {
    C acc(1);
    C qj(1);
    for (unsigned j = 0; j < n; ++j) {
        acc = acc * (C(1) - qj * x);
        qj = qj * q;
    }
    return acc;
}

} // namespace habiro
