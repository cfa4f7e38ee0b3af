#include "habiro/exact_core.hpp"

#include <iostream>
#include <mutex>
#include <vector>

namespace habiro {

std::ostream& operator<<(std::ostream& os, const Int& x) { return os << x.str(); }
std::ostream& operator<<(std::ostream& os, const Rat& x) { return os << x.str(); }

namespace {
std::vector<Rat> g_bern{Rat(1)};
std::mutex g_bern_mutex;
} // namespace

Rat bernoulli(unsigned k) {
    std::lock_guard<std::mutex> lock(g_bern_mutex);
    // recurrence: sum_{j=0}^{k} binom(k+1, j) B_j = 0 for k >= 1
    while (g_bern.size() <= k) {
        unsigned n = (unsigned)g_bern.size();
        Rat acc(0);
        for (unsigned j = 0; j < n; ++j)
            acc += Rat(Int::binomial(Int((long)n + 1), j)) * g_bern[j];
        g_bern.push_back(-acc / Rat(Int((long)n + 1)));
    }
    return g_bern[k];
}

PolyQ bernoulli_poly(unsigned k) {
    // B_k(y) = sum_j binom(k, j) B_{k-j} y^j
    std::vector<Rat> c(k + 1, Rat(0));
    for (unsigned j = 0; j <= k; ++j)
        c[j] = Rat(Int::binomial(Int((long)k), j)) * bernoulli(k - j);
    return PolyQ(std::move(c));
}

Int resultant(const PolyZ& A, const PolyZ& B) {
    // Euclidean recursion over Q with exact sign/leading-power bookkeeping.
    PolyQ f = to_polyq(A), g = to_polyq(B);
    if (f.is_zero() || g.is_zero()) return Int(0);
    Rat acc(1);
    bool neg = false;
    while (g.degree() > 0) {
        PolyQ q, r;
        PolyQ::divmod(f, g, q, r);
        long df = f.degree(), dg = g.degree(), dr = r.is_zero() ? -1 : r.degree();
        if ((df & 1) && (dg & 1)) neg = !neg;
        if (r.is_zero()) return Int(0);
        acc *= Rat::pow(g.lead(), df - dr);
        f = g;
        g = r;
    }
    // g is a nonzero constant
    acc *= Rat::pow(g.coeff(0), f.degree());
    Rat res = neg ? -acc : acc;
    if (!res.is_integer())
        throw std::logic_error("resultant: non-integer result for integer input");
    return res.num();
}

} // namespace habiro
