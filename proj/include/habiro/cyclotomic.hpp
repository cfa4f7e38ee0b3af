// Exact arithmetic in Q(zeta_m) on the power basis 1, z, ..., z^{phi(m)-1},
// reduced mod the m-th cyclotomic polynomial. Elements at different levels
// combine by lifting to the lcm level along a fixed compatible system of
// roots: zeta_{mm'} = zeta_m zeta_{m'} for (m,m')=1 and zeta_{p^r}^p = zeta_{p^{r-1}}.
#pragma once

#include "habiro/poly.hpp"
#include "habiro/series.hpp"
#include <memory>
#include <string>

namespace habiro {

struct CycCtx {
    unsigned m = 1;
    unsigned long phi = 1;
    PolyQ modulus;                       // Phi_m over Q (monic)
    std::vector<std::vector<Rat>> xpow;  // x^{phi+k} mod Phi_m, k = 0..phi-2
};

const CycCtx& cyc_ctx(unsigned m);

// Exponent e with zeta_d = zeta_ambient^e in the fixed compatible system
// (requires d | ambient).
unsigned long dist_root_exponent(unsigned ambient, unsigned d);

class Cyc {
public:
    Cyc() : m_(1), c_(1, Rat(0)) {}
    Cyc(long x) : m_(1), c_(1, Rat(x)) {}
    Cyc(const Rat& x) : m_(1), c_(1, x) {}
    Cyc(unsigned m, std::vector<Rat> coords);

    static Cyc zeta(unsigned m) { return zeta_pow(m, 1); }
    static Cyc zeta_pow(unsigned m, long e);

    unsigned level() const { return m_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const;
    Rat rational_part() const; // requires is_rational()

    Cyc lifted(unsigned M) const; // m_ | M

    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a);
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }
    Cyc& operator+=(const Cyc& b) { *this = *this + b; return *this; }
    Cyc& operator-=(const Cyc& b) { *this = *this - b; return *this; }
    Cyc& operator*=(const Cyc& b) { *this = *this * b; return *this; }
    friend bool operator==(const Cyc& a, const Cyc& b);
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    Cyc inverse() const;

    // Galois action zeta_m -> zeta_m^g, gcd(g, m) = 1.
    Cyc galois(long g) const;

    // Norm down to Q (product of Galois conjugates, via multiplication matrix).
    Rat norm() const;

    // Reduce the level to the smallest cyclotomic field containing the value.
    Cyc compressed() const;

    std::string str() const;

private:
    unsigned m_;
    std::vector<Rat> c_; // length phi(m_)
};

inline bool is_zero(const Cyc& x) { return x.is_zero(); }
inline Rat content_of(const Cyc& x) {
    Rat c(0);
    for (auto& v : x.coords()) {
        if (v.is_zero()) continue;
        c = rat_content_gcd(c, content_of(v));
    }
    return c;
}
inline Cyc make_from_rat(ring_tag<Cyc>, const Rat& r) { return Cyc(r); }

std::ostream& operator<<(std::ostream& os, const Cyc& x);

} // namespace habiro
