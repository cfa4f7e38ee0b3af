// Dense univariate polynomials over an exact coefficient ring.
#pragma once

#include "habiro/rat.hpp"
#include "habiro/series.hpp"
#include <vector>
#include <stdexcept>
#include <algorithm>

namespace habiro {

// Positive rational "content" used to rescale polynomial remainder sequences;
// any positive rational that scales with the element works.
inline Rat content_of(const Rat& x) {
    if (x.is_zero()) return Rat(0);
    return x.sgn() < 0 ? -x : x;
}
inline Rat rat_content_gcd(const Rat& a, const Rat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Rat(Int::gcd(a.num(), b.num()), Int::lcm(a.den(), b.den()));
}
template <class T>
Rat content_of_adl(const T& x) { return content_of(x); }

template <class C>
class Poly {
public:
    Poly() = default;
    Poly(long x) { if (x != 0) c_.emplace_back(x); }
    explicit Poly(std::vector<C> cs) : c_(std::move(cs)) { normalize(); }
    Poly(std::initializer_list<C> cs) : c_(cs) { normalize(); }
    static Poly monomial(const C& a, size_t k) {
        std::vector<C> v(k + 1, C(0));
        v[k] = a;
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(C(1), 1); }

    long degree() const { return (long)c_.size() - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<C>& coeffs() const { return c_; }
    C coeff(size_t k) const { return k < c_.size() ? c_[k] : C(0); }
    const C& lead() const {
        if (c_.empty()) throw std::domain_error("Poly: lead of zero");
        return c_.back();
    }
    void set_coeff(size_t k, const C& a) {
        if (k >= c_.size()) c_.resize(k + 1, C(0));
        c_[k] = a;
        normalize();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<C> r(a.c_.size(), C(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = -a.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero_adl(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const C& s, const Poly& a) {
        std::vector<C> r(a.c_.size(), C(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = s * a.c_[i];
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division; requires invertible leading coefficient of d.
    static void divmod(const Poly& n, const Poly& d, Poly& q, Poly& r) {
        if (d.is_zero()) throw std::domain_error("Poly: division by zero poly");
        r = n;
        q = Poly();
        C dl = d.lead();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            C f = r.lead() / dl;
            size_t shift = (size_t)(r.degree() - d.degree());
            std::vector<C> qc(q.c_);
            if (qc.size() < shift + 1) qc.resize(shift + 1, C(0));
            qc[shift] = qc[shift] + f;
            q = Poly(std::move(qc));
            std::vector<C> rc(r.c_);
            for (size_t i = 0; i < d.c_.size(); ++i)
                rc[i + shift] = rc[i + shift] - f * d.c_[i];
            rc.pop_back();
            r = Poly(std::move(rc));
        }
    }
    friend Poly operator%(const Poly& n, const Poly& d) {
        Poly q, r;
        divmod(n, d, q, r);
        return r;
    }
    friend Poly operator/(const Poly& n, const Poly& d) {
        Poly q, r;
        divmod(n, d, q, r);
        return q;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<C> r(c_.size() - 1, C(0));
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = C((long)i) * c_[i];
        return Poly(std::move(r));
    }

    template <class T>
    T eval(const T& x) const {
        T acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    // gcd over a field coefficient type, monic result. Each remainder is
    // rescaled by its rational content to keep coefficient heights bounded
    // (the naive Euclid blows up exponentially over Q-coefficient towers).
    static Poly gcd(Poly a, Poly b) {
        a.primitive_scale();
        b.primitive_scale();
        while (!b.is_zero()) {
            Poly r = a % b;
            r.primitive_scale();
            a = b;
            b = r;
        }
        if (a.is_zero()) return a;
        C inv = C(1) / a.lead();
        return inv * a;
    }

    void primitive_scale() {
        Rat c(0);
        for (auto& x : c_) {
            if (is_zero_adl(x)) continue;
            c = rat_content_gcd(c, content_of_adl(x));
        }
        if (c.is_zero() || c.is_one()) return;
        C inv = from_rat<C>(c.inv());
        for (auto& x : c_) x = inv * x;
    }

    void normalize() {
        while (!c_.empty() && is_zero_adl(c_.back())) c_.pop_back();
    }

private:
    std::vector<C> c_;
};

template <class C>
bool is_zero(const Poly<C>& p) { return p.is_zero(); }

template <class C>
Rat content_of(const Poly<C>& p) {
    Rat c(0);
    for (auto& x : p.coeffs()) {
        if (is_zero_adl(x)) continue;
        c = rat_content_gcd(c, content_of_adl(x));
    }
    return c;
}

template <class C>
Poly<C> make_from_rat(ring_tag<Poly<C>>, const Rat& r) {
    return Poly<C>({from_rat<C>(r)});
}

using PolyQ = Poly<Rat>;
using PolyZ = Poly<Int>;

inline PolyQ to_polyq(const PolyZ& p) {
    std::vector<Rat> c;
    c.reserve(p.coeffs().size());
    for (auto& x : p.coeffs()) c.emplace_back(x);
    return PolyQ(std::move(c));
}

// Exact resultant of two integer polynomials via the subresultant PRS.
Int resultant(const PolyZ& a, const PolyZ& b);

// n-th cyclotomic polynomial (integer coefficients, monic).
PolyZ cyclotomic_poly(unsigned n);

// Euler phi and simple factorization helpers.
unsigned long euler_phi(unsigned long n);
std::vector<std::pair<Int, unsigned>> factorize(Int n); // n > 0
bool is_probable_prime(const Int& n);

} // namespace habiro
