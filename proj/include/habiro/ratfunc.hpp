// Rational functions over an exact field F. Representations are NOT reduced
// automatically: gcd normalization over coefficient towers is exponentially
// expensive, so reduction is an explicit operation and equality tests
// cross-multiply.
#pragma once

#include "habiro/poly.hpp"

namespace habiro {

template <class F>
class RatFunc {
public:
    RatFunc() : num_(), den_({F(1)}) {}
    RatFunc(long x) : num_(x), den_({F(1)}) {}
    RatFunc(const F& x) : num_({x}), den_({F(1)}) {}
    explicit RatFunc(Poly<F> n) : num_(std::move(n)), den_({F(1)}) {}
    RatFunc(Poly<F> n, Poly<F> d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    }
    static RatFunc var() { return RatFunc(Poly<F>::x()); }

    const Poly<F>& num() const { return num_; }
    const Poly<F>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) { RatFunc r = a; r.num_ = -r.num_; return r; }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& b) { *this = *this + b; return *this; }
    RatFunc& operator-=(const RatFunc& b) { *this = *this - b; return *this; }
    RatFunc& operator*=(const RatFunc& b) { *this = *this * b; return *this; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    template <class T>
    T eval(const T& x) const {
        T n = num_.eval(x), d = den_.eval(x);
        return n / d;
    }

    // gcd-reduced, monic-denominator representative.
    RatFunc reduced() const {
        if (num_.is_zero()) return RatFunc();
        // monomial denominator c x^k: strip the common x-power, no gcd needed
        {
            long k = -1;
            for (long i = 0; i <= den_.degree(); ++i) {
                if (is_zero_adl(den_.coeff((size_t)i))) continue;
                if (k >= 0) { k = -2; break; }
                k = i;
            }
            if (k >= 0) {
                long v = 0;
                while (v <= num_.degree() && is_zero_adl(num_.coeff((size_t)v))) ++v;
                long strip = std::min(v, k);
                F cinv = F(1) / den_.coeff((size_t)k);
                std::vector<F> nc;
                for (long i = strip; i <= num_.degree(); ++i)
                    nc.push_back(cinv * num_.coeff((size_t)i));
                RatFunc r;
                r.num_ = Poly<F>(std::move(nc));
                r.den_ = Poly<F>::monomial(F(1), (size_t)(k - strip));
                return r;
            }
        }
        Poly<F> n = num_, d = den_;
        Poly<F> g = Poly<F>::gcd(n, d);
        if (g.degree() > 0) {
            n = n / g;
            d = d / g;
        }
        F lead = d.lead();
        if (!is_zero_adl(lead - F(1))) {
            F inv = F(1) / lead;
            n = inv * n;
            d = inv * d;
        }
        RatFunc r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

private:
    Poly<F> num_, den_;
};

template <class F>
bool is_zero(const RatFunc<F>& x) { return x.is_zero(); }

template <class F>
RatFunc<F> reduce_elem(const RatFunc<F>& x) {
    // skip tiny representations: gcd costs more than it saves
    if (x.den().degree() == 0 && x.num().degree() <= 8) return x;
    return x.reduced();
}

template <class F>
Rat content_of(const RatFunc<F>& x) {
    if (x.is_zero()) return Rat(0);
    Rat n = content_of(x.num()), d = content_of(x.den());
    if (d.is_zero()) return n;
    return n / d;
}

template <class F>
RatFunc<F> make_from_rat(ring_tag<RatFunc<F>>, const Rat& r) {
    return RatFunc<F>(from_rat<F>(r));
}

using RF = RatFunc<Rat>; // Q(z)

} // namespace habiro
