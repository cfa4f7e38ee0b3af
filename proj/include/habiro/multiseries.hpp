// Multivariate truncated series with exponents in (1/denom) * Z^N (negative
// exponents allowed for Laurent-type intermediates), sparse storage keyed by
// scaled exponent vectors, truncated by total degree.
#pragma once

#include "habiro/series.hpp"
#include <map>
#include <vector>

namespace habiro {

template <class C>
class MultiSeries {
public:
    using Expo = std::vector<int>; // scaled exponents (units of 1/denom)

    MultiSeries() : nvars_(1), denom_(1), trunc_(kInf) {}
    MultiSeries(long x) : nvars_(1), denom_(1), trunc_(kInf) {
        if (x != 0) terms_[Expo(1, 0)] = C(x);
    }
    MultiSeries(unsigned nvars, unsigned denom, long trunc)
        : nvars_(nvars), denom_(denom), trunc_(trunc) {}

    static MultiSeries constant(const C& c, unsigned nvars, unsigned denom, long trunc) {
        MultiSeries r(nvars, denom, trunc);
        if (!is_zero_adl(c) && trunc > 0) r.terms_[Expo(nvars, 0)] = c;
        return r;
    }

    unsigned nvars() const { return nvars_; }
    unsigned denom() const { return denom_; }
    long trunc() const { return trunc_; } // scaled total-degree bound (exclusive)
    const std::map<Expo, C>& terms() const { return terms_; }

    bool is_zero() const {
        for (auto& [e, c] : terms_) if (!is_zero_adl(c)) return false;
        return true;
    }

    long valuation() const { // min scaled total degree of a nonzero term
        long v = trunc_;
        for (auto& [e, c] : terms_) {
            if (is_zero_adl(c)) continue;
            long d = 0;
            for (int x : e) d += x;
            v = std::min(v, d);
        }
        return v;
    }

    C coeff(const Expo& e) const {
        long d = 0;
        for (int x : e) d += x;
        if (d >= trunc_) throw std::out_of_range("MultiSeries: beyond truncation");
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0) : it->second;
    }

    void add_term(const Expo& e, const C& c) {
        if (e.size() != nvars_) throw std::invalid_argument("MultiSeries: arity mismatch");
        long d = 0;
        for (int x : e) d += x;
        if (d >= trunc_) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!is_zero_adl(c)) terms_[e] = c;
        } else {
            it->second = it->second + c;
            if (is_zero_adl(it->second)) terms_.erase(it);
        }
    }

    MultiSeries truncated(long t) const {
        MultiSeries r(nvars_, denom_, std::min(t, trunc_));
        for (auto& [e, c] : terms_) {
            long d = 0;
            for (int x : e) d += x;
            if (d < r.trunc_) r.terms_[e] = c;
        }
        return r;
    }

    friend MultiSeries operator+(const MultiSeries& a, const MultiSeries& b) {
        if (a.nvars_ != b.nvars_ || a.denom_ != b.denom_) {
            if (a.is_scalar_like()) return a.promoted(b.nvars_, b.denom_) + b;
            if (b.is_scalar_like()) return a + b.promoted(a.nvars_, a.denom_);
        }
        a.check_compat(b);
        MultiSeries r(a.nvars_, a.denom_, std::min(a.trunc_, b.trunc_));
        r.terms_ = a.truncated(r.trunc_).terms_;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiSeries operator-(const MultiSeries& a) {
        MultiSeries r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiSeries operator-(const MultiSeries& a, const MultiSeries& b) { return a + (-b); }
    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
        if (a.nvars_ != b.nvars_ || a.denom_ != b.denom_) {
            if (a.is_scalar_like()) return a.promoted(b.nvars_, b.denom_) * b;
            if (b.is_scalar_like()) return a * b.promoted(a.nvars_, a.denom_);
        }
        a.check_compat(b);
        long t = std::min(sat_add(a.trunc_, b.valuation()), sat_add(b.trunc_, a.valuation()));
        MultiSeries r(a.nvars_, a.denom_, t);
        for (auto& [ea, ca] : a.terms_) {
            if (is_zero_adl(ca)) continue;
            long da = 0;
            for (int x : ea) da += x;
            for (auto& [eb, cb] : b.terms_) {
                long d = da;
                for (int x : eb) d += x;
                if (d >= t) continue;
                Expo e(a.nvars_);
                for (unsigned i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend MultiSeries operator*(const C& s, const MultiSeries& a) {
        MultiSeries r = a;
        for (auto& [e, c] : r.terms_) c = s * c;
        return r;
    }
    MultiSeries& operator+=(const MultiSeries& b) { *this = *this + b; return *this; }
    MultiSeries& operator*=(const MultiSeries& b) { *this = *this * b; return *this; }
    MultiSeries& operator-=(const MultiSeries& b) { *this = *this - b; return *this; }

    friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
        return (a - b).is_zero();
    }

    // Inverse of a series with invertible lowest (constant) term.
    MultiSeries inverse() const {
        auto it = terms_.find(Expo(nvars_, 0));
        if (it == terms_.end() || is_zero_adl(it->second))
            throw std::domain_error("MultiSeries: inverse needs invertible constant term");
        C c0inv = C(1) / it->second;
        MultiSeries u = c0inv * *this; // 1 + v, val(v) >= 1
        MultiSeries v = u - constant(C(1), nvars_, denom_, trunc_);
        MultiSeries acc = constant(C(1), nvars_, denom_, trunc_);
        MultiSeries p = constant(C(1), nvars_, denom_, trunc_);
        long vv = std::max<long>(1, v.valuation());
        for (long k = 1; k * vv < trunc_; ++k) {
            p = p * v;
            if (p.is_zero()) break;
            acc = (k % 2) ? acc - p : acc + p;
        }
        return c0inv * acc;
    }
    friend MultiSeries operator/(const MultiSeries& a, const MultiSeries& b) {
        return a * b.inverse();
    }

    std::string to_string() const; // defined where C has a printer

private:
    unsigned nvars_;
    unsigned denom_;
    long trunc_;
    std::map<Expo, C> terms_;

    void check_compat(const MultiSeries& b) const {
        if (nvars_ != b.nvars_ || denom_ != b.denom_)
            throw std::invalid_argument("MultiSeries: incompatible arity or denominator");
    }

public:
    // A context-free scalar: every stored exponent vector is zero.
    bool is_scalar_like() const {
        for (auto& [e, c] : terms_)
            for (int x : e)
                if (x) return false;
        return true;
    }
    MultiSeries promoted(unsigned nvars, unsigned denom) const {
        if (nvars_ == nvars && denom_ == denom) return *this;
        if (!is_scalar_like())
            throw std::invalid_argument("MultiSeries: cannot promote non-scalar");
        MultiSeries r(nvars, denom, trunc_);
        auto it = terms_.find(Expo(nvars_, 0));
        if (it != terms_.end()) r.terms_[Expo(nvars, 0)] = it->second;
        return r;
    }
};

template <class C>
bool is_zero(const MultiSeries<C>& s) { return s.is_zero(); }

template <class C>
MultiSeries<C> make_from_rat(ring_tag<MultiSeries<C>>, const Rat& r) {
    MultiSeries<C> out;
    return out + MultiSeries<C>::constant(from_rat<C>(r), 1, 1, kInf);
}

// log of 1 + (valuation >= 1).
template <class C>
MultiSeries<C> mseries_log(const MultiSeries<C>& f) {
    MultiSeries<C> one = MultiSeries<C>::constant(C(1), f.nvars(), f.denom(), f.trunc());
    MultiSeries<C> v = f - one;
    if (!v.is_zero() && v.valuation() < 1)
        throw std::domain_error("mseries_log: needs constant term 1");
    MultiSeries<C> acc(f.nvars(), f.denom(), f.trunc());
    MultiSeries<C> p = one;
    long vv = std::max<long>(1, v.valuation());
    for (long k = 1; k * vv < f.trunc(); ++k) {
        p = p * v;
        if (p.is_zero()) break;
        acc = acc + from_rat<C>(Rat((k % 2) ? 1 : -1, k)) * p;
    }
    return acc;
}

// exp of valuation >= 1.
template <class C>
MultiSeries<C> mseries_exp(const MultiSeries<C>& f) {
    if (!f.is_zero() && f.valuation() < 1)
        throw std::domain_error("mseries_exp: needs valuation >= 1");
    MultiSeries<C> acc = MultiSeries<C>::constant(C(1), f.nvars(), f.denom(), f.trunc());
    MultiSeries<C> p = acc;
    long vv = std::max<long>(1, f.valuation());
    for (long k = 1; k * vv < f.trunc(); ++k) {
        p = from_rat<C>(Rat(1, k)) * (p * f);
        if (p.is_zero()) break;
        acc = acc + p;
    }
    return acc;
}

// f^r for rational r, f = 1 + (valuation >= 1).
template <class C>
MultiSeries<C> mseries_binpow(const MultiSeries<C>& f, const Rat& r) {
    MultiSeries<C> one = MultiSeries<C>::constant(C(1), f.nvars(), f.denom(), f.trunc());
    MultiSeries<C> v = f - one;
    if (!v.is_zero() && v.valuation() < 1)
        throw std::domain_error("mseries_binpow: base must be 1 + higher order");
    MultiSeries<C> acc = one;
    MultiSeries<C> p = one;
    Rat coef(1);
    long vv = std::max<long>(1, v.valuation());
    for (long k = 1; k * vv < f.trunc(); ++k) {
        coef = coef * (r - Rat(k - 1)) / Rat(k);
        p = p * v;
        if (p.is_zero()) break;
        acc = acc + from_rat<C>(coef) * p;
    }
    return acc;
}

template <class C>
MultiSeries<C> mseries_pow(const MultiSeries<C>& f, long e) {
    if (e == 0)
        return MultiSeries<C>::constant(C(1), f.nvars(), f.denom(), f.trunc());
    MultiSeries<C> base = e > 0 ? f : f.inverse();
    unsigned long k = e > 0 ? (unsigned long)e : (unsigned long)(-e);
    MultiSeries<C> acc = MultiSeries<C>::constant(C(1), f.nvars(), f.denom(), f.trunc());
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

} // namespace habiro
