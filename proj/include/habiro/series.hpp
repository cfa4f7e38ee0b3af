// Truncated Laurent series: finitely many coefficients c_low..c_{trunc-1}.
// trunc is exclusive and tracked through all arithmetic; kInf marks exact
// (polynomial) data. Mixing truncations takes the minimum silently.
#pragma once

#include "habiro/rat.hpp"
#include <vector>
#include <climits>
#include <stdexcept>
#include <algorithm>

namespace habiro {

constexpr long kInf = LONG_MAX / 4;

inline long sat_add(long a, long b) {
    if (a >= kInf || b >= kInf) return kInf;
    long s = a + b;
    return s >= kInf ? kInf : s;
}

// Exact conversion Rat -> C for every coefficient ring C in the library.
template <class C> struct ring_tag {};
inline Rat make_from_rat(ring_tag<Rat>, const Rat& r) { return r; }
template <class C>
C from_rat(const Rat& r) { return make_from_rat(ring_tag<C>{}, r); }

// Unqualified-ADL zero test so coefficient types declared later still resolve.
template <class C>
bool is_zero_adl(const C& c) { return is_zero(c); }

// Optional canonicalization hook (identity by default); lazily-normalized
// types such as RatFunc override it to apply gcd reduction at checkpoints.
template <class C>
C reduce_elem(const C& c) { return c; }
template <class C>
C reduce_adl(const C& c) { return reduce_elem(c); }

template <class C>
class LSeries {
public:
    LSeries() : low_(0), trunc_(kInf) {}
    LSeries(long c) : low_(0), trunc_(kInf) {
        if (c != 0) coeffs_.emplace_back(c);
    }
    explicit LSeries(const C& c) : low_(0), trunc_(kInf) {
        if (!is_zero_adl(c)) coeffs_.push_back(c);
    }
    LSeries(long low, std::vector<C> coeffs, long trunc)
        : low_(low), coeffs_(std::move(coeffs)), trunc_(trunc) {
        if (trunc_ < kInf && (long)coeffs_.size() > trunc_ - low_)
            coeffs_.resize(std::max<long>(0, trunc_ - low_), C(0));
        strip();
    }
    static LSeries zero_to_order(long trunc) { return LSeries(0, {}, trunc); }
    static LSeries monomial(const C& c, long k) {
        std::vector<C> v{c};
        return LSeries(k, std::move(v), kInf);
    }
    // The series variable itself.
    static LSeries var() { return monomial(C(1), 1); }

    long low() const { return low_; }
    long trunc() const { return trunc_; }
    bool is_zero() const {
        for (auto& c : coeffs_) if (!is_zero_adl(c)) return false;
        return true;
    }
    bool known_order(long k) const { return k < trunc_; }
    // Highest stored exponent + 1.
    long high() const { return low_ + (long)coeffs_.size(); }

    C coeff(long k) const {
        if (k >= trunc_)
            throw std::out_of_range("LSeries: coefficient at/beyond truncation order");
        if (k < low_ || k >= high()) return C(0);
        return coeffs_[k - low_];
    }
    const std::vector<C>& stored() const { return coeffs_; }

    void set_coeff(long k, const C& c) {
        if (k >= trunc_) throw std::out_of_range("LSeries: set beyond truncation");
        if (coeffs_.empty()) { low_ = k; coeffs_.push_back(c); return; }
        if (k < low_) {
            coeffs_.insert(coeffs_.begin(), (size_t)(low_ - k), C(0));
            low_ = k;
        } else if (k >= high()) {
            coeffs_.resize((size_t)(k - low_ + 1), C(0));
        }
        coeffs_[k - low_] = c;
    }

    // Lowest exponent with a nonzero stored coefficient; trunc if none.
    long valuation() const {
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (!is_zero_adl(coeffs_[i])) return low_ + (long)i;
        return trunc_;
    }

    LSeries truncated(long t) const {
        LSeries r = *this;
        r.trunc_ = std::min(trunc_, t);
        if (r.trunc_ < kInf && (long)r.coeffs_.size() > r.trunc_ - r.low_)
            r.coeffs_.resize(std::max<long>(0, r.trunc_ - r.low_), C(0));
        r.strip();
        return r;
    }

    // Drop leading stored zero coefficients (raises low; separate from arithmetic).
    LSeries normalized() const {
        LSeries r = *this;
        size_t i = 0;
        while (i < r.coeffs_.size() && is_zero_adl(r.coeffs_[i])) ++i;
        r.coeffs_.erase(r.coeffs_.begin(), r.coeffs_.begin() + i);
        r.low_ += (long)i;
        if (r.coeffs_.empty()) r.low_ = 0;
        return r;
    }

    friend LSeries operator+(const LSeries& a, const LSeries& b) {
        long t = std::min(a.trunc_, b.trunc_);
        long lo = std::min(a.low_, b.low_);
        long hi = std::min(std::max(a.high(), b.high()), t);
        if (hi <= lo) return LSeries(0, {}, t);
        std::vector<C> r((size_t)(hi - lo), C(0));
        for (long k = lo; k < hi; ++k) {
            C v(0);
            if (k >= a.low_ && k < a.high()) v = v + a.coeffs_[k - a.low_];
            if (k >= b.low_ && k < b.high()) v = v + b.coeffs_[k - b.low_];
            r[k - lo] = v;
        }
        return LSeries(lo, std::move(r), t);
    }
    friend LSeries operator-(const LSeries& a, const LSeries& b) { return a + (-b); }
    friend LSeries operator-(const LSeries& a) {
        LSeries r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend LSeries operator*(const LSeries& a, const LSeries& b) {
        long t = std::min(sat_add(a.trunc_, b.low_), sat_add(b.trunc_, a.low_));
        if (a.is_zero() || b.is_zero()) return LSeries(0, {}, t);
        long lo = a.low_ + b.low_;
        long hi = std::min(sat_add(a.high(), b.high() - 1), t);
        if (hi <= lo) return LSeries(0, {}, t);
        std::vector<C> r((size_t)(hi - lo), C(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (is_zero_adl(a.coeffs_[i])) continue;
            long ka = a.low_ + (long)i;
            for (size_t j = 0; j < b.coeffs_.size(); ++j) {
                long k = ka + b.low_ + (long)j;
                if (k >= hi) break;
                if (is_zero_adl(b.coeffs_[j])) continue;
                r[k - lo] = r[k - lo] + a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return LSeries(lo, std::move(r), t);
    }
    friend LSeries operator*(const C& s, const LSeries& a) {
        LSeries r = a;
        for (auto& c : r.coeffs_) c = s * c;
        r.strip();
        return r;
    }
    LSeries& operator+=(const LSeries& b) { *this = *this + b; return *this; }
    LSeries& operator-=(const LSeries& b) { *this = *this - b; return *this; }
    LSeries& operator*=(const LSeries& b) { *this = *this * b; return *this; }

    friend bool operator==(const LSeries& a, const LSeries& b) {
        LSeries x = a.normalized(), y = b.normalized();
        return x.low_ == y.low_ && x.trunc_ == y.trunc_ && x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const LSeries& a, const LSeries& b) { return !(a == b); }

    // Multiplicative inverse; the lowest nonzero coefficient must be invertible.
    LSeries inverse() const {
        LSeries f = normalized();
        if (f.coeffs_.empty())
            throw std::domain_error("LSeries: inverse of zero series");
        long n = (f.trunc_ >= kInf) ? (long)f.coeffs_.size() : f.trunc_ - f.low_;
        C l0inv = C(1) / f.coeffs_[0];
        std::vector<C> r((size_t)n, C(0));
        r[0] = l0inv;
        for (long k = 1; k < n; ++k) {
            C acc(0);
            long jmax = std::min<long>(k, (long)f.coeffs_.size() - 1);
            for (long j = 1; j <= jmax; ++j) {
                if (is_zero_adl(f.coeffs_[j])) continue;
                acc = acc + f.coeffs_[j] * r[k - j];
            }
            r[k] = -(l0inv * acc);
        }
        long rtrunc = (f.trunc_ >= kInf) ? kInf : f.trunc_ - 2 * f.low_;
        return LSeries(-f.low_, std::move(r), rtrunc);
    }
    friend LSeries operator/(const LSeries& a, const LSeries& b) { return a * b.inverse(); }

    // Formal derivative d/dx.
    LSeries derivative() const {
        std::vector<C> c(coeffs_.size(), C(0));
        for (size_t i = 0; i < coeffs_.size(); ++i)
            c[i] = C(low_ + (long)i) * coeffs_[i];
        return LSeries(low_ - 1, std::move(c), trunc_ >= kInf ? kInf : trunc_ - 1);
    }

    // Substitute x -> g, requiring low >= 0 and val(g) >= 1.
    LSeries compose(const LSeries& g) const {
        if (low_ < 0) throw std::domain_error("LSeries: compose needs low >= 0");
        if (!g.is_zero() && g.valuation() < 1)
            throw std::domain_error("LSeries: compose needs val(g) >= 1");
        long t = std::min(trunc_, g.trunc_);
        LSeries acc = LSeries(0).truncated(t);
        LSeries p = LSeries(1).truncated(t);
        long kmax = std::min(trunc_, high());
        for (long k = 0; k < kmax; ++k) {
            C ck = (k >= low_ && k < high()) ? coeffs_[k - low_] : C(0);
            if (!is_zero_adl(ck)) acc = acc + ck * p;
            if (k + 1 < kmax) {
                p = (p * g).truncated(t);
                if (p.is_zero() && p.trunc_ >= t) break;
            }
        }
        return acc.truncated(t);
    }

    void strip() {
        while (!coeffs_.empty() && is_zero_adl(coeffs_.back())) coeffs_.pop_back();
        if (coeffs_.empty() && low_ != 0) low_ = 0;
    }

private:
    long low_;
    std::vector<C> coeffs_;
    long trunc_;
};

template <class C>
bool is_zero(const LSeries<C>& s) { return s.is_zero(); }

template <class C>
LSeries<C> make_from_rat(ring_tag<LSeries<C>>, const Rat& r) {
    return LSeries<C>(from_rat<C>(r));
}

template <class C>
LSeries<C> scalar_mul(const Rat& s, const LSeries<C>& a) {
    return from_rat<C>(s) * a;
}

// exp of a series with zero constant term and low >= 1 (or exact zero).
// Solves y' = f' y with y(0)=1; needs rational scalars in C.
template <class C>
LSeries<C> series_exp(const LSeries<C>& f) {
    if (f.is_zero()) {
        LSeries<C> one(1);
        return f.trunc() >= kInf ? one : one.truncated(f.trunc());
    }
    if (f.valuation() < 1)
        throw std::domain_error("series_exp: needs valuation >= 1");
    long n = f.trunc() >= kInf ? f.high() : f.trunc();
    std::vector<C> y((size_t)n, C(0));
    y[0] = C(1);
    for (long k = 1; k < n; ++k) {
        C acc(0);
        for (long j = 1; j <= k; ++j) {
            if (j >= f.high()) break;
            C fj = (j >= f.low()) ? f.coeff(j) : C(0);
            if (is_zero_adl(fj)) continue;
            acc = acc + from_rat<C>(Rat(j, k)) * fj * y[(size_t)(k - j)];
        }
        y[(size_t)k] = acc;
    }
    return LSeries<C>(0, std::move(y), f.trunc() >= kInf ? n : f.trunc());
}

// log of a series with constant term 1: integral of f'/f.
template <class C>
LSeries<C> series_log(const LSeries<C>& f) {
    if (f.low() < 0 || f.valuation() != 0 || !is_zero_adl(f.coeff(0) - C(1)))
        throw std::domain_error("series_log: needs constant term 1");
    long n = f.trunc() >= kInf ? f.high() + 1 : f.trunc();
    LSeries<C> g = f.truncated(n);
    LSeries<C> lp = g.derivative() * g.inverse();
    std::vector<C> r((size_t)n, C(0));
    for (long k = 1; k < n; ++k) {
        if (!lp.known_order(k - 1)) break;
        r[(size_t)k] = from_rat<C>(Rat(1, k)) * lp.coeff(k - 1);
    }
    return LSeries<C>(0, std::move(r), f.trunc() >= kInf ? n : f.trunc());
}

// Integer power (negative allowed when invertible).
template <class C>
LSeries<C> series_pow(const LSeries<C>& f, long e) {
    if (e == 0) return LSeries<C>(1);
    LSeries<C> base = e > 0 ? f : f.inverse();
    unsigned long k = e > 0 ? (unsigned long)e : (unsigned long)(-e);
    LSeries<C> acc(1);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

// f^r for rational exponent r; f must be 1 + (valuation >= 1).
template <class C>
LSeries<C> binomial_pow(const LSeries<C>& f, const Rat& r) {
    LSeries<C> u = f - LSeries<C>(1);
    if (u.is_zero()) {
        LSeries<C> one(1);
        return u.trunc() >= kInf ? one : one.truncated(u.trunc());
    }
    if (u.valuation() < 1)
        throw std::domain_error("binomial_pow: base must be 1 + higher order");
    long v = u.valuation();
    long n = u.trunc() >= kInf ? u.high() + 1 : u.trunc();
    LSeries<C> acc = LSeries<C>(1).truncated(n);
    LSeries<C> p = LSeries<C>(1).truncated(n);
    Rat coef(1);
    for (long k = 1; k * v < n; ++k) {
        coef = coef * (r - Rat(k - 1)) / Rat(k);
        p = (p * u).truncated(n);
        if (p.is_zero()) break;
        acc = acc + scalar_mul(coef, p);
    }
    return acc;
}

} // namespace habiro
