// Exact rationals (GMP mpq), always canonical: gcd(num,den)=1, den>0.
#pragma once

#include "habiro/int.hpp"
#include <gmp.h>
#include <string>
#include <iosfwd>

namespace habiro {

class Rat {
public:
    Rat() { mpq_init(v_); }
    Rat(long x) { mpq_init(v_); mpq_set_si(v_, x, 1); }
    Rat(int x) { mpq_init(v_); mpq_set_si(v_, x, 1); }
    Rat(const Int& x) { mpq_init(v_); mpq_set_z(v_, x.raw()); }
    Rat(const Int& num, const Int& den) {
        if (den.is_zero()) throw std::domain_error("Rat: zero denominator");
        mpq_init(v_);
        mpq_set_num(v_, num.raw());
        mpq_set_den(v_, den.raw());
        mpq_canonicalize(v_);
    }
    Rat(long num, long den) : Rat(Int(num), Int(den)) {}
    explicit Rat(const std::string& s) {
        mpq_init(v_);
        if (mpq_set_str(v_, s.c_str(), 10) != 0) {
            mpq_clear(v_);
            throw std::invalid_argument("Rat: bad string '" + s + "'");
        }
        mpq_canonicalize(v_);
    }
    Rat(const Rat& o) { mpq_init(v_); mpq_set(v_, o.v_); }
    Rat(Rat&& o) noexcept { mpq_init(v_); mpq_swap(v_, o.v_); }
    Rat& operator=(const Rat& o) { if (this != &o) mpq_set(v_, o.v_); return *this; }
    Rat& operator=(Rat&& o) noexcept { mpq_swap(v_, o.v_); return *this; }
    ~Rat() { mpq_clear(v_); }

    mpq_srcptr raw() const { return v_; }

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    bool is_one() const { return mpq_cmp_ui(v_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
    int sgn() const { return mpq_sgn(v_); }

    Int num() const { Int r; mpz_set(r.raw(), mpq_numref(v_)); return r; }
    Int den() const { Int r; mpz_set(r.raw(), mpq_denref(v_)); return r; }

    friend Rat operator+(const Rat& a, const Rat& b) { Rat r; mpq_add(r.v_, a.v_, b.v_); return r; }
    friend Rat operator-(const Rat& a, const Rat& b) { Rat r; mpq_sub(r.v_, a.v_, b.v_); return r; }
    friend Rat operator*(const Rat& a, const Rat& b) { Rat r; mpq_mul(r.v_, a.v_, b.v_); return r; }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        Rat r; mpq_div(r.v_, a.v_, b.v_); return r;
    }
    friend Rat operator-(const Rat& a) { Rat r; mpq_neg(r.v_, a.v_); return r; }
    Rat& operator+=(const Rat& b) { mpq_add(v_, v_, b.v_); return *this; }
    Rat& operator-=(const Rat& b) { mpq_sub(v_, v_, b.v_); return *this; }
    Rat& operator*=(const Rat& b) { mpq_mul(v_, v_, b.v_); return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.v_, b.v_) < 0; }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        Rat r; mpq_inv(r.v_, v_); return r;
    }
    static Rat pow(const Rat& a, long e) {
        if (e == 0) return Rat(1);
        Rat base = e > 0 ? a : a.inv();
        unsigned long n = e > 0 ? (unsigned long)e : (unsigned long)(-e);
        Rat r(1);
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    // p-adic valuation of a nonzero rational.
    long valuation(const Int& p) const {
        if (is_zero()) throw std::domain_error("Rat: valuation of zero");
        Int n = num(), d = den();
        if (n.divisible_by(p)) return Int::valuation(n, p);
        if (d.divisible_by(p)) return -Int::valuation(d, p);
        return 0;
    }

    std::string str() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

private:
    mpq_t v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& x);

inline bool is_zero(const Rat& x) { return x.is_zero(); }
inline bool is_zero(const Int& x) { return x.is_zero(); }

} // namespace habiro
