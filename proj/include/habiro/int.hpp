// Arbitrary-precision integers on top of GMP, value semantics.
#pragma once

#include <gmp.h>
#include <cstdint>
#include <string>
#include <iosfwd>
#include <stdexcept>
#include <utility>

namespace habiro {

class Int {
public:
    Int() { mpz_init(v_); }
    Int(long x) { mpz_init_set_si(v_, x); }
    Int(int x) { mpz_init_set_si(v_, x); }
    Int(unsigned long x) { mpz_init_set_ui(v_, x); }
    explicit Int(const std::string& s) {
        if (mpz_init_set_str(v_, s.c_str(), 10) != 0) {
            mpz_clear(v_);
            throw std::invalid_argument("Int: bad decimal string '" + s + "'");
        }
    }
    Int(const Int& o) { mpz_init_set(v_, o.v_); }
    Int(Int&& o) noexcept { mpz_init(v_); mpz_swap(v_, o.v_); }
    Int& operator=(const Int& o) { if (this != &o) mpz_set(v_, o.v_); return *this; }
    Int& operator=(Int&& o) noexcept { mpz_swap(v_, o.v_); return *this; }
    ~Int() { mpz_clear(v_); }

    mpz_srcptr raw() const { return v_; }
    mpz_ptr raw() { return v_; }

    bool is_zero() const { return mpz_sgn(v_) == 0; }
    bool is_one() const { return mpz_cmp_ui(v_, 1) == 0; }
    int sgn() const { return mpz_sgn(v_); }
    bool fits_long() const { return mpz_fits_slong_p(v_) != 0; }
    long to_long() const {
        if (!fits_long()) throw std::overflow_error("Int: does not fit long");
        return mpz_get_si(v_);
    }

    friend Int operator+(const Int& a, const Int& b) { Int r; mpz_add(r.v_, a.v_, b.v_); return r; }
    friend Int operator-(const Int& a, const Int& b) { Int r; mpz_sub(r.v_, a.v_, b.v_); return r; }
    friend Int operator*(const Int& a, const Int& b) { Int r; mpz_mul(r.v_, a.v_, b.v_); return r; }
    friend Int operator-(const Int& a) { Int r; mpz_neg(r.v_, a.v_); return r; }
    Int& operator+=(const Int& b) { mpz_add(v_, v_, b.v_); return *this; }
    Int& operator-=(const Int& b) { mpz_sub(v_, v_, b.v_); return *this; }
    Int& operator*=(const Int& b) { mpz_mul(v_, v_, b.v_); return *this; }

    // Truncating quotient; use divexact when divisibility is known.
    friend Int operator/(const Int& a, const Int& b) {
        if (b.is_zero()) throw std::domain_error("Int: division by zero");
        Int r; mpz_tdiv_q(r.v_, a.v_, b.v_); return r;
    }
    friend Int operator%(const Int& a, const Int& b) {
        if (b.is_zero()) throw std::domain_error("Int: division by zero");
        Int r; mpz_tdiv_r(r.v_, a.v_, b.v_); return r;
    }

    friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) >= 0; }

    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, out.size() + 1);
        return out;
    }

    static Int gcd(const Int& a, const Int& b) { Int r; mpz_gcd(r.v_, a.v_, b.v_); return r; }
    static Int lcm(const Int& a, const Int& b) { Int r; mpz_lcm(r.v_, a.v_, b.v_); return r; }
    static Int divexact(const Int& a, const Int& b) {
        if (b.is_zero()) throw std::domain_error("Int: division by zero");
        Int r; mpz_divexact(r.v_, a.v_, b.v_); return r;
    }
    static Int pow(const Int& a, unsigned long e) { Int r; mpz_pow_ui(r.v_, a.v_, e); return r; }
    static Int abs(const Int& a) { Int r; mpz_abs(r.v_, a.v_); return r; }
    static Int factorial(unsigned long n) { Int r; mpz_fac_ui(r.v_, n); return r; }
    static Int binomial(const Int& n, unsigned long k) {
        Int r; mpz_bin_ui(r.v_, n.v_, k); return r;
    }

    bool divisible_by(const Int& b) const { return mpz_divisible_p(v_, b.v_) != 0; }
    // p-adic valuation; a must be nonzero.
    static long valuation(Int a, const Int& p) {
        if (a.is_zero()) throw std::domain_error("Int: valuation of zero");
        long v = 0;
        while (a.divisible_by(p)) { a = divexact(a, p); ++v; }
        return v;
    }

    size_t hash() const {
        size_t h = 1469598103934665603ull;
        h ^= (size_t)mpz_get_ui(v_); h *= 1099511628211ull;
        h ^= (size_t)mpz_sgn(v_);
        return h;
    }

private:
    mpz_t v_;
};

std::ostream& operator<<(std::ostream& os, const Int& x);

} // namespace habiro
