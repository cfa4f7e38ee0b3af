// Finite-dimensional commutative Q-algebras built as iterated monic
// polynomial quotients (number fields, cyclotomic extensions, adjoined
// roots). Products of fields are allowed; inversion of units goes through
// the flattened multiplication matrix over Q, which is immune to zero
// divisors at intermediate levels.
#pragma once

#include "habiro/poly.hpp"
#include "habiro/series.hpp"
#include <memory>
#include <vector>

namespace habiro {

struct QACtx {
    struct Level {
        unsigned deg;
        // modulus x^deg + sum_{j<deg} m_j x^j with m_j flattened over the
        // previous levels (each of size dim of the context below).
        std::vector<std::vector<Rat>> lower_coeffs; // deg entries, index j
        unsigned subdim;                            // dim below this level
    };
    std::vector<Level> levels;
    unsigned dim = 1;
    std::string label;
};

class QA {
public:
    QA() : c_(1, Rat(0)) {}
    QA(long x) : c_(1, Rat(x)) {}
    QA(const Rat& x) : c_(1, x) {}
    QA(std::shared_ptr<const QACtx> ctx, std::vector<Rat> flat);

    static std::shared_ptr<QACtx> rational_ctx();
    // Extend a context by a monic modulus of degree deg whose coefficients
    // (below the top) are given as elements of the current algebra.
    static std::shared_ptr<QACtx> extend(const std::shared_ptr<const QACtx>& base,
                                         const std::vector<QA>& modulus_lower,
                                         const std::string& label);

    // Generator of the top level of ctx.
    static QA gen(const std::shared_ptr<const QACtx>& ctx);
    // Embed an element of a lower context into ctx (contexts must share the
    // tower prefix; embedding pads the flat vector).
    QA embedded(const std::shared_ptr<const QACtx>& ctx) const;

    const std::shared_ptr<const QACtx>& ctx() const { return ctx_; }
    const std::vector<Rat>& flat() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i) if (!c_[i].is_zero()) return false;
        return true;
    }
    Rat rational_part() const;

    friend QA operator+(const QA& a, const QA& b);
    friend QA operator-(const QA& a, const QA& b);
    friend QA operator*(const QA& a, const QA& b);
    friend QA operator-(const QA& a);
    friend QA operator/(const QA& a, const QA& b) { return a * b.inverse(); }
    QA& operator+=(const QA& b) { *this = *this + b; return *this; }
    QA& operator-=(const QA& b) { *this = *this - b; return *this; }
    QA& operator*=(const QA& b) { *this = *this * b; return *this; }
    friend bool operator==(const QA& a, const QA& b) { return (a - b).is_zero(); }
    friend bool operator!=(const QA& a, const QA& b) { return !(a == b); }

    // Inverse via the flattened multiplication matrix; throws NotInvertible
    // (std::domain_error) for zero divisors.
    QA inverse() const;

    std::string str() const;

private:
    std::shared_ptr<const QACtx> ctx_; // null = plain Q
    std::vector<Rat> c_;

    void promote(const std::shared_ptr<const QACtx>& ctx);
};

inline bool is_zero(const QA& x) { return x.is_zero(); }
inline Rat content_of(const QA& x) {
    Rat c(0);
    for (auto& v : x.flat()) {
        if (v.is_zero()) continue;
        c = rat_content_gcd(c, content_of(v));
    }
    return c;
}
inline QA make_from_rat(ring_tag<QA>, const Rat& r) { return QA(r); }

std::ostream& operator<<(std::ostream& os, const QA& x);

} // namespace habiro
