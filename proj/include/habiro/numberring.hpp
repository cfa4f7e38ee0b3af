// Number rings O_K[1/Delta] presented by a monic integer minimal polynomial.
#pragma once

#include "habiro/poly.hpp"
#include "habiro/series.hpp"
#include <memory>
#include <string>
#include <vector>

namespace habiro {

struct DeltaViolation : std::runtime_error {
    explicit DeltaViolation(const std::string& w) : std::runtime_error(w) {}
};
struct NotInvertible : std::runtime_error {
    explicit NotInvertible(const std::string& w) : std::runtime_error(w) {}
};

struct NFSpec {
    PolyZ minpoly;       // monic, irreducible over Q
    Int delta{1};        // inverted primes (positive)
    std::string label;

    unsigned degree() const { return (unsigned)minpoly.degree(); }

    // Monic + irreducibility sanity checks (probabilistic over several primes).
    void validate() const;

    static std::shared_ptr<const NFSpec> make(PolyZ minpoly, Int delta, std::string label);
    // The trivial spec Q (minpoly x).
    static std::shared_ptr<const NFSpec> rational();
};

class NFElem {
public:
    NFElem() : c_(1, Rat(0)) {}
    NFElem(long x) : c_(1, Rat(x)) {}
    NFElem(const Rat& x) : c_(1, x) {}
    NFElem(std::shared_ptr<const NFSpec> spec, std::vector<Rat> coords);

    static NFElem gen(std::shared_ptr<const NFSpec> spec); // the root alpha

    const std::shared_ptr<const NFSpec>& spec() const { return spec_; }
    const std::vector<Rat>& coords() const { return c_; }
    Rat coord(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

    bool is_zero() const {
        for (auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i) if (!c_[i].is_zero()) return false;
        return true;
    }
    Rat rational_part() const;

    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a);
    friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }
    NFElem& operator+=(const NFElem& b) { *this = *this + b; return *this; }
    NFElem& operator-=(const NFElem& b) { *this = *this - b; return *this; }
    NFElem& operator*=(const NFElem& b) { *this = *this * b; return *this; }
    friend bool operator==(const NFElem& a, const NFElem& b);
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

    // Field inverse over Q(alpha).
    NFElem inverse() const;

    // Norm and trace down to Q.
    Rat norm() const;
    Rat trace() const;

    // True if all coordinate denominators are supported on spec's Delta.
    bool delta_integral() const;
    // Throws DeltaViolation when a denominator prime does not divide Delta.
    const NFElem& require_delta_integral(const char* where) const;
    // Ring inverse in O_K[1/Delta]; NotInvertible when absent there.
    NFElem checked_inverse() const;

    std::string str() const;

private:
    std::shared_ptr<const NFSpec> spec_; // null = plain Q
    std::vector<Rat> c_;
    void promote(const std::shared_ptr<const NFSpec>& s);
};

inline bool is_zero(const NFElem& x) { return x.is_zero(); }
inline Rat content_of(const NFElem& x) {
    Rat c(0);
    for (auto& v : x.coords()) {
        if (v.is_zero()) continue;
        c = rat_content_gcd(c, content_of(v));
    }
    return c;
}
inline NFElem make_from_rat(ring_tag<NFElem>, const Rat& r) { return NFElem(r); }

// Norm of the element represented by integer-cleared polynomial P(alpha)
// via resultant(minpoly, P) -- the independent route used as an oracle.
Rat norm_via_resultant(const NFSpec& spec, const std::vector<Rat>& coords);

std::ostream& operator<<(std::ostream& os, const NFElem& x);

} // namespace habiro
