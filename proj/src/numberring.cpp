#include "habiro/numberring.hpp"

#include <sstream>

namespace habiro {

namespace {

// Factorization of a monic polynomial mod p into distinct-degree counts is
// overkill here; we only need "has no nontrivial factor," tested by checking
// gcd-based splitting for several small primes. A monic integer polynomial
// that is irreducible mod some prime (not dividing the discriminant-ish lead
// situations) is irreducible over Q.
std::vector<long> poly_mod(const PolyZ& f, long p) {
    std::vector<long> c((size_t)f.degree() + 1, 0);
    for (long i = 0; i <= f.degree(); ++i) {
        Int r = f.coeff((size_t)i) % Int(p);
        long v = r.to_long();
        if (v < 0) v += p;
        c[(size_t)i] = v;
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    return c;
}

long mulmod(long a, long b, long p) { return (long)((__int128)a * b % p); }

long inv_mod(long x, long p) {
    long t = 0, nt = 1, r = p, nr = ((x % p) + p) % p;
    while (nr) {
        long q = r / nr;
        long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return ((t % p) + p) % p;
}

long poly_deg(const std::vector<long>& v) {
    long d = (long)v.size() - 1;
    while (d >= 0 && v[(size_t)d] == 0) --d;
    return d;
}

// a * b reduced mod the monic polynomial m, over F_p.
std::vector<long> polymul_mod(const std::vector<long>& a, const std::vector<long>& b,
                              const std::vector<long>& m, long p) {
    size_t dm = m.size() - 1;
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    for (size_t k = r.size(); k-- > dm;) {
        long c = r[k];
        if (!c) continue;
        r[k] = 0;
        for (size_t j = 0; j < dm; ++j) {
            size_t idx = k - dm + j;
            r[idx] = ((r[idx] - mulmod(c, m[j], p)) % p + p) % p;
        }
    }
    r.resize(dm ? dm : 1, 0);
    return r;
}

std::vector<long> polygcd_mod(std::vector<long> a, std::vector<long> b, long p) {
    while (poly_deg(b) >= 0) {
        long db = poly_deg(b);
        long inv = inv_mod(b[(size_t)db], p);
        while (poly_deg(a) >= db) {
            long da = poly_deg(a);
            long f = mulmod(a[(size_t)da], inv, p);
            for (long j = 0; j <= db; ++j) {
                size_t idx = (size_t)(da - db + j);
                a[idx] = ((a[idx] - mulmod(f, b[(size_t)j], p)) % p + p) % p;
            }
        }
        std::swap(a, b);
    }
    long da = poly_deg(a);
    std::vector<long> g;
    if (da < 0) g.push_back(0);
    else g.assign(a.begin(), a.begin() + da + 1);
    return g;
}

// x^q mod f over F_p
std::vector<long> xpow_mod(const Int& e, const std::vector<long>& f, long p) {
    std::vector<long> base(2, 0);
    base[1] = 1;
    std::vector<long> acc(1, 1);
    mpz_t n;
    mpz_init_set(n, e.raw());
    size_t bits = mpz_sizeinbase(n, 2);
    for (size_t i = bits; i-- > 0;) {
        acc = polymul_mod(acc, acc, f, p);
        if (mpz_tstbit(n, (mp_bitcnt_t)i)) acc = polymul_mod(acc, base, f, p);
    }
    mpz_clear(n);
    return acc;
}

// Irreducibility of monic f over F_p (p not dividing lead): f irreducible iff
// x^{p^d} = x mod f and gcd(x^{p^{d/q}} - x, f) = 1 for prime divisors q of d.
bool irreducible_mod_p(const PolyZ& f, long p) {
    auto fm = poly_mod(f, p);
    long d = (long)fm.size() - 1;
    if (d <= 0) return false;
    if (fm[(size_t)d] == 0) return false; // p divides leading coeff
    Int pd = Int::pow(Int(p), (unsigned long)d);
    auto xp = xpow_mod(pd, fm, p);
    // xp must equal x
    std::vector<long> xonly(fm.size() - 1, 0);
    if (xonly.size() > 1) xonly[1] = 1;
    if (xp != xonly) return false;
    for (auto& [q, e] : factorize(Int(d))) {
        (void)e;
        long qq = q.to_long();
        Int pdq = Int::pow(Int(p), (unsigned long)(d / qq));
        auto xq = xpow_mod(pdq, fm, p);
        // xq - x
        std::vector<long> diff = xq;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        auto g = polygcd_mod(diff, fm, p);
        long dg = (long)g.size() - 1;
        while (dg >= 0 && g[(size_t)dg] == 0) --dg;
        if (dg > 0) return false;
    }
    return true;
}

} // namespace

void NFSpec::validate() const {
    if (minpoly.degree() < 1) throw std::invalid_argument("NFSpec: degree must be >= 1");
    if (!minpoly.lead().is_one()) throw std::invalid_argument("NFSpec: minpoly must be monic");
    if (delta.sgn() <= 0) throw std::invalid_argument("NFSpec: delta must be positive");
    if (minpoly.degree() == 1) return;
    // Probabilistic irreducibility: find one prime where f is irreducible mod p.
    static const long primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                  47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                                  101, 103, 107, 109, 113, 127, 131, 137, 139, 149};
    for (long p : primes)
        if (irreducible_mod_p(minpoly, p)) return;
    // Fall back: a reducible-looking polynomial is a hard error since all
    // subsequent ring arithmetic depends on irreducibility.
    throw std::invalid_argument("NFSpec: minimal polynomial failed the irreducibility test");
}

std::shared_ptr<const NFSpec> NFSpec::make(PolyZ minpoly, Int delta, std::string label) {
    auto s = std::make_shared<NFSpec>();
    s->minpoly = std::move(minpoly);
    s->delta = std::move(delta);
    s->label = std::move(label);
    s->validate();
    return s;
}

std::shared_ptr<const NFSpec> NFSpec::rational() {
    static std::shared_ptr<const NFSpec> q =
        NFSpec::make(PolyZ({Int(0), Int(1)}), Int(1), "Q");
    return q;
}

NFElem::NFElem(std::shared_ptr<const NFSpec> spec, std::vector<Rat> coords)
    : spec_(std::move(spec)), c_(std::move(coords)) {
    if (!spec_) throw std::invalid_argument("NFElem: null spec");
    c_.resize(spec_->degree(), Rat(0));
}

NFElem NFElem::gen(std::shared_ptr<const NFSpec> spec) {
    std::vector<Rat> c(spec->degree(), Rat(0));
    if (spec->degree() == 1) {
        // alpha = root of x + c0: alpha = -c0
        c[0] = -Rat(spec->minpoly.coeff(0));
    } else {
        c[1] = Rat(1);
    }
    return NFElem(std::move(spec), std::move(c));
}

Rat NFElem::rational_part() const {
    if (!is_rational()) throw std::domain_error("NFElem: not rational");
    return c_[0];
}

void NFElem::promote(const std::shared_ptr<const NFSpec>& s) {
    if (!spec_) {
        Rat v = c_.empty() ? Rat(0) : c_[0];
        spec_ = s;
        c_.assign(s->degree(), Rat(0));
        c_[0] = v;
        return;
    }
    if (s && s != spec_ && s->minpoly != spec_->minpoly)
        throw std::invalid_argument("NFElem: mismatched number ring specs");
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    NFElem x = a, y = b;
    if (x.spec_ == nullptr && y.spec_) x.promote(y.spec_);
    if (y.spec_ == nullptr && x.spec_) y.promote(x.spec_);
    if (x.spec_ && y.spec_ && x.spec_ != y.spec_ && x.spec_->minpoly != y.spec_->minpoly)
        throw std::invalid_argument("NFElem: mismatched specs");
    size_t n = std::max(x.c_.size(), y.c_.size());
    x.c_.resize(n, Rat(0));
    for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

NFElem operator-(const NFElem& a) {
    NFElem r = a;
    for (auto& x : r.c_) x = -x;
    return r;
}

NFElem operator-(const NFElem& a, const NFElem& b) { return a + (-b); }

NFElem operator*(const NFElem& a, const NFElem& b) {
    NFElem x = a, y = b;
    if (x.spec_ == nullptr && y.spec_) x.promote(y.spec_);
    if (y.spec_ == nullptr && x.spec_) y.promote(x.spec_);
    if (x.spec_ == nullptr) {
        // both rational
        NFElem r;
        r.c_[0] = x.c_[0] * y.c_[0];
        return r;
    }
    if (x.spec_ != y.spec_ && x.spec_->minpoly != y.spec_->minpoly)
        throw std::invalid_argument("NFElem: mismatched specs");
    unsigned d = x.spec_->degree();
    std::vector<Rat> prod(2 * d - 1, Rat(0));
    for (size_t i = 0; i < d; ++i) {
        if (x.c_[i].is_zero()) continue;
        for (size_t j = 0; j < d; ++j) {
            if (y.c_[j].is_zero()) continue;
            prod[i + j] += x.c_[i] * y.c_[j];
        }
    }
    // reduce mod minpoly (monic)
    const PolyZ& m = x.spec_->minpoly;
    for (size_t k = prod.size(); k-- > d;) {
        Rat c = prod[k];
        if (c.is_zero()) continue;
        prod[k] = Rat(0);
        for (unsigned j = 0; j < d; ++j)
            prod[k - d + j] -= c * Rat(m.coeff(j));
    }
    prod.resize(d);
    NFElem r;
    r.spec_ = x.spec_;
    r.c_ = std::move(prod);
    return r;
}

bool operator==(const NFElem& a, const NFElem& b) { return (a - b).is_zero(); }

NFElem NFElem::inverse() const {
    if (is_zero()) throw std::domain_error("NFElem: inverse of zero");
    if (!spec_ || spec_->degree() == 1 || is_rational()) {
        NFElem r = *this;
        for (auto& x : r.c_) x = Rat(0);
        r.c_[0] = (is_rational() ? rational_part() : c_[0]).inv();
        return r;
    }
    // extended gcd against the minimal polynomial over Q
    PolyQ a{std::vector<Rat>(c_)};
    PolyQ m = to_polyq(spec_->minpoly);
    PolyQ r0 = m, r1 = a, s0, s1({Rat(1)});
    while (!r1.is_zero() && r1.degree() > 0) {
        PolyQ q, rem;
        PolyQ::divmod(r0, r1, q, rem);
        PolyQ s2 = s0 - q * s1;
        r0 = r1; r1 = rem;
        s0 = s1; s1 = s2;
    }
    if (r1.is_zero())
        throw std::domain_error("NFElem: not invertible (reducible minpoly?)");
    PolyQ inv_poly = (r1.coeff(0).inv() * s1) % m;
    std::vector<Rat> coords(spec_->degree(), Rat(0));
    for (long j = 0; j <= inv_poly.degree(); ++j) coords[(size_t)j] = inv_poly.coeff((size_t)j);
    NFElem r;
    r.spec_ = spec_;
    r.c_ = std::move(coords);
    return r;
}

Rat NFElem::norm() const {
    if (!spec_ || spec_->degree() == 1) return c_[0];
    unsigned d = spec_->degree();
    // det of multiplication matrix
    std::vector<std::vector<Rat>> mat(d, std::vector<Rat>(d, Rat(0)));
    NFElem cur = *this;
    NFElem alpha = NFElem::gen(spec_);
    for (unsigned col = 0; col < d; ++col) {
        for (unsigned row = 0; row < d; ++row) mat[row][col] = cur.c_[row];
        if (col + 1 < d) cur = cur * alpha;
    }
    Rat det(1);
    for (unsigned i = 0; i < d; ++i) {
        unsigned piv = i;
        while (piv < d && mat[piv][i].is_zero()) ++piv;
        if (piv == d) return Rat(0);
        if (piv != i) { std::swap(mat[piv], mat[i]); det = -det; }
        det *= mat[i][i];
        Rat inv = mat[i][i].inv();
        for (unsigned r = i + 1; r < d; ++r) {
            if (mat[r][i].is_zero()) continue;
            Rat f = mat[r][i] * inv;
            for (unsigned cj = i; cj < d; ++cj) mat[r][cj] -= f * mat[i][cj];
        }
    }
    return det;
}

Rat NFElem::trace() const {
    if (!spec_ || spec_->degree() == 1) return c_[0];
    unsigned d = spec_->degree();
    Rat tr(0);
    NFElem cur = *this;
    NFElem alpha = NFElem::gen(spec_);
    // trace = sum of diagonal of multiplication matrix
    for (unsigned col = 0; col < d; ++col) {
        tr += cur.c_[col];
        if (col + 1 < d) cur = cur * alpha;
    }
    return tr;
}

bool NFElem::delta_integral() const {
    Int delta = spec_ ? spec_->delta : Int(1);
    for (auto& x : c_) {
        Int d = x.den();
        if (d.is_one()) continue;
        // strip all primes dividing delta
        Int g = Int::gcd(d, delta);
        while (!g.is_one()) {
            while (d.divisible_by(g)) d = Int::divexact(d, g);
            g = Int::gcd(d, delta);
        }
        if (!d.is_one()) return false;
    }
    return true;
}

const NFElem& NFElem::require_delta_integral(const char* where) const {
    if (!delta_integral())
        throw DeltaViolation(std::string(where) +
                             ": denominator has a prime not dividing Delta");
    return *this;
}

NFElem NFElem::checked_inverse() const {
    if (is_zero()) throw std::domain_error("NFElem: inverse of zero");
    NFElem inv = inverse();
    if (!inv.delta_integral())
        throw NotInvertible("NFElem: not invertible over O_K[1/Delta]");
    return inv;
}

Rat norm_via_resultant(const NFSpec& spec, const std::vector<Rat>& coords) {
    // clear denominators: coords = P(alpha)/D
    Int D(1);
    for (auto& c : coords) D = Int::lcm(D, c.den());
    std::vector<Int> pz(coords.size(), Int(0));
    for (size_t i = 0; i < coords.size(); ++i)
        pz[i] = Int::divexact(D, coords[i].den()) * coords[i].num();
    Int res = resultant(spec.minpoly, PolyZ(std::move(pz)));
    return Rat(res, Int::pow(D, spec.degree()));
}

std::string NFElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        if (!first) os << " + ";
        os << c_[j].str();
        if (j > 0) os << "*a^" << j;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const NFElem& x) { return os << x.str(); }

} // namespace habiro
