#include "habiro/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace habiro {

unsigned long euler_phi(unsigned long n) {
    unsigned long r = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            unsigned long pk = 1;
            while (n % p == 0) { n /= p; pk *= p; }
            r *= pk - pk / p;
        }
    }
    if (n > 1) r *= n - 1;
    return r;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.raw(), 30) != 0;
}

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    if (n.sgn() <= 0) throw std::domain_error("factorize: need positive integer");
    std::vector<std::pair<Int, unsigned>> out;
    Int two(2);
    unsigned e = 0;
    while (n.divisible_by(two)) { n = Int::divexact(n, two); ++e; }
    if (e) out.push_back({two, e});
    Int p(3);
    while (p * p <= n) {
        e = 0;
        while (n.divisible_by(p)) { n = Int::divexact(n, p); ++e; }
        if (e) out.push_back({p, e});
        p += Int(2);
        if (!out.empty() && p * p > n) break;
        // fall back to primality for large residuals
        if (p > Int(1000000) && is_probable_prime(n)) break;
    }
    if (n > Int(1)) out.push_back({n, 1});
    return out;
}

namespace {
std::map<unsigned, PolyZ> g_phi_cache;
std::mutex g_phi_mutex;
} // namespace

PolyZ cyclotomic_poly(unsigned n) {
    {
        std::lock_guard<std::mutex> lock(g_phi_mutex);
        auto it = g_phi_cache.find(n);
        if (it != g_phi_cache.end()) return it->second;
    }
    // x^n - 1 divided by all Phi_d, d | n, d < n (exact integer division).
    std::vector<Int> xn((size_t)n + 1, Int(0));
    xn[0] = Int(-1);
    xn[n] = Int(1);
    PolyZ num(std::move(xn));
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        PolyZ phi_d = cyclotomic_poly(d);
        // exact division (both monic)
        std::vector<Int> q((size_t)(num.degree() - phi_d.degree() + 1), Int(0));
        std::vector<Int> rem(num.coeffs());
        for (long k = (long)q.size() - 1; k >= 0; --k) {
            Int c = rem[(size_t)k + phi_d.degree()];
            q[(size_t)k] = c;
            if (c.is_zero()) continue;
            for (long j = 0; j <= phi_d.degree(); ++j)
                rem[(size_t)(k + j)] -= c * phi_d.coeff((size_t)j);
        }
        num = PolyZ(std::move(q));
    }
    {
        std::lock_guard<std::mutex> lock(g_phi_mutex);
        g_phi_cache.emplace(n, num);
    }
    return num;
}

namespace {
std::map<unsigned, std::unique_ptr<CycCtx>> g_ctx;
std::mutex g_ctx_mutex;
} // namespace

const CycCtx& cyc_ctx(unsigned m) {
    std::lock_guard<std::mutex> lock(g_ctx_mutex);
    auto it = g_ctx.find(m);
    if (it != g_ctx.end()) return *it->second;
    auto ctx = std::make_unique<CycCtx>();
    ctx->m = m;
    ctx->phi = euler_phi(m);
    ctx->modulus = to_polyq(cyclotomic_poly(m));
    // x^{phi+k} mod Phi_m
    unsigned long phi = ctx->phi;
    std::vector<Rat> cur(phi, Rat(0));
    // start with x^phi mod Phi = -(lower part of Phi)
    for (unsigned long j = 0; j < phi; ++j) cur[j] = -ctx->modulus.coeff(j);
    ctx->xpow.push_back(cur);
    for (unsigned long k = 1; k + 1 < phi || (phi == 1 && k < 1); ++k) {
        if (k + 1 >= phi) break;
        std::vector<Rat> nxt(phi, Rat(0));
        Rat top = cur[phi - 1];
        for (unsigned long j = phi - 1; j > 0; --j) nxt[j] = cur[j - 1];
        nxt[0] = Rat(0);
        if (!top.is_zero())
            for (unsigned long j = 0; j < phi; ++j)
                nxt[j] += top * ctx->xpow[0][j];
        ctx->xpow.push_back(nxt);
        cur = std::move(nxt);
    }
    auto& ref = *ctx;
    g_ctx.emplace(m, std::move(ctx));
    return ref;
}

namespace {
long mod_inverse(long a, long n) {
    long t = 0, newt = 1, r = n, newr = ((a % n) + n) % n;
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("mod_inverse: not invertible");
    return ((t % n) + n) % n;
}
} // namespace

unsigned long dist_root_exponent(unsigned ambient, unsigned d) {
    if (d == 0 || ambient % d != 0)
        throw std::domain_error("dist_root_exponent: d must divide ambient");
    if (d == 1) return 0;
    // ambient = prod p^S ; e = sum over p^s || d of (ambient/p^S) t_p p^{S-s},
    // t_p = (ambient/p^S)^{-1} mod p^S.
    unsigned long e = 0;
    unsigned long n = ambient;
    for (unsigned long p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        unsigned long pS = 1;
        while (n % p == 0) { n /= p; pS *= p; }
        unsigned long s_part = 1;
        unsigned long dd = d;
        while (dd % p == 0) { dd /= p; s_part *= p; }
        if (s_part == 1) continue;
        unsigned long cof = ambient / pS;
        unsigned long t = (unsigned long)mod_inverse((long)(cof % pS), (long)pS);
        unsigned long term = (unsigned long)(((__int128)cof * t % ambient) * (pS / s_part) % ambient);
        e = (e + term) % ambient;
    }
    return e;
}

Cyc::Cyc(unsigned m, std::vector<Rat> coords) : m_(m), c_(std::move(coords)) {
    const auto& ctx = cyc_ctx(m);
    if (c_.size() != ctx.phi)
        throw std::invalid_argument("Cyc: coordinate length must be phi(m)");
}

Cyc Cyc::zeta_pow(unsigned m, long e) {
    const auto& ctx = cyc_ctx(m);
    long phi = (long)ctx.phi;
    long k = ((e % (long)m) + (long)m) % (long)m;
    // reduce x^k mod Phi_m
    std::vector<Rat> c(ctx.phi, Rat(0));
    if (k < phi) {
        c[(size_t)k] = Rat(1);
    } else {
        // repeated shift-reduce from the precomputed table when possible
        std::vector<Rat> cur(ctx.phi, Rat(0));
        if ((unsigned long)(k - phi) < ctx.xpow.size()) {
            cur = ctx.xpow[(size_t)(k - phi)];
        } else {
            cur = ctx.xpow.empty() ? std::vector<Rat>(ctx.phi, Rat(0)) : ctx.xpow[0];
            for (long i = phi + (long)1; i <= k; ++i) {
                // multiply by x and reduce
                Rat top = cur[ctx.phi - 1];
                for (unsigned long j = ctx.phi - 1; j > 0; --j) cur[j] = cur[j - 1];
                cur[0] = Rat(0);
                if (!top.is_zero())
                    for (unsigned long j = 0; j < ctx.phi; ++j)
                        cur[j] += top * ctx.xpow[0][j];
            }
        }
        c = cur;
    }
    Cyc r;
    r.m_ = m;
    r.c_ = std::move(c);
    return r;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

Rat Cyc::rational_part() const {
    if (!is_rational()) throw std::domain_error("Cyc: not rational");
    return c_[0];
}

Cyc Cyc::lifted(unsigned M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw std::domain_error("Cyc: lift target must be a multiple");
    unsigned long e = dist_root_exponent(M, m_);
    Cyc acc(0);
    acc.m_ = M;
    acc.c_.assign(cyc_ctx(M).phi, Rat(0));
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        Cyc term = Cyc::zeta_pow(M, (long)((e * j) % M));
        for (size_t i = 0; i < acc.c_.size(); ++i)
            acc.c_[i] += c_[j] * term.c_[i];
    }
    return acc;
}

namespace {
unsigned lcm_u(unsigned a, unsigned b) {
    return (unsigned)(a / std::gcd(a, b) * (unsigned long)b);
}
} // namespace

Cyc operator+(const Cyc& a, const Cyc& b) {
    unsigned M = lcm_u(a.m_, b.m_);
    Cyc x = a.lifted(M), y = b.lifted(M);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

Cyc operator-(const Cyc& a) {
    Cyc r = a;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
    unsigned M = lcm_u(a.m_, b.m_);
    Cyc x = a.lifted(M), y = b.lifted(M);
    const auto& ctx = cyc_ctx(M);
    unsigned long phi = ctx.phi;
    std::vector<Rat> prod(2 * phi - 1, Rat(0));
    for (size_t i = 0; i < phi; ++i) {
        if (x.c_[i].is_zero()) continue;
        for (size_t j = 0; j < phi; ++j) {
            if (y.c_[j].is_zero()) continue;
            prod[i + j] += x.c_[i] * y.c_[j];
        }
    }
    std::vector<Rat> red(phi, Rat(0));
    for (size_t i = 0; i < phi; ++i) red[i] = prod[i];
    for (size_t k = 0; k + 1 < phi; ++k) {
        const Rat& c = prod[phi + k];
        if (c.is_zero()) continue;
        const auto& row = ctx.xpow[k];
        for (size_t j = 0; j < phi; ++j) red[j] += c * row[j];
    }
    Cyc r;
    r.m_ = M;
    r.c_ = std::move(red);
    return r;
}

bool operator==(const Cyc& a, const Cyc& b) {
    unsigned M = lcm_u(a.m_, b.m_);
    Cyc x = a.lifted(M), y = b.lifted(M);
    return x.c_ == y.c_;
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw std::domain_error("Cyc: inverse of zero");
    if (is_rational()) {
        Cyc r = *this;
        r.c_[0] = c_[0].inv();
        return r;
    }
    // extended gcd of the representative against Phi_m over Q
    const auto& ctx = cyc_ctx(m_);
    PolyQ a{std::vector<Rat>(c_)};
    PolyQ m = ctx.modulus;
    PolyQ r0 = m, r1 = a, s0, s1({Rat(1)});
    while (!r1.is_zero() && r1.degree() > 0) {
        PolyQ q, rem;
        PolyQ::divmod(r0, r1, q, rem);
        PolyQ s2 = s0 - q * s1;
        r0 = r1; r1 = rem;
        s0 = s1; s1 = s2;
    }
    if (r1.is_zero()) throw std::domain_error("Cyc: not invertible (zero divisor?)");
    Rat lead = r1.coeff(0);
    PolyQ inv_poly = lead.inv() * s1;
    inv_poly = inv_poly % m;
    std::vector<Rat> coords(ctx.phi, Rat(0));
    for (long j = 0; j <= inv_poly.degree(); ++j) coords[(size_t)j] = inv_poly.coeff((size_t)j);
    return Cyc(m_, std::move(coords));
}

Cyc Cyc::galois(long g) const {
    long m = (long)m_;
    long gg = ((g % m) + m) % m;
    if (std::gcd(gg, m) != 1)
        throw std::domain_error("Cyc::galois: exponent not coprime to level");
    Cyc acc(0);
    acc.m_ = m_;
    acc.c_.assign(cyc_ctx(m_).phi, Rat(0));
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        Cyc term = Cyc::zeta_pow(m_, (long)((gg * (long)j) % m));
        for (size_t i = 0; i < acc.c_.size(); ++i)
            acc.c_[i] += c_[j] * term.c_[i];
    }
    return acc;
}

Rat Cyc::norm() const {
    // determinant of the multiplication-by-*this matrix on the power basis
    const auto& ctx = cyc_ctx(m_);
    unsigned long phi = ctx.phi;
    std::vector<std::vector<Rat>> mat(phi, std::vector<Rat>(phi, Rat(0)));
    Cyc cur = *this;
    for (unsigned long col = 0; col < phi; ++col) {
        for (unsigned long row = 0; row < phi; ++row) mat[row][col] = cur.c_[row];
        if (col + 1 < phi) cur = cur * Cyc::zeta(m_);
    }
    // fraction-free-ish Gaussian elimination over Q
    Rat det(1);
    for (unsigned long i = 0; i < phi; ++i) {
        unsigned long piv = i;
        while (piv < phi && mat[piv][i].is_zero()) ++piv;
        if (piv == phi) return Rat(0);
        if (piv != i) { std::swap(mat[piv], mat[i]); det = -det; }
        det *= mat[i][i];
        Rat inv = mat[i][i].inv();
        for (unsigned long r = i + 1; r < phi; ++r) {
            if (mat[r][i].is_zero()) continue;
            Rat f = mat[r][i] * inv;
            for (unsigned long cjj = i; cjj < phi; ++cjj)
                mat[r][cjj] -= f * mat[i][cjj];
        }
    }
    return det;
}

Cyc Cyc::compressed() const {
    if (m_ == 1) return *this;
    // try each divisor level d of m_: representable iff lift of candidate matches
    for (unsigned d = 1; d < m_; ++d) {
        if (m_ % d != 0) continue;
        // solve: find y at level d with y.lifted(m_) == *this, by linear algebra
        const auto& ctxd = cyc_ctx(d);
        unsigned long phid = ctxd.phi;
        const auto& ctxm = cyc_ctx(m_);
        unsigned long phim = ctxm.phi;
        // columns: lifts of zeta_d^j
        std::vector<std::vector<Rat>> cols(phid);
        unsigned long e = dist_root_exponent(m_, d);
        for (unsigned long j = 0; j < phid; ++j)
            cols[j] = Cyc::zeta_pow(m_, (long)((e * j) % m_)).c_;
        // solve cols * y = c_ (phim x phid overdetermined)
        std::vector<std::vector<Rat>> a(phim, std::vector<Rat>(phid + 1, Rat(0)));
        for (unsigned long r = 0; r < phim; ++r) {
            for (unsigned long j = 0; j < phid; ++j) a[r][j] = cols[j][r];
            a[r][phid] = c_[r];
        }
        // Gaussian elimination
        unsigned long rank = 0;
        std::vector<long> where(phid, -1);
        for (unsigned long col = 0; col < phid && rank < phim; ++col) {
            unsigned long piv = rank;
            while (piv < phim && a[piv][col].is_zero()) ++piv;
            if (piv == phim) continue;
            std::swap(a[piv], a[rank]);
            Rat inv = a[rank][col].inv();
            for (unsigned long j = col; j <= phid; ++j) a[rank][j] *= inv;
            for (unsigned long r = 0; r < phim; ++r) {
                if (r == rank || a[r][col].is_zero()) continue;
                Rat f = a[r][col];
                for (unsigned long j = col; j <= phid; ++j) a[r][j] -= f * a[rank][j];
            }
            where[col] = (long)rank;
            ++rank;
        }
        bool consistent = true;
        for (unsigned long r = rank; r < phim; ++r)
            if (!a[r][phid].is_zero()) { consistent = false; break; }
        if (!consistent) continue;
        std::vector<Rat> y(phid, Rat(0));
        for (unsigned long col = 0; col < phid; ++col)
            if (where[col] >= 0) y[col] = a[(size_t)where[col]][phid];
        Cyc cand(d, std::move(y));
        if (cand.lifted(m_) == *this) return cand;
    }
    return *this;
}

std::string Cyc::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        if (!first) os << " + ";
        os << c_[j].str();
        if (j > 0) os << "*z" << m_ << "^" << j;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyc& x) { return os << x.str(); }

} // namespace habiro
