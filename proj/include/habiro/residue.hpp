// Expansions of rank-one q-hypergeometric sums J(t, w, q) at roots of unity
// as rational functions of w, and exact residues over the algebraic locus
// t P(w) = 1. Local expansions use explicit uniformizers (w = root + s), so
// no factorization over splitting fields is ever needed.
//
// The w-level arithmetic deliberately avoids gcd normalization: every
// denominator that can appear is a monomial in the two fixed polynomials
// (1 - w)^c and D(w) = (1 - w)^e - sign * t * w^b, tracked as exponents.
#pragma once

#include "habiro/exact_core.hpp"
#include "habiro/qalg.hpp"
#include "habiro/ratfunc.hpp"
#include "habiro/zmodel.hpp"
#include <memory>

namespace habiro {

// One-dimensional sum shape: T_k = sign^k q^{a k(k+1)/2} w^{b k} t^k / (qw;q)_k^e.
struct JShape {
    int sign = 1; // +1 or -1
    long a = 0;   // quadratic q-exponent multiplier
    long b = 0;   // w-power per step
    long e = 1;   // Pochhammer power
    static JShape rank1(long A) { return JShape{(A % 2) ? -1 : 1, A, A, 1}; }
};

template <class C>
Poly<C> poly_taylor_shift(const Poly<C>& p, const C& w0) {
    long d = p.degree();
    if (d < 0) return p;
    std::vector<C> out((size_t)d + 1, C(0));
    std::vector<C> w0pow{C(1)};
    for (long i = 1; i <= d; ++i) w0pow.push_back(w0pow.back() * w0);
    for (long i = 0; i <= d; ++i) {
        C ci = p.coeff((size_t)i);
        if (is_zero_adl(ci)) continue;
        for (long j = 0; j <= i; ++j)
            out[(size_t)j] = out[(size_t)j] +
                ci * from_rat<C>(Rat(Int::binomial(Int(i), (unsigned long)j))) *
                w0pow[(size_t)(i - j)];
    }
    return Poly<C>(std::move(out));
}

// Fraction num(w) / ((1-w)^{a1} D(w)^{a2}) over the coefficient field K.
template <class K>
struct WFrac {
    struct Ctx {
        Poly<K> onemw; // 1 - w
        Poly<K> D;     // (1-w)^e - sign t w^b
    };
    std::shared_ptr<const Ctx> ctx;
    Poly<K> num;
    long a1 = 0, a2 = 0;

    WFrac() = default;
    WFrac(long x) : num(x) {}
    explicit WFrac(Poly<K> n, std::shared_ptr<const Ctx> c = nullptr, long e1 = 0, long e2 = 0)
        : ctx(std::move(c)), num(std::move(n)), a1(e1), a2(e2) {}

    bool is_zero() const { return num.is_zero(); }

    // canonicalize coefficients (lazy fraction fields would blow up otherwise)
    void canon() {
        if (num.is_zero()) return;
        std::vector<K> c(num.coeffs());
        for (auto& x : c) x = reduce_adl(x);
        num = Poly<K>(std::move(c));
    }

    void strip() {
        // only divide out (1-w): its leading unit keeps coefficients clean,
        // while trial division by D would drag its fractional leading
        // coefficient into every denominator
        if (num.is_zero()) { a1 = a2 = 0; return; }
        if (!ctx) return;
        while (a1 > 0) {
            Poly<K> q, r;
            Poly<K>::divmod(num, ctx->onemw, q, r);
            if (!r.is_zero()) break;
            num = q;
            --a1;
        }
    }

    static void align(WFrac& x, WFrac& y) {
        if (!x.ctx && y.ctx) x.ctx = y.ctx;
        if (!y.ctx && x.ctx) y.ctx = x.ctx;
        long m1 = std::max(x.a1, y.a1), m2 = std::max(x.a2, y.a2);
        auto lift = [&](WFrac& v) {
            for (long i = v.a1; i < m1; ++i) v.num = v.num * v.ctx->onemw;
            for (long i = v.a2; i < m2; ++i) v.num = v.num * v.ctx->D;
            v.a1 = m1;
            v.a2 = m2;
        };
        if (x.a1 != m1 || x.a2 != m2) lift(x);
        if (y.a1 != m1 || y.a2 != m2) lift(y);
    }

    friend WFrac operator+(const WFrac& a, const WFrac& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        WFrac x = a, y = b;
        align(x, y);
        WFrac r(x.num + y.num, x.ctx, x.a1, x.a2);
        r.canon();
        r.strip();
        return r;
    }
    friend WFrac operator-(const WFrac& a) { WFrac r = a; r.num = -r.num; return r; }
    friend WFrac operator-(const WFrac& a, const WFrac& b) { return a + (-b); }
    friend WFrac operator*(const WFrac& a, const WFrac& b) {
        WFrac r(a.num * b.num, a.ctx ? a.ctx : b.ctx, a.a1 + b.a1, a.a2 + b.a2);
        if (r.num.is_zero()) { r.a1 = r.a2 = 0; }
        r.canon();
        return r;
    }
    friend WFrac operator/(const WFrac& a, const WFrac& b) {
        // only division by pure denominator-free constants is needed
        if (b.a1 != 0 || b.a2 != 0 || b.num.degree() != 0)
            throw std::domain_error("WFrac: unsupported division");
        K inv = K(1) / b.num.coeff(0);
        WFrac r = a;
        r.num = inv * r.num;
        return r;
    }

    RatFunc<K> to_ratfunc() const {
        if (!ctx) return RatFunc<K>(num);
        Poly<K> den({K(1)});
        for (long i = 0; i < a1; ++i) den = den * ctx->onemw;
        for (long i = 0; i < a2; ++i) den = den * ctx->D;
        return RatFunc<K>(num, den);
    }
};

template <class K>
bool is_zero(const WFrac<K>& x) { return x.is_zero(); }

template <class K>
WFrac<K> make_from_rat(ring_tag<WFrac<K>>, const Rat& r) {
    return WFrac<K>(Poly<K>({from_rat<K>(r)}));
}

// Reduced-series inverse: the plain recurrence with per-coefficient
// canonicalization, which keeps lazily-normalized fields (Q(z), Q(t)) from
// snowballing representation degrees.
template <class K>
LSeries<K> series_inverse_reduced(const LSeries<K>& fin) {
    LSeries<K> f = fin.normalized();
    if (f.is_zero()) throw std::domain_error("series_inverse_reduced: zero series");
    long n = (f.trunc() >= kInf) ? (f.high() - f.low()) : f.trunc() - f.low();
    K l0inv = reduce_adl(K(1) / f.coeff(f.low()));
    std::vector<K> r((size_t)n, K(0));
    r[0] = l0inv;
    for (long k = 1; k < n; ++k) {
        K acc(0);
        for (long j = 1; j <= k && j < f.high() - f.low(); ++j) {
            K fj = f.coeff(f.low() + j);
            if (is_zero_adl(fj)) continue;
            acc = acc + fj * r[(size_t)(k - j)];
        }
        r[(size_t)k] = reduce_adl(-(l0inv * acc));
    }
    long rtrunc = (f.trunc() >= kInf) ? kInf : f.trunc() - 2 * f.low();
    return LSeries<K>(-f.low(), std::move(r), rtrunc);
}

// Res_{w = w0} f(w)/w dw; w0 must not be 0.
template <class K>
K residue_at(const RatFunc<K>& f, const K& w0) {
    Poly<K> nsh = poly_taylor_shift(f.num(), w0);
    Poly<K> dsh = poly_taylor_shift(f.den(), w0);
    long v = 0;
    while (v <= dsh.degree() && is_zero_adl(dsh.coeff((size_t)v))) ++v;
    if (v == 0) return K(0);
    using SK = LSeries<K>;
    std::vector<K> ncoeffs;
    for (auto& c : nsh.coeffs()) ncoeffs.push_back(reduce_adl(c));
    SK num(0, std::move(ncoeffs), v + 1);
    std::vector<K> unit_coeffs;
    for (long i = v; i <= dsh.degree(); ++i)
        unit_coeffs.push_back(reduce_adl(dsh.coeff((size_t)i)));
    SK unit(0, std::move(unit_coeffs), v);
    SK wshift(0, {w0, K(1)}, v);
    SK val = num * series_inverse_reduced(unit) * series_inverse_reduced(wshift);
    if (!val.known_order(v - 1))
        throw std::logic_error("residue_at: precision shortfall");
    return reduce_adl(val.coeff(v - 1));
}

// x^j coefficients (j <= ordX) of sum_{k>=0} T_k at q = 1 + x, as w-fractions
// over the field K (t is a fixed element of K).
template <class K>
std::vector<RatFunc<K>> j_series_q1(const JShape& sh, const K& t, unsigned ordX) {
    using WF = WFrac<K>;
    using PK = Poly<WF>; // polynomials in the summation index k
    long J = (long)ordX;
    auto ctx = std::make_shared<typename WF::Ctx>();
    ctx->onemw = Poly<K>({K(1), K(-1)});
    {
        Poly<K> d({K(1)});
        for (long i = 0; i < sh.e; ++i) d = d * ctx->onemw;
        Poly<K> tw = Poly<K>::monomial((sh.sign < 0 ? -t : t), (size_t)sh.b);
        ctx->D = d - tw;
    }
    auto wfrac = [&](Poly<K> n, long e1, long e2) { return WF(std::move(n), ctx, e1, e2); };
    // scale = -w/(1-w)
    WF scale = wfrac(Poly<K>::monomial(K(-1), 1), 1, 0);

    using XP = LSeries<PK>;
    XP u = XP::zero_to_order(J + 1);
    {
        PolyQ Bi({Rat(1)});
        for (long i = 1; i <= J; ++i) {
            Bi = Rat(1, i) * (Bi * PolyQ({Rat(-(i - 1)), Rat(1)}));
            std::vector<WF> cs;
            for (auto& q : Bi.coeffs()) cs.push_back(scale * from_rat<WF>(q));
            u.set_coeff(i, PK{std::move(cs)});
        }
    }
    XP phi = XP::zero_to_order(J + 1);
    {
        XP p = XP(PK(1)).truncated(J + 1);
        for (long n = 1; n <= J; ++n) {
            p = (p * u).truncated(J + 1);
            if (p.is_zero()) break;
            phi = phi + scalar_mul(Rat((n % 2) ? 1 : -1, n), p);
        }
    }
    auto faulhaber = [](unsigned p) {
        if (p == 0) return PolyQ({Rat(0), Rat(1)});
        PolyQ B = bernoulli_poly(p + 1);
        std::vector<Rat> out(B.coeffs().size(), Rat(0));
        for (long i = 0; i <= B.degree(); ++i) {
            Rat ci = B.coeff((size_t)i);
            if (ci.is_zero()) continue;
            for (long j = 0; j <= i; ++j)
                out[(size_t)j] += ci * Rat(Int::binomial(Int(i), (unsigned long)j));
        }
        PolyQ shifted(std::move(out));
        return Rat(1, (long)p + 1) * (shifted - PolyQ({B.coeff(0)}));
    };
    XP Phi = XP::zero_to_order(J + 1);
    for (long s = 1; s <= J; ++s) {
        PK acc;
        {
            Rat lam((s % 2) ? 1 : -1, s);
            Rat ha2 = Rat(sh.a, 2) * lam;
            std::vector<WF> cs{WF(0), from_rat<WF>(ha2), from_rat<WF>(ha2)};
            acc = acc + PK{std::move(cs)};
        }
        PK ps = phi.coeff(s);
        PK summed;
        for (long p = 0; p <= ps.degree(); ++p) {
            WF cp = ps.coeff((size_t)p);
            if (cp.is_zero()) continue;
            PolyQ S = faulhaber((unsigned)p);
            std::vector<WF> cs;
            for (auto& q : S.coeffs()) cs.push_back(cp * from_rat<WF>(q));
            summed = summed + PK{std::move(cs)};
        }
        acc = acc - from_rat<PK>(Rat(sh.e)) * summed;
        Phi.set_coeff(s, acc);
    }
    XP E = XP(PK(1)).truncated(J + 1);
    {
        XP p = XP(PK(1)).truncated(J + 1);
        for (long n = 1; n <= J; ++n) {
            p = scalar_mul(Rat(1, n), (p * Phi).truncated(J + 1));
            if (p.is_zero()) break;
            E = E + p;
        }
    }
    // moments sum_k k^p rho^k with rho = sign t w^b/(1-w)^e: derive from the
    // Eulerian recursion directly in WFrac form:
    //   G_0 = (1-w)^e / D,   G_{p+1} = rho * dG_p/drho.
    // Work instead with the closed form G_p = N_p(rho)/(1-rho)^{p+1} where
    // N_p are the Eulerian polynomials, evaluated denominator-free.
    long pmax = 0;
    for (long j = 0; j <= J; ++j) pmax = std::max(pmax, E.coeff(j).degree());
    std::vector<PolyQ> eulerian; // N_p with G_p = N_p(X)/(1-X)^{p+1}
    {
        // N_0 = 1; N_{p+1} = X (1-X) N_p' + (p+1) X N_p   (standard recursion
        // for sum k^p X^k = N_p(X)/(1-X)^{p+1} with N_p(0)=...; verified by
        // the unit tests against direct summation)
        eulerian.push_back(PolyQ({Rat(1)}));
        for (long p = 0; p < pmax; ++p) {
            PolyQ Np = eulerian.back();
            PolyQ X = PolyQ::x();
            PolyQ next = X * (PolyQ({Rat(1)}) - X) * Np.derivative() +
                         Rat(p + 1) * (X * Np);
            eulerian.push_back(next);
        }
    }
    // rho^i = (sign t)^i w^{b i} / (1-w)^{e i}; (1-rho)^{p+1} = D^{p+1}/(1-w)^{e(p+1)}
    std::vector<WF> moments;
    for (long p = 0; p <= pmax; ++p) {
        const PolyQ& Np = eulerian[(size_t)p];
        WF acc(0);
        for (long i = 0; i <= Np.degree(); ++i) {
            Rat ci = Np.coeff((size_t)i);
            if (ci.is_zero()) continue;
            K sc = from_rat<K>(ci);
            K tp(1);
            for (long r = 0; r < i; ++r) tp = reduce_adl(tp * (sh.sign < 0 ? K(0) - t : t));
            acc = acc + wfrac(Poly<K>::monomial(sc * tp, (size_t)(sh.b * i)), sh.e * i, 0);
        }
        // divide by (1-rho)^{p+1}: multiply exponent bookkeeping
        WF g = acc;
        g.a2 += p + 1;
        g.a1 -= sh.e * (p + 1);
        if (g.a1 < 0) {
            // clear the negative (1-w) power into the numerator
            for (long i = 0; i < -g.a1; ++i) g.num = g.num * ctx->onemw;
            g.a1 = 0;
        }
        g.strip();
        moments.push_back(g);
    }
    std::vector<RatFunc<K>> out;
    for (long j = 0; j <= J; ++j) {
        PK Ej = E.coeff(j);
        WF acc(0);
        for (long p = 0; p <= Ej.degree(); ++p) {
            WF cp = Ej.coeff((size_t)p);
            if (!cp.is_zero()) acc = acc + cp * moments[(size_t)p];
        }
        out.push_back(acc.to_ratfunc());
    }
    return out;
}

// x-coefficients of Psi_{A,1}(t, x) = Res_{w=z} J_A(t, w, 1+x) dw/w in the
// rank-one symbolic model (K = Q(z), t = t(z)); matches the worked example
// display (no t^{-1} prefactor); the symmetrisation F(t,q) F(t,q^{-1})
// equals t^{-1} times this.
std::vector<RF> residue_psi_rank1_alg(long A, unsigned ordX);

// Same at t = 1 over Q[z]/(Nahm equation at t=1).
std::vector<QA> residue_psi_rank1_t1(long A, unsigned ordX,
                                     std::shared_ptr<const QACtx>* ctx_out = nullptr);

} // namespace habiro
