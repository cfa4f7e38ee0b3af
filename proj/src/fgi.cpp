#include "habiro/fgi.hpp"

#include <numeric>
#include <sstream>

namespace habiro {

using fgi_detail::AC;
using fgi_detail::AtomKey;

namespace {

void ac_add_main(AC& x, const XTS& v) { x.main = x.main + v; }
void ac_add_atom(AC& x, const AtomKey& a, const XTS& v) {
    auto it = x.atoms.find(a);
    if (it == x.atoms.end()) x.atoms[a] = v;
    else it->second = it->second + v;
}

// N_p(X) with sum_{k>=1} k^p X^k = N_p(X)/(1-X)^{p+1} for p >= 1; N_0 handled
// separately (sum = X/(1-X)).
std::vector<PolyQ> eulerian_polys(long pmax) {
    std::vector<PolyQ> N{PolyQ({Rat(1)})};
    for (long p = 0; p < pmax; ++p) {
        PolyQ X = PolyQ::x();
        PolyQ next = X * (PolyQ({Rat(1)}) - X) * N.back().derivative() +
                     Rat(p + 1) * (X * N.back());
        N.push_back(next);
    }
    return N;
}

} // namespace

FgiContext make_fgi_context(const NahmMatrix& A, unsigned M, long ordU, long ordX,
                            long wmax) {
    FgiContext C;
    C.A = A;
    C.M = M;
    C.N = A.N;
    C.zeta = Cyc::zeta(M);
    long xneg = wmax / 3 + 2;
    C.utrunc = ordU + (long)M * (wmax / 3 + (long)A.N + 2) + 1;
    // x-budget: the window itself, the Laurent dip, and one order of erosion
    // per possible 1/h factor (polar exponential and Wick h-powers)
    C.xtrunc = ordX + 1 + xneg + C.utrunc / (long)M + wmax / 2 + 4;

    // h = log(1 + x/zeta) as an x-series with constant TS coefficients
    {
        XTS h = XTS::zero_to_order(C.xtrunc);
        Cyc zinv = C.zeta.inverse();
        Cyc zp = zinv;
        for (long s = 1; s < C.xtrunc; ++s) {
            Rat c(s % 2 ? 1 : -1, s);
            h.set_coeff(s, TS::constant(Cyc(c) * zp, C.N, 1, C.utrunc));
            zp = zp * zinv;
        }
        C.h = h;
        C.hinv = h.normalized().inverse();
    }

    // Nahm solution in u-units (t_i = u_i^M)
    long tord = (C.utrunc + (long)M - 1) / (long)M + 1;
    auto zq = solve_deformed_nahm(A, tord);
    for (unsigned j = 0; j < C.N; ++j) {
        TS zj(C.N, 1, C.utrunc);
        for (auto& [e, c] : zq[j].terms()) {
            std::vector<int> eu(e);
            for (auto& x : eu) x *= (int)M;
            long d = 0;
            for (int x : eu) d += x;
            if (d < C.utrunc) zj.add_term(eu, Cyc(c));
        }
        C.z.push_back(zj);
        C.zinv.push_back(zj.inverse());
        C.Zs.push_back(M == 1 ? zj : mseries_binpow(zj, Rat(1, (long)M)));
    }
    for (unsigned j = 0; j < C.N; ++j) {
        // (1 - z_j(u^M))^{-1} = (-1)^{A_jj} u_j^{-M} prod_i z_i^{-A_ij}
        TS inv(C.N, 1, C.utrunc + (long)M + 1);
        std::vector<int> e(C.N, 0);
        e[j] = -(int)M;
        inv.add_term(e, Cyc((A.diag(j) % 2) ? -1 : 1));
        for (unsigned i = 0; i < C.N; ++i)
            if (A.at(i, j)) inv = inv * mseries_pow(C.z[i], -A.at(i, j));
        C.inv1mz.push_back(inv);
        // (1 - Zs_j)^{-1} = (sum_{s<M} Zs^s) (1 - z_j)^{-1}
        TS geom(C.N, 1, C.utrunc);
        TS p = TS::constant(Cyc(1), C.N, 1, C.utrunc);
        for (unsigned s = 0; s < M; ++s) {
            geom += p;
            if (s + 1 < M) p = p * C.Zs[j];
        }
        C.inv1mZs.push_back(geom * inv);
    }
    return C;
}

namespace {

// Li_n(zeta^b Z_j) for n <= 0 as an exact TS (rational in the series point).
TS li_value_nonpos(const FgiContext& C, unsigned j, long b, long n,
                   const std::vector<PolyQ>& eul) {
    // y = zeta^b Zs_j ; 1/(1-y): closed form for b = 0, plain inverse else
    TS y = Cyc::zeta_pow(C.M, b) * C.Zs[j];
    TS inv1my;
    if (b % (long)C.M == 0) {
        inv1my = C.inv1mZs[j];
    } else {
        TS one_m_y = TS::constant(Cyc(1), C.N, 1, C.utrunc) - y;
        inv1my = one_m_y.inverse();
    }
    if (n == 0) return y * inv1my;
    long s = -n;
    // N_s(y) / (1-y)^{s+1}
    TS num(C.N, 1, C.utrunc);
    TS yp = TS::constant(Cyc(1), C.N, 1, C.utrunc);
    const PolyQ& Np = eul[(size_t)s];
    for (long i = 0; i <= Np.degree(); ++i) {
        if (!Np.coeff((size_t)i).is_zero())
            num += Cyc(Np.coeff((size_t)i)) * yp;
        if (i < Np.degree()) yp = yp * y;
    }
    TS r = num;
    for (long i = 0; i <= s; ++i) r = r * inv1my;
    return r;
}

} // namespace

namespace fgi_detail {

std::vector<AC> log_poch_bernoulli(const FgiContext& C, unsigned j, long l,
                                   long wmax, long zeta_twist, bool skip_normalized) {
    unsigned M = C.M;
    long Smax = C.xtrunc + 2;
    long imax = wmax + Smax + 1;
    auto eul = eulerian_polys(Smax + imax + 3);

    std::vector<XTS> hpow;
    hpow.push_back(C.hinv);
    hpow.push_back(XTS(C.ts_const(Cyc(1))));
    for (long p = 2; p <= Smax + imax + 2; ++p) hpow.push_back(hpow.back() * C.h);
    auto h_to = [&](long e) -> const XTS& { return hpow[(size_t)(e + 1)]; };

    // value cache: Li_n(zeta^b Zs_j) for n <= 0
    std::map<std::pair<long, long>, TS> vcache;
    {
        long nmin = 2 - Smax - imax;
        for (long b = 0; b < (long)M; ++b) {
            TS y = Cyc::zeta_pow(M, b) * C.Zs[j];
            TS inv1my = (b == 0) ? C.inv1mZs[j]
                                 : (TS::constant(Cyc(1), C.N, 1, C.utrunc) - y).inverse();
            long smax_lvl = -nmin;
            std::vector<TS> ypow{TS::constant(Cyc(1), C.N, 1, C.utrunc)};
            for (long i = 1; i <= smax_lvl; ++i) ypow.push_back(ypow.back() * y);
            std::vector<TS> ipow{TS::constant(Cyc(1), C.N, 1, C.utrunc)};
            for (long i = 1; i <= smax_lvl + 1; ++i) ipow.push_back(ipow.back() * inv1my);
            vcache[{b, 0}] = ypow[1] * ipow[1];
            for (long sv = 1; sv <= smax_lvl; ++sv) {
                const PolyQ& Np = eul[(size_t)sv];
                TS num(C.N, 1, C.utrunc);
                for (long i = 0; i <= Np.degree(); ++i)
                    if (!Np.coeff((size_t)i).is_zero())
                        num += Cyc(Np.coeff((size_t)i)) * ypow[(size_t)i];
                vcache[{b, -sv}] = num * ipow[(size_t)(sv + 1)];
            }
        }
    }

    std::vector<AC> lp((size_t)wmax + 1);
    for (long r = 0; r < (long)M; ++r) {
        long a = l + 1 + r;
        long b = ((a + zeta_twist) % (long)M + (long)M) % (long)M;
        for (long s = 0; s < Smax; ++s) {
            Rat bs = bernoulli((unsigned)s) / Rat(Int::factorial((unsigned long)s));
            if (bs.is_zero()) continue;
            Rat lvl = bs * Rat::pow(Rat((long)M), s - 1);
            for (long i = 0; i <= imax; ++i) {
                if (skip_normalized && ((s == 0 && i <= 2) || (s == 1 && i == 0)))
                    continue;
                long n = 2 - s - i;
                Rat ifact = Rat(1) / Rat(Int::factorial((unsigned long)i));
                for (long wdeg = std::max<long>(0, i - (Smax + 2));
                     wdeg <= std::min<long>(i, wmax); ++wdeg) {
                    long hj = i - wdeg;
                    long htot = (s - 1) + hj;
                    if (htot >= C.xtrunc) continue;
                    Rat bform = lvl * Rat(Int::binomial(Int(i), (unsigned long)wdeg)) *
                                Rat::pow(Rat(a), hj) * ifact;
                    if (bform.is_zero()) continue;
                    XTS factor = scalar_mul(bform, hj == 0 ? h_to(s - 1)
                                                           : h_to(s - 1) * h_to(hj));
                    if (factor.is_zero()) continue;
                    if (n == 2) {
                        ac_add_atom(lp[(size_t)wdeg], AtomKey{0, j, b}, factor);
                    } else if (n == 1) {
                        ac_add_atom(lp[(size_t)wdeg], AtomKey{1, j, b}, -factor);
                    } else {
                        ac_add_main(lp[(size_t)wdeg], factor * XTS(vcache.at({b, n})));
                    }
                }
            }
        }
    }
    return lp;
}

std::vector<AC> log_one_minus_qZ(const FgiContext& C, unsigned j, long a,
                                 long wmax, long zeta_twist) {
    // 1 - q^a Z e^w = (1 - zeta^b Zs e^{theta}), theta = w + a h,
    // b = a + twist mod M; log = log(1 - zeta^b Zs) + log(1 - g (e^theta - 1))
    // with g = zeta^b Zs / (1 - zeta^b Zs).
    unsigned M = C.M;
    long b = ((a + zeta_twist) % (long)M + (long)M) % (long)M;
    TS y = Cyc::zeta_pow(M, b) * C.Zs[j];
    TS inv1my = (b == 0) ? C.inv1mZs[j]
                         : (TS::constant(Cyc(1), C.N, 1, C.utrunc) - y).inverse();
    TS g = y * inv1my;
    // e^theta - 1 as a w-polynomial: sum_{p+q>=1} w^p (a h)^q / (p+q)! * binom...
    // theta^k/k!: assemble E[wdeg] = sum over k of the x-part
    std::vector<XTS> E((size_t)wmax + 1, XTS(0));
    {
        std::vector<XTS> hpow{XTS(C.ts_const(Cyc(1)))};
        for (long p = 1; p < C.xtrunc + 2; ++p) hpow.push_back(hpow.back() * C.h);
        for (long k = 1; k <= wmax + C.xtrunc + 2; ++k) {
            Rat kf = Rat(1) / Rat(Int::factorial((unsigned long)k));
            for (long wdeg = std::max<long>(0, k - (C.xtrunc + 1));
                 wdeg <= std::min<long>(k, wmax); ++wdeg) {
                long hq = k - wdeg;
                Rat cf = kf * Rat(Int::binomial(Int(k), (unsigned long)wdeg)) *
                         Rat::pow(Rat(a), hq);
                if (cf.is_zero()) continue;
                E[(size_t)wdeg] = E[(size_t)wdeg] + scalar_mul(cf, hpow[(size_t)hq]);
            }
        }
    }
    // u = -g (e^theta - 1); log(1 + u) = sum (-1)^{n+1} u^n / n
    std::vector<XTS> u((size_t)wmax + 1, XTS(0));
    for (long wdeg = 0; wdeg <= wmax; ++wdeg)
        u[(size_t)wdeg] = -(XTS(g) * E[(size_t)wdeg]);
    std::vector<AC> out((size_t)wmax + 1);
    ac_add_atom(out[0], AtomKey{1, j, b}, XTS(C.ts_const(Cyc(1))));
    std::vector<XTS> pw = u;
    // log series: u - u^2/2 + ... with w-truncated convolutions; u has
    // positive (w,x)-order so the loop terminates within the budget
    long nmax_log = wmax + C.xtrunc + 3;
    std::vector<XTS> acc = u;
    for (long n = 2; n <= nmax_log; ++n) {
        std::vector<XTS> np((size_t)wmax + 1, XTS(0));
        bool nz = false;
        for (long a2 = 0; a2 <= wmax; ++a2) {
            if (pw[(size_t)a2].is_zero()) continue;
            for (long b2 = 0; a2 + b2 <= wmax; ++b2) {
                if (u[(size_t)b2].is_zero()) continue;
                XTS add = pw[(size_t)a2] * u[(size_t)b2];
                if (!add.is_zero()) {
                    np[(size_t)(a2 + b2)] = np[(size_t)(a2 + b2)] + add;
                    nz = true;
                }
            }
        }
        if (!nz) break;
        pw = np;
        for (long a2 = 0; a2 <= wmax; ++a2)
            acc[(size_t)a2] = acc[(size_t)a2] +
                scalar_mul(Rat((n % 2) ? 1 : -1, n), pw[(size_t)a2]);
    }
    for (long a2 = 0; a2 <= wmax; ++a2) ac_add_main(out[(size_t)a2], acc[(size_t)a2]);
    return out;
}

} // namespace fgi_detail

W1 psi_factor(const FgiContext& C, unsigned j, long l, long wmax, long zeta_twist) {
    auto lp = fgi_detail::log_poch_bernoulli(C, j, l, wmax, zeta_twist, true);

    // the normalized levels are atom-free by construction; assert it
    for (long wdeg = 0; wdeg <= wmax; ++wdeg)
        for (auto& [at, v] : lp[(size_t)wdeg].atoms)
            if (!v.is_zero())
                throw std::logic_error("psi_factor: unexpected transcendental atom");
    // the polar parts below w^3 and the (w,x) constant must vanish
    for (long wdeg = 0; wdeg <= std::min<long>(2, wmax); ++wdeg) {
        const XTS& v = lp[(size_t)wdeg].main;
        for (long i = v.low(); i < 0 && i < v.high(); ++i)
            if (!v.coeff(i).is_zero())
                throw std::logic_error("psi_factor: residual pole below w^3");
    }
    {
        const XTS& v = lp[0].main;
        if (v.known_order(0) && !v.coeff(0).is_zero())
            throw std::logic_error("psi_factor: nonzero constant term in log psi");
    }

    // exponentiate: w^0 part (x-valuation >= 1) times nilpotent w > 0 part
    W1 out;
    out.c.assign((size_t)wmax + 1, XTS(0));
    XTS e0 = series_exp(lp[0].main.truncated(C.xtrunc));
    W1 rest;
    rest.c.assign((size_t)wmax + 1, XTS(0));
    rest.c[0] = XTS(C.ts_const(Cyc(1)));
    {
        W1 pw = rest;
        for (long n = 1; n <= wmax; ++n) {
            W1 np;
            np.c.assign((size_t)wmax + 1, XTS(0));
            bool nonzero = false;
            for (long a2 = 0; a2 <= wmax; ++a2) {
                if (pw.c[(size_t)a2].is_zero()) continue;
                for (long b2 = 1; a2 + b2 <= wmax; ++b2) {
                    if (lp[(size_t)b2].main.is_zero()) continue;
                    XTS add = pw.c[(size_t)a2] * lp[(size_t)b2].main;
                    if (add.is_zero()) continue;
                    np.c[(size_t)(a2 + b2)] = np.c[(size_t)(a2 + b2)] + add;
                    nonzero = true;
                }
            }
            if (!nonzero) break;
            for (auto& x : np.c) x = scalar_mul(Rat(1, n), x);
            pw = np;
            for (long a2 = 0; a2 <= wmax; ++a2)
                rest.c[(size_t)a2] = rest.c[(size_t)a2] + pw.c[(size_t)a2];
        }
    }
    for (long a2 = 0; a2 <= wmax; ++a2) out.c[(size_t)a2] = e0 * rest.c[(size_t)a2];
    return out;
}

XTS fgi_I(const FgiContext& C, const std::vector<unsigned>& l, long wmax,
          bool include_polar, const std::vector<long>& zeta_twists) {
    unsigned M = C.M, N = C.N;
    const NahmMatrix& A = C.A;
    std::vector<long> tw(N, 0);
    if (!zeta_twists.empty()) tw = zeta_twists;

    // per-variable D_j = psi_j * exp(c_j w_j), c_j = (l^T A)_j + A_jj/2
    std::vector<W1> D;
    for (unsigned j = 0; j < N; ++j) {
        W1 psi = psi_factor(C, j, (long)l[j], wmax, tw[j]);
        Rat cj(0);
        for (unsigned i = 0; i < N; ++i) cj += Rat(A.at(i, j) * (long)l[i]);
        cj += Rat(A.diag(j), 2);
        // multiply by exp(c_j w): convolution with the scalar series
        W1 Dj;
        Dj.c.assign((size_t)wmax + 1, XTS(0));
        Rat p(1);
        std::vector<Rat> expc{Rat(1)};
        for (long a = 1; a <= wmax; ++a) {
            p = p * cj / Rat(a);
            expc.push_back(p);
        }
        for (long a = 0; a <= wmax; ++a) {
            XTS acc(0);
            for (long b = 0; b <= a; ++b) {
                if (expc[(size_t)(a - b)].is_zero() || psi.c[(size_t)b].is_zero()) continue;
                acc = acc + scalar_mul(expc[(size_t)(a - b)], psi.c[(size_t)b]);
            }
            Dj.c[(size_t)a] = acc;
        }
        D.push_back(std::move(Dj));
    }

    // Lambda^{-1} = -diag(1-z) [A diag(1-z) + diag(z)]^{-1}
    std::vector<std::vector<TS>> lam_inv(N, std::vector<TS>(N, TS(C.N, 1, C.utrunc)));
    {
        TS one = TS::constant(Cyc(1), C.N, 1, C.utrunc);
        std::vector<std::vector<TS>> B(N, std::vector<TS>(N, TS(C.N, 1, C.utrunc)));
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j) {
                B[i][j] = Cyc(Rat(A.at(i, j))) * (one - C.z[j]);
                if (i == j) B[i][j] += C.z[j];
            }
        // invert B (constant term = identity) via adjugate / det for N <= 2,
        // Neumann fallback otherwise
        if (N == 1) {
            lam_inv[0][0] = B[0][0].inverse();
        } else if (N == 2) {
            TS det = B[0][0] * B[1][1] - B[0][1] * B[1][0];
            TS dinv = det.inverse();
            lam_inv[0][0] = B[1][1] * dinv;
            lam_inv[1][1] = B[0][0] * dinv;
            lam_inv[0][1] = -(B[0][1] * dinv);
            lam_inv[1][0] = -(B[1][0] * dinv);
        } else {
            throw std::invalid_argument("fgi_I: N > 2 not supported");
        }
        // multiply by -diag(1-z) on the right: (B^{-1})_{ij} -> -(B^{-1})_{ij} (1-z_i)?
        // Lambda^{-1} = -diag(1-z) B^{-1}: row i scaled by (1-z_i), then negated
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j)
                lam_inv[i][j] = -((one - C.z[i]) * lam_inv[i][j]);
    }

    // Wick moments B(a) for even |a| <= wmax, with h folded in
    std::map<std::vector<int>, XTS> moments;
    std::function<XTS(std::vector<int>&)> moment = [&](std::vector<int>& a) -> XTS {
        long tot = 0;
        for (int x : a) tot += x;
        if (tot == 0) return XTS(C.ts_const(Cyc(1)));
        if (tot % 2) return XTS(0);
        auto it = moments.find(a);
        if (it != moments.end()) return it->second;
        unsigned i0 = 0;
        while (a[i0] == 0) ++i0;
        XTS acc(0);
        for (unsigned j = 0; j < N; ++j) {
            long mult = a[j] - (j == i0 ? 1 : 0);
            if (mult <= 0) continue;
            std::vector<int> a2(a);
            a2[i0] -= 1;
            a2[j] -= 1;
            XTS sub = moment(a2);
            if (sub.is_zero()) continue;
            acc = acc + scalar_mul(Rat(mult), XTS(lam_inv[i0][j]) * sub);
        }
        XTS res = C.h * acc;
        moments[a] = res;
        return res;
    };

    // assemble < prod_j D_j(w_j) >
    XTS bracket(0);
    {
        std::vector<int> a(N, 0);
        std::function<void(unsigned, long, XTS)> rec = [&](unsigned j, long rem, XTS cur) {
            if (cur.is_zero()) return;
            if (j == N) {
                long tot = 0;
                for (int x : a) tot += x;
                if (tot % 2) return;
                XTS mom = moment(a);
                if (mom.is_zero()) return;
                bracket = bracket + cur * mom;
                return;
            }
            for (long aj = 0; aj <= rem; ++aj) {
                a[(size_t)j] = (int)aj;
                XTS nxt = cur * D[j].at((size_t)aj);
                rec(j + 1, rem - aj, nxt);
            }
            a[(size_t)j] = 0;
        };
        XTS one = XTS(C.ts_const(Cyc(1)));
        rec(0, wmax, one);
    }

    // prefactors
    XTS result = bracket;
    // z^{(l^T A + diag/2)/M}
    for (unsigned j = 0; j < N; ++j) {
        Rat cj(0);
        for (unsigned i = 0; i < N; ++i) cj += Rat(A.at(i, j) * (long)l[i]);
        cj += Rat(A.diag(j), 2);
        if (!cj.is_zero())
            result = result * XTS(mseries_binpow(C.z[j], cj / Rat((long)M)));
    }
    // middle products over the two r-ranges, with the exact constants
    for (unsigned j = 0; j < N; ++j) {
        long lj = (long)l[j];
        auto base = [&](long a) {
            long b = (a + tw[j]) % (long)M;
            Cyc za = Cyc::zeta_pow(M, b);
            Cyc c0 = Cyc(1) - Cyc::zeta_pow(M, a); // denominator constant
            TS one = TS::constant(Cyc(1), C.N, 1, C.utrunc);
            TS numr = one - za * C.Zs[j];
            return c0.inverse() * numr;
        };
        for (long r = 1; r <= (long)M - 1 - lj; ++r) {
            long a = lj + r;
            result = result * XTS(mseries_binpow(base(a), Rat(1, 2) - Rat(a, (long)M)));
        }
        for (long r = (long)M + 1 - lj; r <= (long)M; ++r) {
            long a = lj + r;
            result = result * XTS(mseries_binpow(base(a), Rat(1, 2) - Rat(a, (long)M)));
            result = C.ts_const(Cyc(1) - Cyc::zeta_pow(M, a)) * result;
        }
    }
    // 1/sqrt(M^N det(-Lambda) prod (1-Zs_j)) computed as a constant-1 series
    {
        TS one = TS::constant(Cyc(1), C.N, 1, C.utrunc);
        std::vector<std::vector<TS>> B(N, std::vector<TS>(N, TS(C.N, 1, C.utrunc)));
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j) {
                B[i][j] = Cyc(Rat(A.at(i, j))) * (one - C.z[j]);
                if (i == j) B[i][j] += C.z[j];
            }
        TS det = (N == 1) ? B[0][0] : B[0][0] * B[1][1] - B[0][1] * B[1][0];
        // R = M^N det(-Lambda) prod(1-Zs) = M^N det prod[(1-Zs_j)/(1-z_j)]
        TS R = det;
        for (unsigned j = 0; j < N; ++j) {
            // (1-Zs)/(1-z) = 1/sum_{s<M} Zs^s
            TS geom(C.N, 1, C.utrunc);
            TS p = one;
            for (unsigned s = 0; s < M; ++s) {
                geom += p;
                if (s + 1 < M) p = p * C.Zs[j];
            }
            R = R * geom.inverse();
        }
        R = Cyc(Rat(Int::pow(Int((long)M), N))) * R;
        result = result * XTS(mseries_binpow(R, Rat(-1, 2)));
    }
    // (-1)^{diag . l} q^{(l^T A l + diag . l)/2} u^l
    {
        long ltal = 0, diagl = 0;
        for (unsigned i = 0; i < N; ++i) {
            diagl += A.diag(i) * (long)l[i];
            for (unsigned j2 = 0; j2 < N; ++j2)
                ltal += A.at(i, j2) * (long)l[i] * (long)l[j2];
        }
        long e = (ltal + diagl) / 2;
        XTS qe = XTS(C.ts_const(C.zeta)) + XTS::monomial(C.ts_const(Cyc(1)), 1);
        qe = qe.truncated(C.xtrunc);
        XTS qpow = series_pow(qe, e >= 0 ? e : -e);
        if (e < 0) qpow = qpow.inverse();
        result = result * qpow;
        if (diagl % 2) result = -result;
        TS umon(C.N, 1, C.utrunc);
        std::vector<int> ev(N);
        for (unsigned i = 0; i < N; ++i) ev[i] = (int)l[i];
        umon.add_term(ev, Cyc(1));
        result = result * XTS(umon);
    }
    if (include_polar) {
        // exp(V(u^M)/(M^2 h))
        long tord = (C.utrunc + (long)M - 1) / (long)M + 1;
        auto V = potential_V(A, tord);
        TS Vu(C.N, 1, C.utrunc);
        for (auto& [e, c] : V.terms()) {
            std::vector<int> eu(e);
            for (auto& x : eu) x *= (int)M;
            long d = 0;
            for (int x : eu) d += x;
            if (d < C.utrunc) Vu.add_term(eu, Cyc(c));
        }
        XTS arg = scalar_mul(Rat(1, (long)M * (long)M), C.hinv * XTS(Vu));
        // exp via u-adic powers (arg has positive u-valuation)
        XTS acc = XTS(C.ts_const(Cyc(1)));
        XTS p = acc;
        long vv = std::max<long>(1, (long)M);
        for (long n = 1; n * vv < C.utrunc; ++n) {
            p = scalar_mul(Rat(1, n), p * arg);
            if (p.is_zero()) break;
            acc = acc + p;
        }
        result = result * acc;
    }
    return result;
}

namespace {

// Repackage an XTS (x-major) into MSX (t-major), rescaling exponents into
// denom-units and truncating x at ordX+1.
MSX xts_to_msx(const XTS& f, unsigned nvars, unsigned denom, long expo_div,
               long ttrunc_scaled, long ordX) {
    MSX out(nvars, denom, ttrunc_scaled);
    std::map<std::vector<int>, XC> rows;
    for (long i = f.low(); i < std::min(f.high(), ordX + 1); ++i) {
        const TS ci = f.coeff(i);
        for (auto& [e, c] : ci.terms()) {
            if (c.is_zero()) continue;
            std::vector<int> e2(e);
            for (auto& x : e2) {
                if (x % (int)expo_div != 0)
                    throw std::logic_error("xts_to_msx: exponent not divisible");
                x /= (int)expo_div;
            }
            long d = 0;
            for (int x : e2) d += x;
            if (d < 0) throw std::logic_error("xts_to_msx: negative exponent survived");
            if (d >= ttrunc_scaled) continue;
            auto it = rows.find(e2);
            if (it == rows.end()) {
                XC xc = XC::zero_to_order(ordX + 1);
                xc.set_coeff(i, c);
                rows[e2] = xc;
            } else {
                it->second.set_coeff(i, it->second.coeff(i) + c);
            }
        }
    }
    long xmin = std::min<long>(f.trunc(), ordX + 1);
    for (auto& [e, xc] : rows) out.add_term(e, xc.truncated(xmin));
    return out;
}

} // namespace

FgiSum fgi_series(const NahmMatrix& A, unsigned m, long ordT_scaled, long ordX,
                  bool include_polar) {
    long wmax = 6 * ordX + 2;
    FgiContext C = make_fgi_context(A, m, ordT_scaled, ordX, wmax);
    XTS total(0);
    std::vector<unsigned> k(A.N, 0);
    while (true) {
        total = total + fgi_I(C, k, wmax, include_polar);
        unsigned pos = 0;
        while (pos < A.N) {
            if (++k[pos] < m) break;
            k[pos] = 0;
            ++pos;
        }
        if (pos == A.N) break;
    }
    FgiSum out;
    out.polar_included = include_polar;
    out.series = xts_to_msx(total, A.N, m, 1, ordT_scaled, ordX);
    long tord = ordT_scaled / (long)m + 2;
    auto V = potential_V(A, tord);
    LSeries<Rat> v1(0, {}, tord);
    if (A.N == 1)
        for (long n = 0; n < tord; ++n) v1.set_coeff(n, V.coeff({(int)n}));
    out.polarV = v1;
    return out;
}

MSX omega_fgi(const NahmMatrix& A, unsigned m, const std::vector<unsigned>& k,
              unsigned mp, long ordT, long ordX) {
    unsigned M = m * mp;
    long ordU = ordT * (long)m + (long)m; // u-window in t^{1/m} units
    long wmax = 6 * ordX + 2;
    FgiContext C = make_fgi_context(A, M, ordU, ordX, wmax);

    // sum over residues l = k mod m in (Z/M)^N
    XTS total(0);
    std::vector<unsigned> l(A.N);
    std::vector<unsigned> step(A.N, 0);
    while (true) {
        for (unsigned j = 0; j < A.N; ++j) l[j] = k[j] + m * step[j];
        total = total + fgi_I(C, l, wmax, true);
        unsigned pos = 0;
        while (pos < A.N) {
            if (++step[pos] < mp) break;
            step[pos] = 0;
            ++pos;
        }
        if (pos == A.N) break;
    }
    // divide by (-1)^{diag.k} q^{(k^T A k + diag.k)/2} u^k and multiply by
    // prod_j (q;q)_{k_j}
    {
        long ktak = 0, diagk = 0;
        for (unsigned i = 0; i < A.N; ++i) {
            diagk += A.diag(i) * (long)k[i];
            for (unsigned j2 = 0; j2 < A.N; ++j2)
                ktak += A.at(i, j2) * (long)k[i] * (long)k[j2];
        }
        long e = (ktak + diagk) / 2;
        XTS qe = XTS(C.ts_const(C.zeta)) + XTS::monomial(C.ts_const(Cyc(1)), 1);
        qe = qe.truncated(C.xtrunc);
        XTS qpow = series_pow(qe, e >= 0 ? e : -e);
        if (e >= 0) qpow = qpow.inverse();
        total = total * qpow;
        if (diagk % 2) total = -total;
        XTS poch = XTS(C.ts_const(Cyc(1)));
        for (unsigned j = 0; j < A.N; ++j) {
            XTS pj = XTS(C.ts_const(Cyc(1)));
            XTS qcur = XTS(C.ts_const(Cyc(1)));
            for (unsigned r = 1; r <= k[j]; ++r) {
                qcur = qcur * qe;
                pj = pj * (XTS(C.ts_const(Cyc(1))) - qcur);
            }
            poch = poch * pj;
        }
        total = total * poch;
        TS umon(C.N, 1, C.utrunc);
        std::vector<int> ev(A.N);
        for (unsigned i = 0; i < A.N; ++i) ev[i] = -(int)k[i];
        umon.add_term(ev, Cyc(1));
        total = total * XTS(umon);
    }
    // u-exponents are multiples of m; rescale to integer t-exponents
    return xts_to_msx(total, A.N, 1, (long)m, ordT + 1, ordX);
}

} // namespace habiro
