#include "habiro/nahm.hpp"

#include <algorithm>

namespace habiro {

NahmMatrix NahmMatrix::make(std::vector<std::vector<long>> m) {
    NahmMatrix r;
    r.N = (unsigned)m.size();
    for (auto& row : m)
        if (row.size() != r.N) throw std::invalid_argument("NahmMatrix: not square");
    for (unsigned i = 0; i < r.N; ++i)
        for (unsigned j = 0; j < r.N; ++j)
            if (m[i][j] != m[j][i]) throw std::invalid_argument("NahmMatrix: not symmetric");
    r.a = std::move(m);
    return r;
}

XC q_at_root(unsigned M, long trunc) {
    XC q = XC(Cyc::zeta(M)) + XC::var();
    return q.truncated(trunc);
}

XC q_power_at_root(unsigned M, long e, long trunc) {
    XC q = q_at_root(M, trunc + std::max<long>(0, 1));
    XC p = series_pow(q.truncated(trunc), e >= 0 ? e : -e);
    if (e < 0) p = p.inverse();
    return p.truncated(trunc);
}

std::vector<MSQ> solve_deformed_nahm(const NahmMatrix& A, long ordT) {
    unsigned N = A.N;
    std::vector<MSQ> z(N, MSQ::constant(Rat(1), N, 1, ordT));
    for (long it = 0; it < ordT; ++it) {
        std::vector<MSQ> nz(N, MSQ(N, 1, ordT));
        for (unsigned j = 0; j < N; ++j) {
            MSQ prod = MSQ::constant(Rat(1), N, 1, ordT);
            for (unsigned i = 0; i < N; ++i) {
                long e = A.at(i, j);
                if (e != 0) prod = prod * mseries_pow(z[i], e);
            }
            MSQ tj(N, 1, ordT);
            std::vector<int> ej(N, 0);
            ej[j] = 1;
            tj.add_term(ej, Rat(1));
            MSQ rhs = tj * prod;
            if (A.diag(j) % 2 != 0) rhs = -rhs; // (-1)^{A_jj}
            nz[j] = MSQ::constant(Rat(1), N, 1, ordT) - rhs;
        }
        z = std::move(nz);
    }
    // exact residual check: 1 - z_j - (-1)^{A_jj} t_j z^{A_col j} = 0 to order
    for (unsigned j = 0; j < N; ++j) {
        MSQ prod = MSQ::constant(Rat(1), N, 1, ordT);
        for (unsigned i = 0; i < N; ++i)
            if (A.at(i, j)) prod = prod * mseries_pow(z[i], A.at(i, j));
        MSQ tj(N, 1, ordT);
        std::vector<int> ej(N, 0);
        ej[j] = 1;
        tj.add_term(ej, Rat(1));
        MSQ res = MSQ::constant(Rat(1), N, 1, ordT) - z[j] - ((A.diag(j) % 2) ? -(tj * prod) : tj * prod);
        if (!res.is_zero())
            throw std::logic_error("solve_deformed_nahm: nonzero Nahm residual");
    }
    return z;
}

MSQ potential_V(const NahmMatrix& A, const std::vector<MSQ>& z) {
    unsigned N = A.N;
    long ordT = z[0].trunc();
    MSQ V(N, 1, ordT);
    MSQ one = MSQ::constant(Rat(1), N, 1, ordT);
    std::vector<MSQ> logz(N, MSQ(N, 1, ordT));
    for (unsigned j = 0; j < N; ++j) logz[j] = mseries_log(z[j]);
    for (unsigned j = 0; j < N; ++j) {
        // -Li_2(1 - z_j)
        MSQ u = one - z[j];
        MSQ p = one;
        for (long r = 1; r < ordT; ++r) {
            p = p * u;
            if (p.is_zero()) break;
            V -= Rat(1, (long)r * r) * p;
        }
    }
    for (unsigned i = 0; i < N; ++i)
        for (unsigned j = 0; j < N; ++j)
            if (A.at(i, j))
                V -= Rat(A.at(i, j), 2) * (logz[i] * logz[j]);
    return V;
}

MSQ potential_V(const NahmMatrix& A, long ordT) {
    return potential_V(A, solve_deformed_nahm(A, ordT));
}

MSQ discriminant_delta(const NahmMatrix& A, const std::vector<MSQ>& z) {
    unsigned N = A.N;
    long ordT = z[0].trunc();
    MSQ one = MSQ::constant(Rat(1), N, 1, ordT);
    // M = diag(1-z) A + diag(z)
    std::vector<std::vector<MSQ>> M(N, std::vector<MSQ>(N, MSQ(N, 1, ordT)));
    for (unsigned i = 0; i < N; ++i)
        for (unsigned j = 0; j < N; ++j) {
            M[i][j] = Rat(A.at(i, j)) * (one - z[i]);
            if (i == j) M[i][j] += z[i];
        }
    // determinant by Leibniz expansion (N is tiny)
    MSQ det(N, 1, ordT);
    std::vector<unsigned> perm(N);
    for (unsigned i = 0; i < N; ++i) perm[i] = i;
    do {
        int sgn = 1;
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = i + 1; j < N; ++j)
                if (perm[i] > perm[j]) sgn = -sgn;
        MSQ term = MSQ::constant(Rat(sgn), N, 1, ordT);
        for (unsigned i = 0; i < N; ++i) term = term * M[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (unsigned j = 0; j < N; ++j)
        if (A.diag(j)) det = det * mseries_pow(z[j], -A.diag(j));
    return det;
}

MSQ discriminant_delta(const NahmMatrix& A, long ordT) {
    return discriminant_delta(A, solve_deformed_nahm(A, ordT));
}

namespace {

// Rescale exponent units from denom 1 to denom m, converting to coefficient C.
template <class C>
MultiSeries<C> rescale_to_denom(const MSQ& s, unsigned m, long trunc_scaled) {
    MultiSeries<C> r(s.nvars(), m, trunc_scaled);
    for (auto& [e, c] : s.terms()) {
        std::vector<int> e2(e);
        for (auto& x : e2) x *= (int)m;
        long d = 0;
        for (int x : e2) d += x;
        if (d < trunc_scaled) r.add_term(e2, from_rat<C>(c));
    }
    return r;
}

} // namespace

MultiSeries<Cyc> unit_Um(const NahmMatrix& A, unsigned m, long ordT_scaled) {
    unsigned N = A.N;
    long ordT = (ordT_scaled + (long)m - 1) / (long)m + 1; // inner integer t-order
    auto z = solve_deformed_nahm(A, ordT);
    using MSC = MultiSeries<Cyc>;
    auto lift = [&](const MSQ& s) { return rescale_to_denom<Cyc>(s, m, ordT_scaled); };
    MSC one = MSC::constant(Cyc(1), N, m, ordT_scaled);

    Cyc zeta = Cyc::zeta(m);
    // zroot[j] = z_j^{1/m}
    std::vector<MSC> zroot(N, one), zl(N, one);
    for (unsigned j = 0; j < N; ++j) {
        zl[j] = lift(z[j]);
        zroot[j] = mseries_binpow(zl[j], Rat(1, (long)m));
    }

    MSC pref = one;
    for (unsigned j = 0; j < N; ++j) {
        // (1 - z_j)/(1 - z_j^{1/m}) = sum_{s<m} z_j^{s/m}
        MSC ratio(N, m, ordT_scaled);
        for (unsigned s = 0; s < m; ++s)
            ratio += mseries_binpow(zl[j], Rat((long)s, (long)m));
        pref = pref * ratio;
        // D_{zeta}(1)/D_{zeta}(z^{1/m}) = prod_l ((1-zeta^l)/(1-zeta^l z^{1/m}))^{l/m}
        for (unsigned l = 1; l < m; ++l) {
            Cyc c = Cyc(1) - Cyc::zeta_pow(m, (long)l);
            MSC base = c.inverse() * (one - Cyc::zeta_pow(m, (long)l) * zroot[j]);
            pref = pref * mseries_binpow(base, Rat(-(long)l, (long)m));
        }
    }

    MSC sum(N, m, ordT_scaled);
    std::vector<unsigned> k(N, 0);
    while (true) {
        // term for this congruence class k
        long ktak = 0, diagk = 0;
        for (unsigned i = 0; i < N; ++i) {
            diagk += A.diag(i) * (long)k[i];
            for (unsigned j = 0; j < N; ++j) ktak += A.at(i, j) * (long)k[i] * (long)k[j];
        }
        long e1 = (diagk + ktak) / 2; // integral: A_ii k_i(k_i+1) is even
        Cyc root = Cyc::zeta_pow(m, e1) * Cyc::zeta_pow(4, ktak);
        MSC term = MSC::constant(root, N, m, ordT_scaled);
        // t^{k/m}
        std::vector<int> ek(N, 0);
        for (unsigned i = 0; i < N; ++i) ek[i] = (int)k[i];
        MSC tk(N, m, ordT_scaled);
        tk.add_term(ek, Cyc(1));
        term = term * tk;
        // z^{A k / m + diag(A)(1/(2m) - 1/2)}
        for (unsigned j = 0; j < N; ++j) {
            Rat expo(0);
            for (unsigned i = 0; i < N; ++i) expo += Rat(A.at(i, j) * (long)k[i], (long)m);
            expo += Rat(A.diag(j)) * (Rat(1, 2 * (long)m) - Rat(1, 2));
            term = term * mseries_binpow(zl[j], expo);
        }
        // 1 / prod_j (zeta z_j^{1/m}; zeta)_{k_j}
        for (unsigned j = 0; j < N; ++j) {
            MSC poch = one;
            for (unsigned l = 1; l <= k[j]; ++l)
                poch = poch * (one - Cyc::zeta_pow(m, (long)l) * zroot[j]);
            term = term * poch.inverse();
        }
        sum += term;
        // next k
        unsigned pos = 0;
        while (pos < N) {
            if (++k[pos] < m) break;
            k[pos] = 0;
            ++pos;
        }
        if (pos == N) break;
    }

    MSC raw = pref * sum;
    Cyc c0 = raw.coeff(std::vector<int>(N, 0));
    if (c0.is_zero()) throw std::logic_error("unit_Um: vanishing constant term");
    return c0.inverse() * raw;
}

namespace {

struct PochCache {
    // pochinv[i][n] = 1 / prod_{r=1}^{n} (1 - q^{k_i + r}) at q = zeta_M + x
    std::vector<std::vector<XC>> pochhammer;
    std::vector<std::vector<long>> zeros; // pole budget per (i, n)
};

PochCache build_poch(const std::vector<unsigned>& k, unsigned M, long nmax, long window) {
    unsigned N = (unsigned)k.size();
    PochCache pc;
    pc.pochhammer.assign(N, {});
    pc.zeros.assign(N, {});
    for (unsigned i = 0; i < N; ++i) {
        XC cur(1);
        cur = cur.truncated(window);
        long z = 0;
        pc.pochhammer[i].push_back(cur);
        pc.zeros[i].push_back(0);
        for (long n = 1; n <= nmax; ++n) {
            long r = (long)k[i] + n;
            XC factor = XC(1) - q_power_at_root(M, r, window);
            if (r % (long)M == 0) ++z;
            cur = (cur * factor).truncated(window);
            pc.pochhammer[i].push_back(cur);
            pc.zeros[i].push_back(z);
        }
    }
    return pc;
}

} // namespace

MSX nahm_expansion(const NahmMatrix& A, unsigned m, const std::vector<unsigned>& k,
                   unsigned mp, long ordT, long ordX) {
    unsigned N = A.N;
    if (k.size() != N) throw std::invalid_argument("nahm_expansion: k arity mismatch");
    for (unsigned x : k)
        if (x >= m) throw std::invalid_argument("nahm_expansion: need 0 <= k_j < m");
    unsigned M = m * mp;
    long jmax = ordT; // total degree in t < ordT + 1 handled below
    // worst-case pole budget: zeros among exponents (k_i, k_i + m*jmax]
    long window = ordX + 1;
    long budget = 0;
    for (unsigned i = 0; i < N; ++i)
        for (long r = (long)k[i] + 1; r <= (long)k[i] + m * jmax; ++r)
            if (r % (long)M == 0) ++budget;
    long full_window = window + budget + 1;
    PochCache pc = build_poch(k, M, m * jmax, full_window);

    MSX out(N, 1, ordT + 1);
    std::vector<long> j(N, 0);
    while (true) {
        long tot = 0;
        for (long x : j) tot += x;
        if (tot <= ordT) {
            // n = k + m j
            std::vector<long> n(N);
            for (unsigned i = 0; i < N; ++i) n[i] = (long)k[i] + m * j[i];
            long ntan = 0, ktak = 0, diag_nk = 0;
            for (unsigned i = 0; i < N; ++i) {
                diag_nk += A.diag(i) * (n[i] - (long)k[i]);
                for (unsigned jj = 0; jj < N; ++jj) {
                    ntan += A.at(i, jj) * n[i] * n[jj];
                    ktak += A.at(i, jj) * (long)k[i] * (long)k[jj];
                }
            }
            long e = (ntan - ktak + diag_nk) / 2;
            long zcount = 0;
            for (unsigned i = 0; i < N; ++i) zcount += pc.zeros[i][(size_t)(n[i] - k[i])];
            XC term = q_power_at_root(M, e, window + zcount);
            if (diag_nk % 2 != 0) term = -term;
            for (unsigned i = 0; i < N; ++i) {
                const XC& poch = pc.pochhammer[i][(size_t)(n[i] - k[i])];
                XC pt = poch.truncated(window + zcount);
                XC inv = pt.normalized().inverse();
                if (-inv.low() > pc.zeros[i][(size_t)(n[i] - k[i])])
                    throw std::logic_error("nahm_expansion: pole budget exceeded");
                term = term * inv;
            }
            term = term.truncated(window);
            std::vector<int> te(N);
            for (unsigned i = 0; i < N; ++i) te[i] = (int)j[i];
            out.add_term(te, term);
        }
        unsigned pos = 0;
        while (pos < N) {
            if (++j[pos] + 0 <= ordT) {
                long t2 = 0;
                for (long x : j) t2 += x;
                if (t2 <= ordT) break;
            }
            j[pos] = 0;
            ++pos;
        }
        if (pos == N) break;
    }
    return out;
}

MSX nahm_full_expansion(const NahmMatrix& A, unsigned m, long ordT_scaled, long ordX) {
    unsigned N = A.N;
    long nmax = ordT_scaled; // scaled exponent n_i < ordT_scaled in units 1/m
    long window = ordX + 1;
    long budget = 0;
    std::vector<unsigned> k0(N, 0);
    for (long r = 1; r <= nmax; ++r)
        if (r % (long)m == 0) budget += N;
    long full_window = window + budget + 1;
    PochCache pc = build_poch(k0, m, nmax, full_window);

    MSX out(N, m, ordT_scaled);
    std::vector<long> n(N, 0);
    while (true) {
        long tot = 0;
        for (long x : n) tot += x;
        if (tot < ordT_scaled) {
            long ntan = 0, diagn = 0;
            for (unsigned i = 0; i < N; ++i) {
                diagn += A.diag(i) * n[i];
                for (unsigned jj = 0; jj < N; ++jj) ntan += A.at(i, jj) * n[i] * n[jj];
            }
            long e = (ntan + diagn) / 2;
            long zcount = 0;
            for (unsigned i = 0; i < N; ++i) zcount += pc.zeros[i][(size_t)n[i]];
            XC term = q_power_at_root(m, e, window + zcount);
            if (diagn % 2 != 0) term = -term;
            for (unsigned i = 0; i < N; ++i)
                term = term * pc.pochhammer[i][(size_t)n[i]].truncated(window + zcount)
                                  .normalized().inverse();
            term = term.truncated(window);
            std::vector<int> te(N);
            for (unsigned i = 0; i < N; ++i) te[i] = (int)n[i];
            out.add_term(te, term);
        }
        unsigned pos = 0;
        while (pos < N) {
            if (++n[pos] < ordT_scaled) {
                long t2 = 0;
                for (long x : n) t2 += x;
                if (t2 < ordT_scaled) break;
            }
            n[pos] = 0;
            ++pos;
        }
        if (pos == N) break;
    }
    return out;
}

MSX mseries_log_xt(const MSX& f) {
    XC c0 = f.coeff(std::vector<int>(f.nvars(), 0));
    if (!(c0 - XC(1)).is_zero())
        throw std::domain_error("mseries_log_xt: constant term must be 1");
    MSX one = MSX::constant(XC(1), f.nvars(), f.denom(), f.trunc());
    MSX v = f - one;
    MSX acc(f.nvars(), f.denom(), f.trunc());
    MSX p = one;
    long vv = std::max<long>(1, v.valuation());
    for (long k = 1; k * vv < f.trunc(); ++k) {
        p = p * v;
        if (p.is_zero()) break;
        acc = acc + from_rat<XC>(Rat((k % 2) ? 1 : -1, k)) * p;
    }
    return acc;
}

WkbRank1 wkb_rank1(long A, unsigned ordH) {
    using HP = LSeries<PolyQ>; // series in h with Q[X] coefficients
    long K = (long)ordH;
    PolyQ X = PolyQ::x();
    PolyQ Delta = X * (Rat(A) * X + PolyQ({Rat(1)})) *
                  (Rat(A - 1) * X + PolyQ({Rat(1)}));
    auto D = [&](const PolyQ& p) { return Delta * p.derivative(); }; // t d/dt

    // Solve for b_k order by order from
    // log(1 + (AX+1)/X (e^B - 1)) = A B + sum_{j in J} sum_{r>=1} (j h)^r / r! D^r(log z + B)
    // where the j-sum runs over 0..A-1 (or the negative convention for A<=0);
    // the h^K coefficient isolates b_K via multiplication by X.
    std::vector<PolyQ> b(1, PolyQ()); // b[0] unused
    std::vector<long> jlist;
    long jsign = 1;
    if (A >= 1) {
        for (long j = 0; j < A; ++j) jlist.push_back(j);
    } else {
        for (long j = A; j <= -1; ++j) jlist.push_back(j);
        jsign = -1;
    }
    PolyQ LoverX = Rat(A) * X + PolyQ({Rat(1)}); // (AX+1); (z/(z-1)) = (AX+1)/X

    for (long Kcur = 1; Kcur <= K; ++Kcur) {
        // B_known = sum b_k h^k for k < Kcur (b_Kcur unknown)
        HP B = HP::zero_to_order(Kcur + 1);
        for (long kk = 1; kk < Kcur; ++kk) B.set_coeff(kk, b[(size_t)kk]);
        // LHS with b_Kcur = 0
        HP eB = series_exp(B);
        HP inner = HP(PolyQ({Rat(1)}));
        inner = inner.truncated(Kcur + 1);
        // (AX+1)/X (e^B - 1): the polynomial (e^B-1) coefficients are in X Q[X]
        HP diff = eB - HP(PolyQ({Rat(1)}));
        HP lhs_arg = HP::zero_to_order(Kcur + 1);
        for (long kk = 1; kk <= Kcur; ++kk) {
            if (!diff.known_order(kk)) break;
            PolyQ p = diff.coeff(kk);
            // exact division by X
            if (!p.is_zero() && !p.coeff(0).is_zero())
                throw std::logic_error("wkb_rank1: e^B - 1 coefficient not divisible by X");
            PolyQ q = p.is_zero() ? PolyQ() : PolyQ([&] {
                std::vector<Rat> c(p.coeffs().begin() + 1, p.coeffs().end());
                return c;
            }());
            lhs_arg.set_coeff(kk, LoverX * q);
        }
        // log(1 + lhs_arg)
        HP lhs = series_log(HP(PolyQ({Rat(1)})).truncated(Kcur + 1) + lhs_arg);

        // RHS with b_Kcur = 0: A*B + sum_j sum_r (j h)^r/r! D^r(log z + B)
        HP rhs = HP::zero_to_order(Kcur + 1);
        for (long kk = 1; kk < Kcur; ++kk)
            rhs.set_coeff(kk, Rat(A) * b[(size_t)kk]);
        // D^r log z: D^0 log z excluded (r >= 1): D^1 log z = X
        for (long jv : jlist) {
            if (jv == 0) continue;
            Rat jr((long)jv);
            // terms D^r(log z): start at X
            PolyQ cur = X;
            Rat fact(1);
            Rat jpow(1);
            for (long r = 1; r <= Kcur; ++r) {
                fact = fact * Rat(r);
                jpow = jpow * jr;
                PolyQ contrib = Rat(jsign) * (jpow / fact) * cur;
                rhs.set_coeff(r, rhs.coeff(r) + contrib);
                cur = D(cur);
            }
            // terms D^r(B): b_k-pieces shift by r in h
            for (long kk = 1; kk < Kcur; ++kk) {
                PolyQ curb = b[(size_t)kk];
                Rat factb(1);
                Rat jpb(1);
                for (long r = 1; kk + r <= Kcur; ++r) {
                    factb = factb * Rat(r);
                    jpb = jpb * jr;
                    curb = D(curb);
                    rhs.set_coeff(kk + r, rhs.coeff(kk + r) + Rat(jsign) * (jpb / factb) * curb);
                }
            }
        }

        // h^Kcur: lhs_K + (AX+1)/X b_K = rhs_K + A b_K  =>  b_K = X (rhs_K - lhs_K)
        PolyQ bK = X * (rhs.coeff(Kcur) - lhs.coeff(Kcur));
        b.push_back(bK);
        if (Kcur >= 2) {
            // internal check: b_K in X Delta Q[X]
            PolyQ q, r;
            PolyQ::divmod(bK, X * Delta, q, r);
            if (!r.is_zero())
                throw std::logic_error("wkb_rank1: b_k not in X*Delta*Q[X]");
        }
    }

    // c_k = int b_{k+1} dX/Delta + sum_{s=1}^{k} B_s/s! D^{s-1} b_{k+1-s}
    //       + B_{k+1}/(k+1)! D^{k-1} X   (k >= 1)
    std::vector<PolyQ> c(1, PolyQ());
    for (long kk = 1; kk + 1 <= K; ++kk) {
        PolyQ q, r;
        PolyQ::divmod(b[(size_t)(kk + 1)], Delta, q, r);
        if (!r.is_zero()) throw std::logic_error("wkb_rank1: b_{k+1} not divisible by Delta");
        // integrate q dX with constant 0
        std::vector<Rat> ic(q.coeffs().size() + 1, Rat(0));
        for (size_t i = 0; i < q.coeffs().size(); ++i)
            ic[i + 1] = q.coeffs()[i] / Rat((long)i + 1);
        PolyQ ck{std::vector<Rat>(ic)};
        for (long s = 1; s <= kk; ++s) {
            PolyQ cur = b[(size_t)(kk + 1 - s)];
            for (long r2 = 1; r2 < s; ++r2) cur = D(cur);
            ck = ck + (bernoulli((unsigned)s) / Rat(Int::factorial((unsigned long)s))) * cur;
        }
        {
            PolyQ cur = X;
            for (long r2 = 1; r2 < kk; ++r2) cur = D(cur);
            ck = ck + (bernoulli((unsigned)(kk + 1)) / Rat(Int::factorial((unsigned long)(kk + 1)))) * cur;
        }
        c.push_back(ck);
    }

    WkbRank1 out;
    out.A = A;
    out.b = std::move(b);
    out.c = std::move(c);
    return out;
}

} // namespace habiro
