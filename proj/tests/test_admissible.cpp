#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "habiro/admissible.hpp"

#include <numeric>

using namespace habiro;

TEST_CASE("DT table for A=3, rows n=2..6") {
    auto dt = extract_dt_rank1(3, 6);
    // row n=1: exceptionally c_{1,3} = 1 and nothing else
    CHECK(dt.coeff(1, 3) == Int(1));
    CHECK(dt.rows.at(1).second.size() == 1);
    struct Row { long n; std::vector<long> c; };
    std::vector<Row> table{
        {2, {1}},
        {3, {1, 1, 0, 1}},
        {4, {1, 1, 2, 1, 2, 1, 1, 0, 1}},
        {5, {1, 2, 3, 4, 4, 5, 4, 4, 3, 3, 2, 2, 1, 1, 0, 1}},
        {6, {1, 2, 5, 7, 11, 11, 15, 13, 15, 13, 14, 10, 12, 8, 8, 6, 6, 3, 4, 2, 2, 1, 1, 0, 1}},
    };
    for (auto& row : table) {
        long i0 = 3 * row.n + 1;
        CHECK(dt.rows.at(row.n).first == i0);
        for (size_t j = 0; j < row.c.size(); ++j)
            CHECK(dt.coeff(row.n, i0 + (long)j) == Int(row.c[j]));
        CHECK(dt.rows.at(row.n).second.size() == row.c.size());
        // support bound: i <= n^2 + n + 1
        CHECK(i0 + (long)row.c.size() - 1 == row.n * row.n + row.n + 1);
    }
}

TEST_CASE("DT round trip: rebuild matches F_A in the computed window") {
    for (long A : {1L, 3L}) {
        long nmax = 5;
        auto dt = extract_dt_rank1(A, nmax);
        long window = 40;
        auto F = rebuild_from_dt(dt, nmax, window);
        for (long n = 0; n <= nmax; ++n) {
            QS direct = fa_t_coeff_rank1(A, n, window);
            QS diff = F[(size_t)n] - direct;
            CHECK(diff.is_zero());
        }
    }
}

TEST_CASE("extraction reports non-admissible input") {
    // perturb F_A by a non-admissible factor: f(t,q) = F_3 * (1 + t q/(something
    // non-product)). A cheap trigger: scale the t^2 coefficient by 1/2 so the
    // extracted exponent becomes non-integral.
    long window = 30;
    auto fgen = [&](long n) {
        QS c = fa_t_coeff_rank1(3, n, window);
        if (n == 2) c = scalar_mul(Rat(1, 2), c);
        return c;
    };
    auto L = extract_Ln_windowed(fgen, 3, window, 2);
    bool integral = true;
    for (long i = L[2].low(); i < L[2].high(); ++i)
        if (!L[2].coeff(i).is_integer()) integral = false;
    CHECK_FALSE(integral);
}

TEST_CASE("L_n for A=3: L_1 = q^3, L_2 = q^7") {
    auto dt = extract_dt_rank1(3, 3);
    CHECK(dt.coeff(1, 3) == Int(1));
    CHECK(dt.coeff(2, 7) == Int(1));
    // L_2 has the single monomial q^7
    CHECK(dt.rows.at(2).second.size() == 1);
}

TEST_CASE("ratio G series: integral Laurent polynomials, g-limits") {
    auto G = ratio_G_series(3, 6);
    // [t^1] G = q^3
    CHECK(G[1] == QS::monomial(Rat(1), 3));
    for (long n = 0; n <= 6; ++n) {
        for (long i = G[(size_t)n].low(); i < G[(size_t)n].high(); ++i)
            CHECK(G[(size_t)n].coeff(i).is_integer());
    }
    // q -> 1 limit is z(t): 1, 1, 3, 12, 55, 273, 1428
    long expect[] = {1, 1, 3, 12, 55, 273, 1428};
    for (long n = 0; n <= 6; ++n) {
        Rat s(0);
        for (long i = G[(size_t)n].low(); i < G[(size_t)n].high(); ++i)
            s += G[(size_t)n].coeff(i);
        CHECK(s == Rat(expect[n]));
    }
}

TEST_CASE("F^sym series: integral Laurent polynomials matching the symmetrized residue") {
    auto S = fsym_series(3, 6);
    CHECK((S[0] - QS(1)).is_zero());
    for (long n = 0; n <= 6; ++n)
        for (long i = S[(size_t)n].low(); i < S[(size_t)n].high(); ++i)
            CHECK(S[(size_t)n].coeff(i).is_integer());
    // q -> 1 limit equals the n-th coefficient of 1/delta(t)
    // 1/delta = 1 + 5t + 28t^2 + 165t^3 + ...
    long expect[] = {1, 5, 28, 165, 1001, 6188, 38760};
    for (long n = 0; n <= 6; ++n) {
        Rat s(0);
        for (long i = S[(size_t)n].low(); i < S[(size_t)n].high(); ++i)
            s += S[(size_t)n].coeff(i);
        CHECK(s == Rat(expect[n]));
    }
}

TEST_CASE("Moebius building block identity") {
    // exp(-sum_{(l,m)=1} q^{kl} t^{nl}/(l(1-q^{ml}))) = prod_{d|m} (q^{dk} t^{dn}; q^{dm})_inf^{mu(d)/d}
    unsigned m = 6;
    long kpow = 2, npow = 1, window = 24, tmax = 6;
    auto mu = [](long d) {
        long r = 1;
        for (long p = 2; p * p <= d; ++p)
            if (d % p == 0) {
                d /= p;
                if (d % p == 0) return 0L;
                r = -r;
            }
        if (d > 1) r = -r;
        return r;
    };
    QS q = QS::var().truncated(window);
    // lhs exponent as t-series of q-series
    std::vector<QS> lg((size_t)tmax + 1, QS(0));
    for (long l = 1; npow * l <= tmax; ++l) {
        if (std::gcd<long>(l, m) != 1) continue;
        QS gi = series_pow(q, kpow * l) * (QS(1) - series_pow(q, (long)m * l)).inverse();
        lg[(size_t)(npow * l)] = lg[(size_t)(npow * l)] - scalar_mul(Rat(1, l), gi);
    }
    // rhs exponent: sum_{d|m} (mu(d)/d) log (q^{dk} t^{dn}; q^{dm})_inf
    std::vector<QS> rg((size_t)tmax + 1, QS(0));
    for (long d = 1; d <= (long)m; ++d) {
        if ((long)m % d != 0 || mu(d) == 0) continue;
        for (long l = 1; d * npow * l <= tmax; ++l) {
            QS gi = series_pow(q, d * kpow * l) * (QS(1) - series_pow(q, d * (long)m * l)).inverse();
            rg[(size_t)(d * npow * l)] =
                rg[(size_t)(d * npow * l)] - scalar_mul(Rat(mu(d), d * l), gi);
        }
    }
    for (long n = 0; n <= tmax; ++n) CHECK((lg[(size_t)n] - rg[(size_t)n]).is_zero());
}

TEST_CASE("level-m decomposition: F_{3,2,0} is 2-admissible at n <= 4") {
    unsigned m = 2;
    long nmax = 4, window = 280;
    auto F = nahm_expansion(NahmMatrix::rank1(3), m, {0}, 1, nmax, 2);
    // t-coefficients as q-series: recompute the congruence sum directly in q
    auto fgen = [&](long n) {
        // n-th t-coefficient of F_{A,m,k}(t^{1/m}, q): term j = n
        long A = 3, kk = 0;
        long nn = kk + (long)m * n;
        long e = (A * nn * nn + A * nn) / 2;
        QS q = QS::var().truncated(window);
        QS poch(1);
        poch = poch.truncated(window);
        for (long r = kk + 1; r <= nn; ++r)
            poch = poch * (QS(1) - series_pow(q, r));
        QS res = series_pow(q, e) * poch.inverse();
        if ((A * (nn - kk)) % 2 != 0) res = -res;
        return res.truncated(window);
    };
    auto v = level_m_decompose(fgen, m, nmax, window, 4);
    CHECK(v.admissible);
    // negative control: scale one coefficient to break Z[1/2]-integrality
    auto fbad = [&](long n) {
        QS c = fgen(n);
        if (n == 2) c = scalar_mul(Rat(1, 3), c);
        return c;
    };
    auto vb = level_m_decompose(fbad, m, nmax, window, 4);
    CHECK_FALSE(vb.admissible);
    // m = 1 reduces to plain extraction
    auto f1 = [&](long n) { return fa_t_coeff_rank1(3, n, window); };
    auto v1 = level_m_decompose(f1, 1, 4, window, 4);
    CHECK(v1.admissible);
    for (long n = 1; n <= 4; ++n) CHECK(v1.denominators[(size_t)n].degree() == 0);
}

TEST_CASE("Dwork quotient integrality for A=3") {
    for (long p : {5L, 7L}) {
        for (unsigned m : {1u, 2u}) {
            for (unsigned kk = 0; kk < m; ++kk) {
                auto v = dwork_quotient_admissible(NahmMatrix::rank1(3), m, {kk}, p, 5, 3);
                CHECK(v.pass);
            }
        }
    }
}

TEST_CASE("Dwork quotient negative control") {
    // perturbing one coefficient by 1/p must fail with a witness: emulate by
    // checking the verdict machinery flags a fabricated p-denominator.
    // Directly: valuation check helper.
    Cyc bad = Cyc(Rat(1, 5));
    CHECK(cyc_valuation(bad, 5) == -1);
    auto ok = dwork_quotient_admissible(NahmMatrix::rank1(3), 1, {0}, 5, 3, 2);
    CHECK(ok.pass);
}
