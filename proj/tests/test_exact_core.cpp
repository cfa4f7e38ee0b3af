#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "habiro/exact_core.hpp"
#include "habiro/series.hpp"
#include "habiro/cyclotomic.hpp"

#include <random>

using namespace habiro;

using QS = LSeries<Rat>;

TEST_CASE("rational basics") {
    Rat a(1, 2), b(1, 3);
    CHECK(a + b == Rat(5, 6));
    CHECK((a * b).str() == "1/6");
    CHECK(Rat(Int("123456789012345678901234567890"), Int(3)).num().str() ==
          "41152263004115226300411522630");
    CHECK(Rat(4, -6) == Rat(-2, 3));
    CHECK(Rat(-2, 3).den() == Int(3));
    CHECK(Rat(7, 5).valuation(Int(5)) == -1);
    CHECK(Rat(50, 3).valuation(Int(5)) == 2);
}

TEST_CASE("series product: polynomial identities") {
    QS x = QS::var();
    QS one(1);
    CHECK((one + x) * (one - x) == one - x * x);
    // x^{-1} * x = 1
    QS xinv = QS::monomial(Rat(1), -1);
    CHECK(xinv * x == one);
}

TEST_CASE("series product: geometric series at the truncation boundary") {
    // (1 + x + ... + x^9 truncated at 10) * (1-x) = 1 + O(x^9): the product's
    // truncation order is min(trunc_a + low_b, trunc_b + low_a) = 10, and the
    // only surviving coefficient below it is the constant 1... except the
    // boundary term -x^10 is cut.
    QS geo(0, std::vector<Rat>(10, Rat(1)), 10);
    QS x = QS::var();
    QS prod = geo * (QS(1) - x);
    CHECK(prod.trunc() == 10);
    CHECK(prod.coeff(0) == Rat(1));
    for (long k = 1; k < 10; ++k) CHECK(prod.coeff(k) == Rat(0));
    CHECK_THROWS_AS((void)prod.coeff(10), std::out_of_range);
}

TEST_CASE("series exp/log round trips") {
    QS x = QS::var();
    QS lg = series_log((QS(1) + x).truncated(12));
    // log(1+x) = x - x^2/2 + x^3/3 - ...
    for (long k = 1; k < 12; ++k)
        CHECK(lg.coeff(k) == Rat(k % 2 ? 1 : -1, k));
    CHECK(series_exp(QS::zero_to_order(8)) == QS(1).truncated(8));
    QS back = series_exp(lg);
    CHECK(back.coeff(0) == Rat(1));
    CHECK(back.coeff(1) == Rat(1));
    for (long k = 2; k < 12; ++k) CHECK(back.coeff(k) == Rat(0));
}

TEST_CASE("series exp rejects nonzero constant term") {
    QS x = QS::var();
    CHECK_THROWS_AS((void)series_exp(QS(1) + x), std::domain_error);
}

TEST_CASE("series ring axioms on randomized truncated series") {
    std::mt19937 rng(42);
    auto rand_series = [&](long low, long trunc) {
        std::vector<Rat> c((size_t)(trunc - low));
        for (auto& v : c)
            v = Rat((long)(rng() % 19) - 9, 1 + (long)(rng() % 7));
        return QS(low, std::move(c), trunc);
    };
    for (int iter = 0; iter < 30; ++iter) {
        QS a = rand_series(-(long)(rng() % 3), 4 + (long)(rng() % 4));
        QS b = rand_series(-(long)(rng() % 3), 4 + (long)(rng() % 4));
        QS c = rand_series(-(long)(rng() % 3), 4 + (long)(rng() % 4));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("log of product is sum of logs") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<Rat> ca{Rat(1)}, cb{Rat(1)};
        for (int k = 1; k < 9; ++k) {
            ca.push_back(Rat((long)(rng() % 11) - 5, 1 + (long)(rng() % 5)));
            cb.push_back(Rat((long)(rng() % 11) - 5, 1 + (long)(rng() % 5)));
        }
        QS a(0, std::move(ca), 9), b(0, std::move(cb), 9);
        CHECK(series_log(a * b) == series_log(a) + series_log(b));
    }
}

TEST_CASE("q-Pochhammer basics") {
    QS q = QS::var(); // symbolic q
    CHECK(q_pochhammer(0u, q) == QS(1));
    QS p2 = q_pochhammer(2u, q);
    // 1 - q - q^2 + q^3
    CHECK(p2.coeff(0) == Rat(1));
    CHECK(p2.coeff(1) == Rat(-1));
    CHECK(p2.coeff(2) == Rat(-1));
    CHECK(p2.coeff(3) == Rat(1));
}

TEST_CASE("Pochhammer leading term at roots of unity: D_{m,l} = m^{2l-1}(l-1)!") {
    // (q;q)_{ml-1} at q = zeta_m(1-u) has lowest term D_{m,l} u^{l-1}.
    // m = 2, l = 2: (q;q)_3 -> 8u + O(u^2).
    using CS = LSeries<Cyc>;
    for (unsigned m = 1; m <= 6; ++m) {
        for (unsigned l = 1; l <= 6; ++l) {
            if (m * l > 18) continue;
            Cyc zm = Cyc::zeta(m);
            CS u = CS::var();
            CS q = (Cyc(Rat(1)) * zm) * (CS(1) - u).truncated((long)l + 1);
            CS poch = q_pochhammer(m * l - 1, q);
            Rat expect = Rat(Int::pow(Int((long)m), 2 * l - 1)) * Rat(Int::factorial(l - 1));
            for (long k = 0; k < (long)l - 1; ++k) CHECK(poch.coeff(k).is_zero());
            CHECK(poch.coeff((long)l - 1) == Cyc(expect));
        }
    }
}

TEST_CASE("Bernoulli numbers and polynomials") {
    CHECK(bernoulli(0) == Rat(1));
    CHECK(bernoulli(1) == Rat(-1, 2));
    CHECK(bernoulli(2) == Rat(1, 6));
    CHECK(bernoulli(3) == Rat(0));
    CHECK(bernoulli(12) == Rat(-691, 2730));
    PolyQ b1 = bernoulli_poly(1);
    CHECK(b1.coeff(1) == Rat(1));
    CHECK(b1.coeff(0) == Rat(-1, 2));
    CHECK(bernoulli_poly(0).coeff(0) == Rat(1));

    // generating series check: x e^{xy} / (e^x - 1) = sum B_k(y)/k! x^k,
    // tested at y = 1/3 to order 10.
    Rat y(1, 3);
    QS x = QS::var();
    long N = 11;
    QS expxy(1);
    QS term(1);
    for (long k = 1; k < N; ++k) {
        term = (term * scalar_mul(y * Rat(1, k), x)).truncated(N);
        expxy = expxy + term;
    }
    expxy = expxy.truncated(N);
    QS em1 = series_exp(x.truncated(N)) - QS(1);
    QS lhs = x * expxy * em1.inverse();
    for (unsigned k = 0; k + 1 < (unsigned)N; ++k) {
        Rat expect = bernoulli_poly(k).eval(y) / Rat(Int::factorial(k));
        CHECK(lhs.coeff(k) == expect);
    }
}

TEST_CASE("resultant agrees with known cyclotomic norms") {
    // res(Phi_3, x - 1) = Phi_3(1) = 3
    PolyZ phi3 = cyclotomic_poly(3);
    CHECK(resultant(phi3, PolyZ({Int(-1), Int(1)})) == Int(3));
    CHECK(resultant(cyclotomic_poly(4), PolyZ({Int(-1), Int(1)})) == Int(2));
    // res(x^2+1, x^2-2) = (i^2-2)((-i)^2-2) = 9
    CHECK(resultant(PolyZ({Int(1), Int(0), Int(1)}), PolyZ({Int(-2), Int(0), Int(1)})) == Int(9));
}
