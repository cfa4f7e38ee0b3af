#include "habiro/zmodel.hpp"

namespace habiro {

ZModel z_model(long A) {
    ZModel M;
    M.A = A;
    M.z = RF::var();
    // t = (1-z)(-1)^A z^{-A}
    RF t = (RF(1) - M.z) / RatFunc<Rat>(Poly<Rat>::monomial(Rat(1), (size_t)std::max<long>(A, 0)));
    if (A < 0) t = (RF(1) - M.z) * RatFunc<Rat>(Poly<Rat>::monomial(Rat(1), (size_t)(-A)));
    if (A % 2 != 0) t = -t;
    M.t = t;
    return M;
}

RF ZModel::t_ddt(const RF& f) const {
    // t f'(z) / (dt/dz)
    RF dt = t.derivative();
    return t * f.derivative() / dt;
}

RF tz_polynomial(const ZModel& M, const std::vector<std::vector<Rat>>& c) {
    RF acc;
    RF zp(1);
    for (size_t j = 0; j < c.size(); ++j) {
        RF tp(1);
        RF row;
        for (size_t i = 0; i < c[j].size(); ++i) {
            if (!c[j][i].is_zero()) row += RF(c[j][i]) * tp;
            tp = tp * M.t;
        }
        acc += zp * row;
        zp = zp * M.z;
    }
    return acc;
}

std::vector<RF> ratio_g_alg(long A, unsigned ordX) {
    if (A < 1) throw std::invalid_argument("ratio_g_alg: needs A >= 1");
    ZModel M = z_model(A);
    long K = (long)ordX;
    using XS = LSeries<RF>;
    // h = log(1+x)
    XS h = XS::zero_to_order(K + 1);
    for (long s = 1; s <= K; ++s) h.set_coeff(s, RF(Rat((s % 2) ? 1 : -1, s)));

    std::vector<RF> g{M.z};
    for (long kcur = 1; kcur <= K; ++kcur) {
        XS G = XS::zero_to_order(kcur + 1);
        for (long i = 0; i < kcur; ++i) G.set_coeff(i, g[(size_t)i]);
        // E = 1 - G - (-q)^A t prod_{j=0}^{A-1} G(q^j t)  (the ratio satisfies
        // 1 - G = (-q)^A t G(t) G(qt) ... G(q^{A-1} t))
        // where G(q^j t) = sum_s (j h)^s / s! (t d/dt)^s G.
        XS prod = XS(RF(1)).truncated(kcur + 1);
        for (long j = 0; j < A; ++j) {
            XS Gj = XS::zero_to_order(kcur + 1);
            // (t d/dt)^s of each coefficient of G
            std::vector<RF> cur(g.begin(), g.begin() + kcur);
            // s = 0 term
            for (long i = 0; i < kcur; ++i) Gj.set_coeff(i, cur[(size_t)i]);
            if (j > 0) {
                XS hs = XS(RF(1)).truncated(kcur + 1);
                Rat fact(1);
                for (long s = 1; s <= kcur; ++s) {
                    for (auto& v : cur) v = M.t_ddt(v);
                    hs = (hs * h).truncated(kcur + 1);
                    fact *= Rat(s);
                    XS dcur = XS::zero_to_order(kcur + 1);
                    for (long i = 0; i < kcur; ++i) dcur.set_coeff(i, cur[(size_t)i]);
                    Rat jp = Rat::pow(Rat(j), s);
                    Gj = Gj + scalar_mul(jp / fact, (hs * dcur).truncated(kcur + 1));
                }
            }
            prod = (prod * Gj).truncated(kcur + 1);
        }
        // (-q)^A = (-1)^A (1+x)^A
        XS qA = XS::zero_to_order(kcur + 1);
        for (long s = 0; s <= std::min<long>(kcur, A); ++s)
            qA.set_coeff(s, RF(Rat(Int::binomial(Int(A), (unsigned long)s))));
        if (A % 2 != 0) qA = -qA;
        XS E = XS(RF(1)).truncated(kcur + 1) - G - (RF(M.t) * (qA * prod)).truncated(kcur + 1);
        RF eps = E.coeff(kcur);
        // d E / d g_k at x^0-order: -1 - A (1-z)/z
        RF phi = RF(Rat(-1)) - RF(Rat(A)) * (RF(1) - M.z) / M.z;
        g.push_back(-(eps / phi));
    }
    return g;
}

} // namespace habiro
