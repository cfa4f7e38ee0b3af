#include "habiro/residue.hpp"

namespace habiro {

std::vector<RF> residue_psi_rank1_alg(long A, unsigned ordX) {
    ZModel M = z_model(A);
    auto series = j_series_q1<RF>(JShape::rank1(A), M.t, ordX);
    std::vector<RF> out;
    out.reserve(series.size());
    for (auto& f : series) out.push_back(residue_at(f, M.z));
    return out;
}

std::vector<QA> residue_psi_rank1_t1(long A, unsigned ordX,
                                     std::shared_ptr<const QACtx>* ctx_out) {
    if (A < 2) throw std::invalid_argument("residue_psi_rank1_t1: need A >= 2");
    // Nahm equation at t = 1: z^A + (-1)^A (z - 1) = 0 (monic).
    auto base = QA::rational_ctx();
    std::vector<QA> modulus((size_t)A, QA(0));
    long s = (A % 2) ? -1 : 1;
    modulus[0] = QA(-s); // constant term: (-1)^A * (-1)
    modulus[1] = modulus[1] + QA(s);
    auto ctx = QA::extend(base, modulus, "nahm_t1");
    if (ctx_out) *ctx_out = ctx;
    QA z = QA::gen(ctx);
    auto series = j_series_q1<QA>(JShape::rank1(A), QA(1), ordX);
    std::vector<QA> out;
    out.reserve(series.size());
    for (auto& f : series) out.push_back(residue_at(f, z));
    return out;
}

} // namespace habiro
