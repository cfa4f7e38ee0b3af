#include "habiro/qalg.hpp"

#include <cstring>
#include <sstream>

namespace habiro {

namespace {

// Recursive flat polynomial arithmetic: an element of the level-l algebra is
// a contiguous block of rationals of size dim_l = deg_l * dim_{l-1}.

void add_into(std::vector<Rat>& dst, size_t off, const Rat* src, size_t n, const Rat& scale) {
    for (size_t i = 0; i < n; ++i)
        if (!src[i].is_zero()) dst[off + i] += scale * src[i];
}

// dst += a * b at level l (sizes dim_l); work buffers allocated per call.
void mul_level(const QACtx& ctx, size_t level, const Rat* a, const Rat* b,
               std::vector<Rat>& out) {
    if (level == 0) {
        out[0] += a[0] * b[0];
        return;
    }
    const auto& L = ctx.levels[level - 1];
    size_t sub = L.subdim, deg = L.deg;
    // full product, degree 2 deg - 1 in the top variable
    std::vector<Rat> prod((2 * deg - 1) * sub, Rat(0));
    std::vector<Rat> tmp(sub, Rat(0));
    for (size_t i = 0; i < deg; ++i) {
        bool zi = true;
        for (size_t s = 0; s < sub; ++s)
            if (!a[i * sub + s].is_zero()) { zi = false; break; }
        if (zi) continue;
        for (size_t j = 0; j < deg; ++j) {
            bool zj = true;
            for (size_t s = 0; s < sub; ++s)
                if (!b[j * sub + s].is_zero()) { zj = false; break; }
            if (zj) continue;
            std::fill(tmp.begin(), tmp.end(), Rat(0));
            mul_level(ctx, level - 1, a + i * sub, b + j * sub, tmp);
            for (size_t s = 0; s < sub; ++s)
                if (!tmp[s].is_zero()) prod[(i + j) * sub + s] += tmp[s];
        }
    }
    // reduce top coefficients by the monic modulus
    std::vector<Rat> red(sub, Rat(0));
    for (size_t k = 2 * deg - 1; k-- > deg;) {
        bool zk = true;
        for (size_t s = 0; s < sub; ++s)
            if (!prod[k * sub + s].is_zero()) { zk = false; break; }
        if (zk) continue;
        // prod -= top * (x^{k-deg}) * modulus, i.e. for each j < deg:
        // prod[k-deg+j] -= top * m_j
        for (size_t j = 0; j < deg; ++j) {
            const auto& mj = L.lower_coeffs[j];
            bool zm = true;
            for (auto& v : mj) if (!v.is_zero()) { zm = false; break; }
            if (zm) continue;
            std::fill(red.begin(), red.end(), Rat(0));
            mul_level(ctx, level - 1, prod.data() + k * sub, mj.data(), red);
            for (size_t s = 0; s < sub; ++s)
                if (!red[s].is_zero()) prod[(k - deg + j) * sub + s] -= red[s];
        }
        for (size_t s = 0; s < sub; ++s) prod[k * sub + s] = Rat(0);
    }
    for (size_t i = 0; i < deg * sub; ++i)
        if (!prod[i].is_zero()) out[i] += prod[i];
}

} // namespace

QA::QA(std::shared_ptr<const QACtx> ctx, std::vector<Rat> flat)
    : ctx_(std::move(ctx)), c_(std::move(flat)) {
    unsigned dim = ctx_ ? ctx_->dim : 1;
    c_.resize(dim, Rat(0));
}

std::shared_ptr<QACtx> QA::rational_ctx() {
    auto c = std::make_shared<QACtx>();
    c->dim = 1;
    c->label = "Q";
    return c;
}

std::shared_ptr<QACtx> QA::extend(const std::shared_ptr<const QACtx>& base,
                                  const std::vector<QA>& modulus_lower,
                                  const std::string& label) {
    auto c = std::make_shared<QACtx>();
    if (base) c->levels = base->levels;
    unsigned subdim = base ? base->dim : 1;
    QACtx::Level L;
    L.deg = (unsigned)modulus_lower.size();
    if (L.deg == 0) throw std::invalid_argument("QA::extend: degree must be positive");
    L.subdim = subdim;
    for (auto& m : modulus_lower) {
        std::vector<Rat> flat = m.flat();
        flat.resize(subdim, Rat(0));
        L.lower_coeffs.push_back(std::move(flat));
    }
    c->levels.push_back(std::move(L));
    c->dim = subdim * c->levels.back().deg;
    c->label = (base && !base->label.empty() ? base->label + "." : "") + label;
    return c;
}

QA QA::gen(const std::shared_ptr<const QACtx>& ctx) {
    if (!ctx || ctx->levels.empty())
        throw std::invalid_argument("QA::gen: context has no extension level");
    std::vector<Rat> flat(ctx->dim, Rat(0));
    unsigned sub = ctx->levels.back().subdim;
    flat[sub] = Rat(1);
    return QA(ctx, std::move(flat));
}

QA QA::embedded(const std::shared_ptr<const QACtx>& ctx) const {
    size_t mydim = ctx_ ? ctx_->dim : 1;
    if (ctx->dim < mydim)
        throw std::invalid_argument("QA::embedded: target too small");
    // tower-prefix assumption: flat layout extends by zero padding
    std::vector<Rat> flat = c_;
    flat.resize(ctx->dim, Rat(0));
    return QA(ctx, std::move(flat));
}

Rat QA::rational_part() const {
    if (!is_rational()) throw std::domain_error("QA: not rational");
    return c_[0];
}

void QA::promote(const std::shared_ptr<const QACtx>& ctx) {
    if (!ctx_ || ctx_->dim == 1) {
        Rat v = c_.empty() ? Rat(0) : c_[0];
        ctx_ = ctx;
        c_.assign(ctx ? ctx->dim : 1, Rat(0));
        c_[0] = v;
    }
}

QA operator+(const QA& a, const QA& b) {
    QA x = a, y = b;
    if ((!x.ctx_ || x.ctx_->dim == 1) && y.ctx_ && y.ctx_->dim > 1) x.promote(y.ctx_);
    if ((!y.ctx_ || y.ctx_->dim == 1) && x.ctx_ && x.ctx_->dim > 1) y.promote(x.ctx_);
    if (x.c_.size() != y.c_.size())
        throw std::invalid_argument("QA: mismatched algebras in +");
    for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

QA operator-(const QA& a) {
    QA r = a;
    for (auto& v : r.c_) v = -v;
    return r;
}

QA operator-(const QA& a, const QA& b) { return a + (-b); }

QA operator*(const QA& a, const QA& b) {
    QA x = a, y = b;
    if ((!x.ctx_ || x.ctx_->dim == 1) && y.ctx_ && y.ctx_->dim > 1) x.promote(y.ctx_);
    if ((!y.ctx_ || y.ctx_->dim == 1) && x.ctx_ && x.ctx_->dim > 1) y.promote(x.ctx_);
    if (x.c_.size() != y.c_.size())
        throw std::invalid_argument("QA: mismatched algebras in *");
    if (!x.ctx_ || x.ctx_->dim == 1) {
        QA r;
        r.c_[0] = x.c_[0] * y.c_[0];
        r.ctx_ = x.ctx_;
        return r;
    }
    std::vector<Rat> out(x.ctx_->dim, Rat(0));
    mul_level(*x.ctx_, x.ctx_->levels.size(), x.c_.data(), y.c_.data(), out);
    return QA(x.ctx_, std::move(out));
}

QA QA::inverse() const {
    if (is_zero()) throw std::domain_error("QA: inverse of zero");
    if (!ctx_ || ctx_->dim == 1) {
        QA r = *this;
        r.c_[0] = c_[0].inv();
        return r;
    }
    unsigned n = ctx_->dim;
    // columns: (*this) * basis_j
    std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n + 1, Rat(0)));
    for (unsigned j = 0; j < n; ++j) {
        std::vector<Rat> bj(n, Rat(0));
        bj[j] = Rat(1);
        std::vector<Rat> col(n, Rat(0));
        mul_level(*ctx_, ctx_->levels.size(), c_.data(), bj.data(), col);
        for (unsigned i = 0; i < n; ++i) mat[i][j] = col[i];
    }
    for (unsigned i = 0; i < n; ++i) mat[i][n] = (i == 0) ? Rat(1) : Rat(0);
    // Gaussian elimination over Q
    unsigned row = 0;
    std::vector<long> where(n, -1);
    for (unsigned col = 0; col < n && row < n; ++col) {
        unsigned piv = row;
        while (piv < n && mat[piv][col].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(mat[piv], mat[row]);
        Rat inv = mat[row][col].inv();
        for (unsigned j = col; j <= n; ++j) mat[row][j] *= inv;
        for (unsigned r = 0; r < n; ++r) {
            if (r == row || mat[r][col].is_zero()) continue;
            Rat f = mat[r][col];
            for (unsigned j = col; j <= n; ++j) mat[r][j] -= f * mat[row][j];
        }
        where[col] = row;
        ++row;
    }
    for (unsigned r = row; r < n; ++r)
        if (!mat[r][n].is_zero())
            throw std::domain_error("QA: not invertible (zero divisor)");
    std::vector<Rat> sol(n, Rat(0));
    for (unsigned col = 0; col < n; ++col)
        if (where[col] >= 0) sol[col] = mat[(size_t)where[col]][n];
    // verify (defends against a consistent-but-singular system)
    QA cand(ctx_, sol);
    if (!((*this * cand) == QA(1)))
        throw std::domain_error("QA: not invertible (zero divisor)");
    return cand;
}

std::string QA::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i].str();
    }
    os << "]";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QA& x) { return os << x.str(); }

} // namespace habiro
