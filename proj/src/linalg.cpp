#include "linalg.hpp"

#include "error.hpp"

namespace cmnf {

QMat QMat::identity(int m) {
    QMat r(m, m);
    for (int i = 0; i < m; ++i) r.at(i, i) = GaussRat(1);
    return r;
}

QMat QMat::conj_transpose() const {
    QMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
}

QMat QMat::transpose() const {
    QMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

QMat operator*(const QMat& a, const QMat& b) {
    if (a.cols_ != b.rows_) fail_internal("QMat multiply shape mismatch");
    QMat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const GaussRat& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                const GaussRat& bkj = b.at(k, j);
                if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

QMat operator+(const QMat& a, const QMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail_internal("QMat add shape mismatch");
    QMat r = a;
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) r.at(i, j) += b.at(i, j);
    return r;
}

QMat operator-(const QMat& a, const QMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail_internal("QMat sub shape mismatch");
    QMat r = a;
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) r.at(i, j) -= b.at(i, j);
    return r;
}

std::vector<GaussRat> QMat::apply(const std::vector<GaussRat>& x) const {
    if (static_cast<int>(x.size()) != cols_) fail_internal("QMat apply shape mismatch");
    std::vector<GaussRat> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !x[j].is_zero()) r[i] += at(i, j) * x[j];
    return r;
}

QMat QMat::row_scaled(const std::vector<Rat>& w) const {
    QMat r = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) *= GaussRat(w[i]);
    return r;
}

QMat QMat::col_scaled(const std::vector<Rat>& w) const {
    QMat r = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) *= GaussRat(w[j]);
    return r;
}

namespace {

// Row echelon form; returns pivot columns. Operates in place.
std::vector<int> eliminate(QMat& m, std::vector<GaussRat>* rhs) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != row) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
            if (rhs) std::swap((*rhs)[p], (*rhs)[row]);
        }
        GaussRat inv = m.at(row, col).inverse();
        for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        if (rhs) (*rhs)[row] *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            GaussRat f = m.at(r, col);
            for (int j = col; j < m.cols(); ++j) m.at(r, j) -= f * m.at(row, j);
            if (rhs) (*rhs)[r] -= f * (*rhs)[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int QMat::rank() const {
    QMat m = *this;
    return static_cast<int>(eliminate(m, nullptr).size());
}

std::vector<std::vector<GaussRat>> QMat::null_space() const {
    QMat m = *this;
    std::vector<int> pivots = eliminate(m, nullptr);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<GaussRat>> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<GaussRat> v(cols_);
        v[free] = GaussRat(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<GaussRat>> QMat::solve(const std::vector<GaussRat>& b) const {
    QMat m = *this;
    std::vector<GaussRat> rhs = b;
    std::vector<int> pivots = eliminate(m, &rhs);
    for (int r = static_cast<int>(pivots.size()); r < rows_; ++r)
        if (!rhs[r].is_zero()) return std::nullopt;
    std::vector<GaussRat> x(cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rhs[r];
    return x;
}

bool vec_is_zero(const std::vector<GaussRat>& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

MinNormResult minimal_norm_solve_weighted(const QMat& A, const std::vector<Rat>& W, const std::vector<Rat>& V,
                                          const std::vector<GaussRat>& b) {
    if (static_cast<int>(W.size()) != A.rows() || static_cast<int>(V.size()) != A.cols())
        fail_internal("minimal_norm_solve: weight dimensions");
    // N = A^H W A; solve N c = A^H W b for the projection, then
    // (N V^-1 N) y = N c and x = V^-1 N y for the minimal-norm preimage.
    QMat AH = A.conj_transpose();
    QMat AHW = AH.col_scaled(W);
    QMat N = AHW * A;
    std::vector<GaussRat> rhs1 = AHW.apply(b);
    auto c = N.solve(rhs1);
    if (!c) fail_internal("minimal_norm_solve: normal equations inconsistent");

    std::vector<Rat> Vinv(V.size());
    for (std::size_t j = 0; j < V.size(); ++j) {
        if (sgn(V[j]) <= 0) fail_internal("minimal_norm_solve: nonpositive Gram weight");
        Vinv[j] = 1 / V[j];
    }
    QMat NVN = N.row_scaled(Vinv);
    NVN = N * NVN;  // N V^-1 N  (N is Hermitian)
    std::vector<GaussRat> rhs2 = N.apply(*c);
    auto y = NVN.solve(rhs2);
    if (!y) fail_internal("minimal_norm_solve: inner system inconsistent");
    std::vector<GaussRat> x = N.apply(*y);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] *= GaussRat(Vinv[j]);

    std::vector<GaussRat> Ax = A.apply(x);
    MinNormResult out;
    out.residual.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out.residual[i] = b[i] - Ax[i];
    out.solution = std::move(x);
    return out;
}

}  // namespace cmnf
