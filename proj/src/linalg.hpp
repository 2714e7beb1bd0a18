#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace cmnf {

// Dense matrix over Q(i). Small blocks only; exact arithmetic throughout.
class QMat {
  public:
    QMat() = default;
    QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static QMat identity(int m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    GaussRat& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const GaussRat& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    QMat conj_transpose() const;
    QMat transpose() const;
    friend QMat operator*(const QMat& a, const QMat& b);
    friend QMat operator+(const QMat& a, const QMat& b);
    friend QMat operator-(const QMat& a, const QMat& b);
    std::vector<GaussRat> apply(const std::vector<GaussRat>& x) const;

    // Scale row/column r by diagonal weights.
    QMat row_scaled(const std::vector<Rat>& w) const;
    QMat col_scaled(const std::vector<Rat>& w) const;

    int rank() const;
    std::vector<std::vector<GaussRat>> null_space() const;
    // One solution of A x = b, or nullopt when inconsistent.
    std::optional<std::vector<GaussRat>> solve(const std::vector<GaussRat>& b) const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<GaussRat> a_;
};

// Exact weighted least-squares split used by every normal-form projection.
// Domain carries the positive diagonal Gram V, codomain W (standard Fischer weights).
// Returns x in the image of the weighted adjoint A* with A x = pi b (pi the
// W-orthogonal projection onto im A) and the residual b - A x.
struct MinNormResult {
    std::vector<GaussRat> solution;
    std::vector<GaussRat> residual;
};
MinNormResult minimal_norm_solve_weighted(const QMat& A, const std::vector<Rat>& W, const std::vector<Rat>& V,
                                          const std::vector<GaussRat>& b);

bool vec_is_zero(const std::vector<GaussRat>& v);

}  // namespace cmnf
