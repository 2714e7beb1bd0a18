#pragma once

#include <string>
#include <vector>

#include "linalg.hpp"
#include "quadric.hpp"
#include "series.hpp"

namespace cmnf {

// Fischer inner product <a, b>; weight alpha! beta! gamma! (standard) or
// alpha! beta! gamma! / (|alpha|+|beta|+|gamma|)! (normalized). Value components
// are orthogonal. b must be a polynomial; both series here always are.
GaussRat fischer_inner(const BigradedSeries& a, const BigradedSeries& b, bool normalized);

Rat fischer_weight(const Term& t, bool normalized);

// Returns (<D_gamma f, g>, <f, u^gamma g>); the two agree under the standard product.
std::pair<GaussRat, GaussRat> derivative_multiplication_adjoint_check(const Expo& gamma, const BigradedSeries& f,
                                                                      const BigradedSeries& g);

// Ordered basis of one finite graded block: monomials paired with a value component.
struct GradedPiece {
    int n = 0, d = 0, s = 1;
    std::vector<std::pair<Term, int>> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    BigradedSeries basis_series(int i, int cap) const;
    // Coefficient vector of a series over this basis; throws when the series has
    // support outside the block.
    std::vector<GaussRat> coords(const BigradedSeries& a) const;
    BigradedSeries from_coords(const std::vector<GaussRat>& x, int cap) const;
    std::vector<Rat> gram_diagonal(bool normalized) const;

    // All monomials of bidegree (p, q) and u-degree udeg, every component.
    static GradedPiece bidegree_block(int n, int d, int s, int p, int q, int udeg);
};

enum class BlockOp { K, Kbar, Kstar, Kbarstar, Delta, Deltastar, CMTrace };

struct LinearBlockMap {
    GradedPiece domain, codomain;
    QMat matrix;  // codomain-dim x domain-dim
};

// Exact matrix of the operator restricted to a block. The image must lie in the
// given codomain block.
LinearBlockMap assemble_block(BlockOp op, const GradedPiece& src, const GradedPiece& dst,
                              const HermitianFamily& fam);
LinearBlockMap assemble_composition(const std::vector<BlockOp>& ops, const GradedPiece& src,
                                    const std::vector<GradedPiece>& stages, const HermitianFamily& fam);

// Splits rhs = L x + r with r orthogonal to im L in the standard Fischer product
// and x in im L*; exact.
MinNormResult minimal_norm_solve(const LinearBlockMap& L, const std::vector<GaussRat>& rhs);

}  // namespace cmnf
