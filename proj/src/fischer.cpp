#include "fischer.hpp"

#include "error.hpp"
#include "multiindex.hpp"

namespace cmnf {

Rat fischer_weight(const Term& t, bool normalized) {
    Rat w = multiindex_factorial(t.alpha) * multiindex_factorial(t.beta) * multiindex_factorial(t.gamma);
    if (normalized) {
        // Tensor normalization: the u-series weight gamma!/|gamma|! times the
        // normalized weight on the (z, zbar) value space.
        w /= Rat(factorial(expo_sum(t.alpha) + expo_sum(t.beta)));
        w /= Rat(factorial(expo_sum(t.gamma)));
    }
    return w;
}

GaussRat fischer_inner(const BigradedSeries& a, const BigradedSeries& b, bool normalized) {
    if (a.n() != b.n() || a.d() != b.d() || a.s() != b.s()) fail_validation("fischer_inner: dimension mismatch");
    GaussRat acc;
    for (const auto& [t, vb] : b.terms()) {
        auto it = a.terms().find(t);
        if (it == a.terms().end()) continue;
        GaussRat w{fischer_weight(t, normalized)};
        for (int j = 0; j < a.s(); ++j) acc += w * it->second[j] * vb[j].conj();
    }
    return acc;
}

std::pair<GaussRat, GaussRat> derivative_multiplication_adjoint_check(const Expo& gamma, const BigradedSeries& f,
                                                                      const BigradedSeries& g) {
    BigradedSeries df = f;
    for (std::size_t j = 0; j < gamma.size(); ++j)
        for (int e = 0; e < gamma[j]; ++e) df = df.d_u(static_cast<int>(j));
    Term ug{Expo(f.n(), 0), Expo(f.n(), 0), gamma};
    BigradedSeries mg = mul(BigradedSeries::monomial(f.n(), f.d(), 1, f.cap(), ug, 0, GaussRat(1)), g);
    return {fischer_inner(df, g, false), fischer_inner(f, mg, false)};
}

BigradedSeries GradedPiece::basis_series(int i, int cap) const {
    return BigradedSeries::monomial(n, d, s, cap, basis[i].first, basis[i].second, GaussRat(1));
}

std::vector<GaussRat> GradedPiece::coords(const BigradedSeries& a) const {
    std::vector<GaussRat> x(basis.size());
    std::size_t found = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        x[i] = a.coeff(basis[i].first, basis[i].second);
        if (!x[i].is_zero()) ++found;
    }
    // Count nonzero coefficients of a to detect support outside the block.
    std::size_t total = 0;
    for (const auto& [t, v] : a.terms())
        for (const auto& c : v)
            if (!c.is_zero()) ++total;
    if (total != found) fail_internal("GradedPiece::coords: series has support outside the block");
    return x;
}

BigradedSeries GradedPiece::from_coords(const std::vector<GaussRat>& x, int cap) const {
    BigradedSeries r(n, d, s, cap);
    for (std::size_t i = 0; i < basis.size(); ++i) r.add_term(basis[i].first, basis[i].second, x[i]);
    return r;
}

std::vector<Rat> GradedPiece::gram_diagonal(bool normalized) const {
    std::vector<Rat> w(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) w[i] = fischer_weight(basis[i].first, normalized);
    return w;
}

GradedPiece GradedPiece::bidegree_block(int n, int d, int s, int p, int q, int udeg) {
    GradedPiece out;
    out.n = n;
    out.d = d;
    out.s = s;
    for (const Expo& a : multiindices_of_degree(n, p))
        for (const Expo& b : multiindices_of_degree(n, q))
            for (const Expo& g : multiindices_of_degree(d, udeg))
                for (int j = 0; j < s; ++j) out.basis.push_back({Term{a, b, g}, j});
    return out;
}

static BigradedSeries apply_block_op(BlockOp op, const HermitianFamily& fam, const BigradedSeries& a) {
    switch (op) {
        case BlockOp::K: return K_apply(fam, a, false);
        case BlockOp::Kbar: return K_apply(fam, a, true);
        case BlockOp::Kstar: return Kstar_apply(fam, a, false);
        case BlockOp::Kbarstar: return Kstar_apply(fam, a, true);
        case BlockOp::Delta: return delta_apply(fam, a);
        case BlockOp::Deltastar: return deltastar_apply(fam, a);
        case BlockOp::CMTrace: return cm_trace(fam, a, 1);
    }
    fail_internal("unreachable");
}

LinearBlockMap assemble_block(BlockOp op, const GradedPiece& src, const GradedPiece& dst,
                              const HermitianFamily& fam) {
    LinearBlockMap out;
    out.domain = src;
    out.codomain = dst;
    out.matrix = QMat(dst.dim(), src.dim());
    // Cap large enough for every graded piece involved.
    int cap = 0;
    for (const auto& [t, j] : src.basis) cap = std::max(cap, t.wt());
    for (const auto& [t, j] : dst.basis) cap = std::max(cap, t.wt());
    cap += 4;
    for (int i = 0; i < src.dim(); ++i) {
        BigradedSeries img = apply_block_op(op, fam, src.basis_series(i, cap));
        std::vector<GaussRat> col = dst.coords(img);
        for (int r = 0; r < dst.dim(); ++r) out.matrix.at(r, i) = col[r];
    }
    return out;
}

LinearBlockMap assemble_composition(const std::vector<BlockOp>& ops, const GradedPiece& src,
                                    const std::vector<GradedPiece>& stages, const HermitianFamily& fam) {
    if (ops.size() != stages.size()) fail_validation("assemble_composition: one codomain per stage");
    LinearBlockMap out;
    out.domain = src;
    out.codomain = stages.back();
    out.matrix = QMat(out.codomain.dim(), src.dim());
    int cap = 0;
    for (const auto& [t, j] : src.basis) cap = std::max(cap, t.wt());
    for (const auto& st : stages)
        for (const auto& [t, j] : st.basis) cap = std::max(cap, t.wt());
    cap += 4;
    for (int i = 0; i < src.dim(); ++i) {
        BigradedSeries img = src.basis_series(i, cap);
        for (BlockOp op : ops) img = apply_block_op(op, fam, img);
        std::vector<GaussRat> col = out.codomain.coords(img);
        for (int r = 0; r < out.codomain.dim(); ++r) out.matrix.at(r, i) = col[r];
    }
    return out;
}

MinNormResult minimal_norm_solve(const LinearBlockMap& L, const std::vector<GaussRat>& rhs) {
    return minimal_norm_solve_weighted(L.matrix, L.codomain.gram_diagonal(false), L.domain.gram_diagonal(false),
                                       rhs);
}

}  // namespace cmnf
