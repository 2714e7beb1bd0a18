#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fischer.hpp"

using namespace cmnf;

namespace {

Term mk(std::initializer_list<int> a, std::initializer_list<int> b, std::initializer_list<int> g) {
    return Term{Expo(a), Expo(b), Expo(g)};
}

HermitianFamily fam_1_1() {
    HermitianFamily f;
    f.n = 1;
    f.d = 1;
    f.J.emplace_back(1, 1);
    f.J[0].at(0, 0) = GaussRat(1);
    return f;
}

HermitianFamily fam_2_2() {
    HermitianFamily f;
    f.n = 2;
    f.d = 2;
    f.J.push_back(QMat::identity(2));
    QMat J2(2, 2);
    J2.at(0, 0) = GaussRat(1);
    J2.at(1, 1) = GaussRat(-1);
    f.J.push_back(J2);
    return f;
}

BigradedSeries random_poly(std::mt19937_64& rng, int n, int d, int s, int cap, int nterms) {
    BigradedSeries r(n, d, s, cap);
    std::uniform_int_distribution<int> e(0, 2), coef(-3, 3), comp(0, s - 1);
    for (int t = 0; t < nterms; ++t) {
        Term tm{Expo(n), Expo(n), Expo(d)};
        for (int i = 0; i < n; ++i) tm.alpha[i] = e(rng);
        for (int i = 0; i < n; ++i) tm.beta[i] = e(rng);
        for (int j = 0; j < d; ++j) tm.gamma[j] = e(rng);
        if (tm.wt() > cap) continue;
        r.add_term(tm, comp(rng), GaussRat(rat_from_long(coef(rng)), rat_from_long(coef(rng))));
    }
    return r;
}

}  // namespace

TEST_CASE("fischer weights on monomials") {
    BigradedSeries a = BigradedSeries::monomial(2, 1, 1, 4, mk({1, 1}, {0, 0}, {0}), 0, GaussRat(1));
    CHECK(fischer_inner(a, a, true) == GaussRat(rat_from_long(1, 2)));
    BigradedSeries b1 = BigradedSeries::monomial(2, 1, 1, 4, mk({2, 0}, {0, 0}, {0}), 0, GaussRat(1));
    BigradedSeries b2 = BigradedSeries::monomial(2, 1, 1, 4, mk({0, 2}, {0, 0}, {0}), 0, GaussRat(1));
    CHECK(fischer_inner(b1, b2, true).is_zero());
    CHECK(fischer_inner(b1, b2, false).is_zero());
    BigradedSeries c = BigradedSeries::monomial(2, 1, 1, 8, mk({3, 2}, {0, 0}, {0}), 0, GaussRat(1));
    CHECK(fischer_inner(c, c, false) == GaussRat(rat_from_long(12)));

    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        BigradedSeries r = random_poly(rng, 2, 2, 2, 6, 10);
        if (r.is_zero()) continue;
        GaussRat std_ip = fischer_inner(r, r, false);
        GaussRat nrm_ip = fischer_inner(r, r, true);
        CHECK(std_ip.is_real());
        CHECK(sgn(std_ip.re) > 0);
        CHECK(sgn(nrm_ip.re) > 0);
    }
}

TEST_CASE("derivative/multiplication adjoint pair") {
    BigradedSeries f = BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {1}), 0, GaussRat(1));
    BigradedSeries g = BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {0}), 0, GaussRat(1));
    auto [l1, r1] = derivative_multiplication_adjoint_check(Expo{1}, f, g);
    CHECK(l1 == GaussRat(1));
    CHECK(r1 == GaussRat(1));
    BigradedSeries f2 = BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {2}), 0, GaussRat(1));
    auto [l2, r2] = derivative_multiplication_adjoint_check(Expo{2}, f2, g);
    CHECK(l2 == GaussRat(2));
    CHECK(r2 == GaussRat(2));
    auto [l3, r3] = derivative_multiplication_adjoint_check(Expo{1}, g, f);
    CHECK(l3.is_zero());
    CHECK(r3.is_zero());

    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        BigradedSeries a = random_poly(rng, 1, 2, 1, 6, 8);
        BigradedSeries b = random_poly(rng, 1, 2, 1, 6, 8);
        std::uniform_int_distribution<int> ge(0, 2);
        Expo gamma{ge(rng), ge(rng)};
        auto [lhs, rhs] = derivative_multiplication_adjoint_check(gamma, a, b);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("assemble_block examples") {
    HermitianFamily fam = fam_1_1();
    GradedPiece src = GradedPiece::bidegree_block(1, 1, 1, 1, 0, 0);
    GradedPiece dst = GradedPiece::bidegree_block(1, 1, 1, 1, 1, 0);
    LinearBlockMap K = assemble_block(BlockOp::K, src, dst, fam);
    CHECK(K.matrix.rows() == 1);
    CHECK(K.matrix.cols() == 1);
    CHECK(K.matrix.at(0, 0) == GaussRat(1));

    GradedPiece c0 = GradedPiece::bidegree_block(1, 1, 1, 1, 1, 0);
    GradedPiece c1 = GradedPiece::bidegree_block(1, 1, 1, 2, 2, 0);
    LinearBlockMap D = assemble_block(BlockOp::Delta, c0, c1, fam);
    for (int r = 0; r < D.matrix.rows(); ++r)
        for (int c = 0; c < D.matrix.cols(); ++c) CHECK(D.matrix.at(r, c).is_zero());

    GradedPiece mid = GradedPiece::bidegree_block(1, 1, 1, 1, 1, 2);
    GradedPiece top = GradedPiece::bidegree_block(1, 1, 1, 2, 2, 1);
    LinearBlockMap Ds = assemble_block(BlockOp::Deltastar, top, mid, fam);
    LinearBlockMap Dl = assemble_block(BlockOp::Delta, mid, top, fam);
    LinearBlockMap comp = assemble_composition({BlockOp::Deltastar, BlockOp::Delta}, top, {mid, top}, fam);
    QMat prod = Dl.matrix * Ds.matrix;
    for (int r = 0; r < prod.rows(); ++r)
        for (int c = 0; c < prod.cols(); ++c) CHECK(prod.at(r, c) == comp.matrix.at(r, c));
}

TEST_CASE("minimal_norm_solve contract") {
    GradedPiece src = GradedPiece::bidegree_block(1, 1, 1, 2, 0, 1);
    LinearBlockMap L;
    L.domain = src;
    L.codomain = src;
    L.matrix = QMat(src.dim(), src.dim());
    for (int i = 0; i < src.dim(); ++i) L.matrix.at(i, i) = GaussRat(rat_from_long(2 + i));
    std::vector<GaussRat> rhs(src.dim(), GaussRat(3));
    MinNormResult r = minimal_norm_solve(L, rhs);
    CHECK(vec_is_zero(r.residual));
    for (int i = 0; i < src.dim(); ++i)
        CHECK(r.solution[i] == GaussRat(rat_from_long(3)) / GaussRat(rat_from_long(2 + i)));

    LinearBlockMap Z = L;
    Z.matrix = QMat(src.dim(), src.dim());
    MinNormResult rz = minimal_norm_solve(Z, rhs);
    CHECK(vec_is_zero(rz.solution));
    for (int i = 0; i < src.dim(); ++i) CHECK(rz.residual[i] == rhs[i]);

    // K block for the valid d=2, n=2 family: K_m injective, residual spans ker K*,
    // and the split rhs = L x + r is exact with r Fischer-orthogonal to im L.
    HermitianFamily f22 = fam_2_2();
    for (int m = 1; m <= 3; ++m) {
        GradedPiece dom = GradedPiece::bidegree_block(2, 2, 2, m, 0, 0);
        GradedPiece cod = GradedPiece::bidegree_block(2, 2, 2, m, 1, 0);
        LinearBlockMap K = assemble_block(BlockOp::K, dom, cod, f22);
        int rank = K.matrix.rank();
        CHECK(rank == dom.dim());
        CHECK(K.matrix.conj_transpose().null_space().size() == static_cast<std::size_t>(cod.dim() - rank));

        std::mt19937_64 rng(23 + m);
        std::uniform_int_distribution<int> coef(-5, 5);
        std::vector<GaussRat> b(cod.dim());
        for (auto& x : b) x = GaussRat(rat_from_long(coef(rng)), rat_from_long(coef(rng)));
        MinNormResult s = minimal_norm_solve(K, b);
        std::vector<GaussRat> Ax = K.matrix.apply(s.solution);
        for (int i = 0; i < cod.dim(); ++i) CHECK(Ax[i] + s.residual[i] == b[i]);
        std::vector<Rat> W = K.codomain.gram_diagonal(false);
        for (int c = 0; c < dom.dim(); ++c) {
            GaussRat ip;
            for (int i = 0; i < cod.dim(); ++i) ip += GaussRat(W[i]) * s.residual[i] * K.matrix.at(i, c).conj();
            CHECK(ip.is_zero());
        }
    }
}

TEST_CASE("normalized and standard adjoint kernels coincide on blocks") {
    HermitianFamily fam = fam_2_2();
    for (int m = 1; m <= 3; ++m) {
        GradedPiece dom = GradedPiece::bidegree_block(2, 2, 2, m, 0, 1);
        GradedPiece cod = GradedPiece::bidegree_block(2, 2, 2, m, 1, 1);
        LinearBlockMap K = assemble_block(BlockOp::K, dom, cod, fam);
        QMat At = K.matrix.conj_transpose();
        QMat std_adj = At.col_scaled(cod.gram_diagonal(false));
        QMat nrm_adj = At.col_scaled(cod.gram_diagonal(true));
        auto ns1 = std_adj.null_space();
        auto ns2 = nrm_adj.null_space();
        CHECK(ns1.size() == ns2.size());
        for (const auto& v : ns1) CHECK(vec_is_zero(nrm_adj.apply(v)));
        for (const auto& v : ns2) CHECK(vec_is_zero(std_adj.apply(v)));
    }
}
