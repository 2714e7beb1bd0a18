#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fischer.hpp"
#include "multiindex.hpp"
#include "quadric.hpp"

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

// off-diagonal Hermitian entries to exercise complex J
HermitianFamily fam_2_1_offdiag() {
    HermitianFamily f;
    f.n = 2;
    f.d = 1;
    QMat J(2, 2);
    J.at(0, 1) = GaussRat::i_unit();
    J.at(1, 0) = -GaussRat::i_unit();
    f.J.push_back(J);
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

TEST_CASE("validate_family") {
    CHECK(validate_family(fam_1_1()).pass);
    CHECK(validate_family(fam_2_2()).pass);
    CHECK(validate_family(fam_2_1_offdiag()).pass);

    HermitianFamily dep;
    dep.n = 1;
    dep.d = 2;
    dep.J.emplace_back(1, 1);
    dep.J.emplace_back(1, 1);
    dep.J[0].at(0, 0) = GaussRat(1);
    dep.J[1].at(0, 0) = GaussRat(1);
    FamilyReport rep = validate_family(dep);
    CHECK(!rep.pass);
    CHECK(!rep.independent);

    HermitianFamily nonh;
    nonh.n = 2;
    nonh.d = 1;
    QMat J(2, 2);
    J.at(0, 1) = GaussRat(1);
    nonh.J.push_back(J);
    CHECK(!validate_family(nonh).hermitian);

    HermitianFamily degen;
    degen.n = 2;
    degen.d = 1;
    QMat Jd(2, 2);
    Jd.at(0, 0) = GaussRat(1);
    degen.J.push_back(Jd);
    FamilyReport rd = validate_family(degen);
    CHECK(rd.common_kernel_dim == 1);
    CHECK(!rd.pass);
}

TEST_CASE("eval_Q and conjugation symmetry") {
    HermitianFamily fam = fam_1_1();
    BigradedSeries z = BigradedSeries::identity_z(1, 1, 6);
    BigradedSeries Q = eval_Q(fam, z, z.conjugate());
    CHECK(Q.coeff(mk({1}, {1}, {0}), 0) == GaussRat(1));
    CHECK(Q.term_count() == 1);

    // conj Q(a, bbar) = Q(b, abar) on random arguments
    std::mt19937_64 rng(3);
    HermitianFamily f22 = fam_2_2();
    for (int rep = 0; rep < 10; ++rep) {
        BigradedSeries a = random_poly(rng, 2, 2, 2, 6, 8);
        BigradedSeries b = random_poly(rng, 2, 2, 2, 6, 8);
        CHECK(eval_Q(f22, a, b.conjugate()).conjugate() == eval_Q(f22, b, a.conjugate()));
    }

    // f2 = z^2: Q(f2, zbar) = z^2 zbar
    BigradedSeries f2 = BigradedSeries::monomial(1, 1, 1, 6, mk({2}, {0}, {0}), 0, GaussRat(1));
    CHECK(eval_Q(fam, f2, z.conjugate()).coeff(mk({2}, {1}, {0}), 0) == GaussRat(1));

    // n=2, d=1, J=I2, f=(z1, 0): K f = z1 zbar1
    HermitianFamily fi;
    fi.n = 2;
    fi.d = 1;
    fi.J.push_back(QMat::identity(2));
    HoloSeries f(2, 1, 2, 6);
    f.add_term(HTerm{Expo{1, 0}, Expo{0}}, 0, GaussRat(1));
    BigradedSeries kf = K_apply(fi, f, false);
    CHECK(kf.coeff(mk({1, 0}, {1, 0}, {0}), 0) == GaussRat(1));
    CHECK(kf.term_count() == 1);
}

TEST_CASE("Kstar examples and adjoint identity") {
    HermitianFamily fam = fam_1_1();
    // Kstar(z zbar) = z/2, Kstar(z^2 zbar) = z^2/3
    BigradedSeries p1 = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    BigradedSeries k1 = Kstar_apply(fam, p1, false);
    CHECK(k1.coeff(mk({1}, {0}, {0}), 0) == GaussRat(rat_from_long(1, 2)));
    CHECK(k1.term_count() == 1);
    BigradedSeries p2 = BigradedSeries::monomial(1, 1, 1, 6, mk({2}, {1}, {0}), 0, GaussRat(1));
    BigradedSeries k2 = Kstar_apply(fam, p2, false);
    CHECK(k2.coeff(mk({2}, {0}, {0}), 0) == GaussRat(rat_from_long(1, 3)));

    BigradedSeries bad = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {2}, {0}), 0, GaussRat(1));
    CHECK_THROWS(Kstar_apply(fam, bad, false));

    // <K f, P> = <f, Kstar P> exactly under the normalized product, and the (m+1)
    // convention under the standard product, on random homogeneous data.
    std::mt19937_64 rng(11);
    for (const HermitianFamily& f : {fam_2_2(), fam_2_1_offdiag()}) {
        for (int rep = 0; rep < 40; ++rep) {
            std::uniform_int_distribution<int> md(0, 3), ud(0, 2), coef(-3, 3);
            int m = md(rng), u = ud(rng);
            BigradedSeries fpoly(f.n, f.d, f.n, 8);
            for (const Expo& a : multiindices_of_degree(f.n, m))
                for (const Expo& g : multiindices_of_degree(f.d, u))
                    for (int c = 0; c < f.n; ++c)
                        fpoly.add_term(Term{a, Expo(f.n, 0), g}, c,
                                       GaussRat(rat_from_long(coef(rng)), rat_from_long(coef(rng))));
            BigradedSeries P(f.n, f.d, f.d, 8);
            for (const Expo& a : multiindices_of_degree(f.n, m))
                for (int zb = 0; zb < f.n; ++zb)
                    for (const Expo& g : multiindices_of_degree(f.d, u))
                        for (int c = 0; c < f.d; ++c) {
                            Term t{a, Expo(f.n, 0), g};
                            t.beta[zb] = 1;
                            P.add_term(t, c, GaussRat(rat_from_long(coef(rng)), rat_from_long(coef(rng))));
                        }
            BigradedSeries Kf = K_apply(f, fpoly, false);
            BigradedSeries KsP = Kstar_apply(f, P, false);
            CHECK(fischer_inner(Kf, P, true) == fischer_inner(fpoly, KsP, true));
            CHECK(fischer_inner(Kf, P, false) ==
                  GaussRat(rat_from_long(m + 1)) * fischer_inner(fpoly, KsP, false));
            // conjugated pair
            BigradedSeries fbar = fpoly.conjugate();
            BigradedSeries Pbar = P.conjugate();
            CHECK(fischer_inner(K_apply(f, fbar, true), Pbar, true) ==
                  fischer_inner(fbar, Kstar_apply(f, Pbar, true), true));
        }
    }
}

TEST_CASE("delta and deltastar") {
    HermitianFamily fam = fam_1_1();
    BigradedSeries u = BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {1}), 0, GaussRat(1));
    BigradedSeries du = delta_apply(fam, u);
    CHECK(du.coeff(mk({1}, {1}, {0}), 0) == GaussRat(1));
    CHECK(delta_apply(fam, BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {0}), 0, GaussRat(1))).is_zero());

    HermitianFamily f22 = fam_2_2();
    BigradedSeries u1u2 = BigradedSeries::monomial(2, 2, 1, 6, mk({0, 0}, {0, 0}, {1, 1}), 0, GaussRat(1));
    BigradedSeries d12 = delta_apply(f22, u1u2);
    BigradedSeries Q = quadric_series(f22, 6);
    Term u1{Expo{0, 0}, Expo{0, 0}, Expo{1, 0}}, u2{Expo{0, 0}, Expo{0, 0}, Expo{0, 1}};
    BigradedSeries expect = mul(BigradedSeries::monomial(2, 2, 1, 6, u2, 0, GaussRat(1)), Q.component(0)) +
                            mul(BigradedSeries::monomial(2, 2, 1, 6, u1, 0, GaussRat(1)), Q.component(1));
    CHECK(d12 == expect);

    // deltastar oracles
    BigradedSeries zz = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    CHECK(deltastar_apply(fam, zz) == u);
    BigradedSeries z2z2 = BigradedSeries::monomial(1, 1, 1, 6, mk({2}, {2}, {0}), 0, GaussRat(1));
    BigradedSeries ds = deltastar_apply(fam, z2z2);
    CHECK(ds.coeff(mk({1}, {1}, {1}), 0) == GaussRat(4));
    CHECK(deltastar_apply(fam, BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {3}), 0, GaussRat(1))).is_zero());

    // bidegree shifts
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        BigradedSeries phi = random_poly(rng, 2, 2, 2, 6, 10);
        BigradedSeries dphi = delta_apply(f22, phi);
        for (const auto& [t, v] : dphi.terms()) {
            bool found = false;
            for (const auto& [t0, v0] : phi.terms())
                if (expo_sum(t.alpha) == expo_sum(t0.alpha) + 1 && expo_sum(t.beta) == expo_sum(t0.beta) + 1)
                    found = true;
            CHECK(found);
        }
    }

    // adjointness under the standard product on random polynomial data
    for (const HermitianFamily& f : {fam_2_2(), fam_2_1_offdiag()}) {
        for (int rep = 0; rep < 40; ++rep) {
            BigradedSeries a = random_poly(rng, f.n, f.d, f.d, 6, 10);
            BigradedSeries b = random_poly(rng, f.n, f.d, f.d, 6, 10);
            CHECK(fischer_inner(delta_apply(f, a), b, false) == fischer_inner(a, deltastar_apply(f, b), false));
        }
    }
}

TEST_CASE("cm_trace") {
    HermitianFamily fam = fam_1_1();
    BigradedSeries zz = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    CHECK(cm_trace(fam, zz, 1).coeff(mk({0}, {0}, {0}), 0) == GaussRat(1));
    CHECK(cm_trace(fam, BigradedSeries::monomial(1, 1, 1, 6, mk({2}, {0}, {0}), 0, GaussRat(1)), 1).is_zero());
    BigradedSeries z2z2 = BigradedSeries::monomial(1, 1, 1, 6, mk({2}, {2}, {0}), 0, GaussRat(1));
    CHECK(cm_trace(fam, z2z2, 2).coeff(mk({0}, {0}, {0}), 0) == GaussRat(4));
    CHECK_THROWS(cm_trace(fam_2_2(), zz, 1));

    // u tr(phi) = Deltastar(phi) for d = 1, arbitrary n
    std::mt19937_64 rng(9);
    HermitianFamily f21 = fam_2_1_offdiag();
    Term uterm{Expo{0, 0}, Expo{0, 0}, Expo{1}};
    BigradedSeries umon = BigradedSeries::monomial(2, 1, 1, 8, uterm, 0, GaussRat(1));
    for (int rep = 0; rep < 20; ++rep) {
        BigradedSeries phi = random_poly(rng, 2, 1, 1, 6, 12);
        CHECK(mul(umon, cm_trace(f21, phi, 1)) == deltastar_apply(f21, phi));
    }
}

TEST_CASE("sigma_min_K explicit values and lower bound") {
    HermitianFamily fam = fam_1_1();
    SigmaMin s1 = sigma_min_K(fam, 1);
    CHECK(s1.sigma_min == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(s1.rescaled == doctest::Approx(1.0).epsilon(1e-12));
    SigmaMin s2 = sigma_min_K(fam, 2);
    CHECK(s2.rescaled == doctest::Approx(1.0).epsilon(1e-12));

    // rescaled sequence bounded below for valid families
    for (const HermitianFamily& f : {fam_1_1(), fam_2_2(), fam_2_1_offdiag()}) {
        double first = sigma_min_K(f, 0).rescaled;
        CHECK(first > 1e-9);
        for (int m = 0; m <= 10; ++m) {
            double r = sigma_min_K(f, m).rescaled;
            CHECK(r > 0.5 * first - 1e-9);
        }
    }
}
