#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "series.hpp"

using namespace cmnf;

namespace {

Term mk(std::initializer_list<int> a, std::initializer_list<int> b, std::initializer_list<int> g) {
    return Term{Expo(a), Expo(b), Expo(g)};
}

BigradedSeries random_series(std::mt19937_64& rng, int n, int d, int s, int cap, int nterms) {
    BigradedSeries r(n, d, s, cap);
    std::uniform_int_distribution<int> e(0, 2), coef(-4, 4), comp(0, s - 1);
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

TEST_CASE("arith identities and truncation") {
    BigradedSeries zero(1, 1, 1, 6);
    BigradedSeries phi = BigradedSeries::monomial(1, 1, 1, 6, mk({2}, {1}, {1}), 0, GaussRat(3));
    CHECK(zero + phi == phi);

    BigradedSeries zzb = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    BigradedSeries sq = mul(zzb, zzb);
    CHECK(sq.coeff(mk({2}, {2}, {0}), 0) == GaussRat(1));
    CHECK(sq.term_count() == 1);

    // (z + zbar)^2 truncated at quasidegree 1 is empty
    BigradedSeries lin(1, 1, 1, 1);
    lin.add_term(mk({1}, {0}, {0}), 0, GaussRat(1));
    lin.add_term(mk({0}, {1}, {0}), 0, GaussRat(1));
    CHECK(mul(lin, lin).is_zero());
}

TEST_CASE("conjugation involution and reality") {
    BigradedSeries a = BigradedSeries::monomial(2, 1, 1, 6, mk({1, 0}, {0, 1}, {0}), 0, GaussRat::i_unit());
    BigradedSeries c = a.conjugate();
    CHECK(c.coeff(mk({0, 1}, {1, 0}, {0}), 0) == -GaussRat::i_unit());
    CHECK(c.conjugate() == a);

    BigradedSeries real1 = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    CHECK(real1.is_real_valued());
    CHECK(!real1.scaled(GaussRat::i_unit()).is_real_valued());

    BigradedSeries mirror(1, 1, 1, 6);
    mirror.add_term(mk({2}, {1}, {0}), 0, GaussRat(1));
    mirror.add_term(mk({1}, {2}, {0}), 0, GaussRat(1));
    CHECK(mirror.is_real_valued());

    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        BigradedSeries x = random_series(rng, 2, 2, 2, 6, 12);
        BigradedSeries y = random_series(rng, 2, 2, 2, 6, 12);
        CHECK(x.conjugate().conjugate() == x);
        CHECK((x + y).conjugate() == x.conjugate() + y.conjugate());
    }
}

TEST_CASE("extract_pq partitions") {
    std::mt19937_64 rng(11);
    BigradedSeries a = random_series(rng, 2, 1, 1, 6, 25);
    BigradedSeries sum(2, 1, 1, 6);
    for (int p = 0; p <= 6; ++p)
        for (int q = 0; q <= 6; ++q) sum += a.extract_pq(p, q);
    CHECK(sum == a);
    CHECK(a.extract_pq(5, 5).is_zero());
}

TEST_CASE("grading of products") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        BigradedSeries a = random_series(rng, 2, 1, 1, 8, 8);
        BigradedSeries b = random_series(rng, 2, 1, 1, 8, 8);
        BigradedSeries p = mul(a, b);
        for (const auto& [t, v] : p.terms()) {
            bool reachable = false;
            for (const auto& [ta, va] : a.terms())
                for (const auto& [tb, vb] : b.terms())
                    if (ta.wt() + tb.wt() == t.wt()) reachable = true;
            CHECK(reachable);
        }
    }
}

TEST_CASE("substitute_w basics") {
    // g = w, v = Q = z zbar: u + i z zbar
    HoloSeries g = HoloSeries::identity_w(1, 1, 6);
    BigradedSeries v = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    BigradedSeries r = substitute_w(g, v, +1);
    CHECK(r.coeff(mk({0}, {0}, {1}), 0) == GaussRat(1));
    CHECK(r.coeff(mk({1}, {1}, {0}), 0) == GaussRat::i_unit());
    CHECK(r.term_count() == 2);

    // g = w^2: u^2 + 2iu z zbar - z^2 zbar^2
    HoloSeries g2(1, 1, 1, 6);
    g2.add_term(HTerm{Expo{0}, Expo{2}}, 0, GaussRat(1));
    BigradedSeries r2 = substitute_w(g2, v, +1);
    CHECK(r2.coeff(mk({0}, {0}, {2}), 0) == GaussRat(1));
    CHECK(r2.coeff(mk({1}, {1}, {1}), 0) == GaussRat(2) * GaussRat::i_unit());
    CHECK(r2.coeff(mk({2}, {2}, {0}), 0) == GaussRat(-1));
    CHECK(r2.term_count() == 3);

    // zero v is the rename w -> u
    BigradedSeries r3 = substitute_w(g2, BigradedSeries::zero(1, 1, 1, 6), +1);
    CHECK(r3.coeff(mk({0}, {0}, {2}), 0) == GaussRat(1));
    CHECK(r3.term_count() == 1);

    // additivity in g
    std::mt19937_64 rng(3);
    HoloSeries h1(1, 1, 1, 6), h2(1, 1, 1, 6);
    h1.add_term(HTerm{Expo{2}, Expo{1}}, 0, GaussRat(rat_from_long(2, 3)));
    h2.add_term(HTerm{Expo{1}, Expo{1}}, 0, GaussRat::i_unit());
    CHECK(substitute_w(h1 + h2, v, +1) == substitute_w(h1, v, +1) + substitute_w(h2, v, +1));

    CHECK_THROWS(substitute_w(g, v.scaled(GaussRat::i_unit()), +1));  // non-real v
    BigradedSeries low(1, 1, 1, 6);
    low.add_term(mk({1}, {0}, {0}), 0, GaussRat(1));
    low.add_term(mk({0}, {1}, {0}), 0, GaussRat(1));
    CHECK_THROWS(substitute_w(g, low, +1));  // quasiorder < 2
}

TEST_CASE("substitute_full hand examples") {
    // phi = 0
    BigradedSeries zero(1, 1, 1, 6);
    HoloSeries f = HoloSeries::identity_z(1, 1, 6);
    HoloSeries g = HoloSeries::identity_w(1, 1, 6);
    BigradedSeries v = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    CHECK(substitute_full(zero, f, g, v).is_zero());

    // phi = u, f = z, g = w + w^2, v = z zbar -> u + u^2 - z^2 zbar^2
    BigradedSeries phi = BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {1}), 0, GaussRat(1));
    HoloSeries g2 = g;
    g2.add_term(HTerm{Expo{0}, Expo{2}}, 0, GaussRat(1));
    BigradedSeries r = substitute_full(phi, f, g2, v);
    CHECK(r.coeff(mk({0}, {0}, {1}), 0) == GaussRat(1));
    CHECK(r.coeff(mk({0}, {0}, {2}), 0) == GaussRat(1));
    CHECK(r.coeff(mk({2}, {2}, {0}), 0) == GaussRat(-1));
    CHECK(r.term_count() == 3);

    // identity transformation reproduces phi at leading order
    BigradedSeries pert = BigradedSeries::monomial(1, 1, 1, 6, mk({2}, {1}, {0}), 0, GaussRat(1));
    pert += pert.conjugate();
    BigradedSeries out = substitute_full(pert, f, g, v);
    CHECK(out.extract_quasidegree(3) == pert);
}

TEST_CASE("taylor_shift_u") {
    // a = u^2, P = Q: (u + zzb)^2
    BigradedSeries a = BigradedSeries::monomial(1, 1, 1, 6, mk({0}, {0}, {2}), 0, GaussRat(1));
    BigradedSeries P = BigradedSeries::monomial(1, 1, 1, 6, mk({1}, {1}, {0}), 0, GaussRat(1));
    BigradedSeries r = taylor_shift_u(a, P);
    CHECK(r.coeff(mk({0}, {0}, {2}), 0) == GaussRat(1));
    CHECK(r.coeff(mk({1}, {1}, {1}), 0) == GaussRat(2));
    CHECK(r.coeff(mk({2}, {2}, {0}), 0) == GaussRat(1));
}
