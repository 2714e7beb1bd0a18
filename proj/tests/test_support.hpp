#pragma once

#include <random>

#include "conjugacy.hpp"
#include "multiindex.hpp"

namespace cmnf::testing {

inline Term mkt(std::initializer_list<int> a, std::initializer_list<int> b, std::initializer_list<int> g) {
    return Term{Expo(a), Expo(b), Expo(g)};
}

inline HermitianFamily family_menu(int n, int d, int variant = 0) {
    HermitianFamily f;
    f.n = n;
    f.d = d;
    f.J.push_back(QMat::identity(n));
    if (d >= 2) {
        QMat J2(n, n);
        for (int i = 0; i < n; ++i) J2.at(i, i) = GaussRat(i % 2 == 0 ? 1 : -1);
        if (variant % 2 == 1 && n >= 2) {
            J2 = QMat(n, n);
            J2.at(0, 1) = GaussRat(1);
            J2.at(1, 0) = GaussRat(1);
        }
        f.J.push_back(J2);
    }
    if (d >= 3) {
        QMat J3(n, n);
        J3.at(0, std::min(1, n - 1)) = GaussRat::i_unit();
        J3.at(std::min(1, n - 1), 0) = -GaussRat::i_unit();
        if (n == 1) {
            // for n = 1 only d = 1 is nondegenerate; callers avoid this
            J3.at(0, 0) = GaussRat(1);
        }
        f.J.push_back(J3);
    }
    return f;
}

inline ManifoldSpec sphere_spec(int cap) {
    ManifoldSpec s;
    s.n = 1;
    s.d = 1;
    s.cap = cap;
    s.family = family_menu(1, 1);
    s.perturbation = BigradedSeries(1, 1, 1, cap);
    return s;
}

// Sparse random real-valued perturbation of quasidegree 3..min(6, cap).
inline ManifoldSpec random_spec(std::mt19937_64& rng, int n, int d, int cap, int nterms,
                                bool harmonic_free = false) {
    ManifoldSpec s;
    s.n = n;
    s.d = d;
    s.cap = cap;
    s.family = family_menu(n, d, static_cast<int>(rng() % 2));
    s.perturbation = BigradedSeries(n, d, d, cap);
    std::uniform_int_distribution<int> ed(0, 3), coef(-3, 3), comp(0, d - 1);
    int placed = 0, guard = 0;
    while (placed < nterms && guard++ < 40 * nterms) {
        Term t{Expo(n), Expo(n), Expo(d)};
        for (int i = 0; i < n; ++i) t.alpha[i] = ed(rng) % 3;
        for (int i = 0; i < n; ++i) t.beta[i] = ed(rng) % 3;
        for (int j = 0; j < d; ++j) t.gamma[j] = ed(rng) % 2;
        int wt = t.wt();
        if (wt < 3 || wt > std::min(6, cap)) continue;
        if (harmonic_free && (expo_sum(t.alpha) == 0 || expo_sum(t.beta) == 0)) continue;
        GaussRat c(rat_from_long(coef(rng)), rat_from_long(coef(rng)));
        if (c.is_zero()) continue;
        int j = comp(rng);
        BigradedSeries one = BigradedSeries::monomial(n, d, d, cap, t, j, c);
        s.perturbation += one + one.conjugate();
        ++placed;
    }
    return s;
}

// Random tangent-to-identity polynomial map, f quasiorder >= 2, g quasiorder >= 3.
inline Transform random_tangent_map(std::mt19937_64& rng, int n, int d, int cap, int nterms) {
    Transform t = Transform::identity(n, d, cap);
    std::uniform_int_distribution<int> ed(0, 3), wd(0, 2), coef(-2, 2), fcomp(0, n - 1), gcomp(0, d - 1);
    int placed = 0, guard = 0;
    while (placed < nterms && guard++ < 40 * nterms) {
        HTerm h{Expo(n), Expo(d)};
        for (int i = 0; i < n; ++i) h.alpha[i] = ed(rng) % 3;
        for (int j = 0; j < d; ++j) h.delta[j] = wd(rng);
        GaussRat c(rat_from_long(coef(rng)), rat_from_long(coef(rng)));
        if (c.is_zero()) continue;
        if (rng() % 2 == 0) {
            if (h.wt() < 2 || h.wt() > cap - 1) continue;
            t.f.add_term(h, fcomp(rng), c);
        } else {
            if (h.wt() < 3 || h.wt() > cap) continue;
            t.g.add_term(h, gcomp(rng), c);
        }
        ++placed;
    }
    return t;
}

}  // namespace cmnf::testing
