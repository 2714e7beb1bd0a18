#include "engine.hpp"

#include <functional>

#include "diagnostics.hpp"
#include "error.hpp"
#include "fischer.hpp"
#include "multiindex.hpp"

namespace cmnf {

namespace {

enum class SolveKind { formal, weak, cm, p1high };

struct Unknown {
    bool is_f;
    HTerm term;
    int comp;
    bool imag_part;
};

// One normalization condition: a residual functional on quasidegree-k series
// together with the graded block its values live in.
struct Condition {
    std::string name;
    std::function<BigradedSeries(const BigradedSeries&)> apply;
    GradedPiece block;
};

bool block_exists(int k, int p, int q) { return k - p - q >= 0 && (k - p - q) % 2 == 0; }
int block_udeg(int k, int p, int q) { return (k - p - q) / 2; }

std::vector<Unknown> sector_unknowns(const ManifoldSpec& spec, SolveKind kind, int delta, int k) {
    std::vector<Unknown> out;
    int n = spec.n, d = spec.d;
    auto add_f_zdeg = [&](int a) {
        int rem = (k - 1) - a;
        if (rem < 0 || rem % 2 != 0) return;
        for (const Expo& al : multiindices_of_degree(n, a))
            for (const Expo& de : multiindices_of_degree(d, rem / 2))
                for (int c = 0; c < n; ++c)
                    for (int im = 0; im < 2; ++im) out.push_back({true, HTerm{al, de}, c, im == 1});
    };
    auto add_g_zdeg = [&](int a) {
        int rem = k - a;
        if (rem < 0 || rem % 2 != 0) return;
        for (const Expo& al : multiindices_of_degree(n, a))
            for (const Expo& de : multiindices_of_degree(d, rem / 2))
                for (int c = 0; c < d; ++c)
                    for (int im = 0; im < 2; ++im) out.push_back({false, HTerm{al, de}, c, im == 1});
    };
    if (kind == SolveKind::p1high) {
        if (delta + 1 >= 4) add_f_zdeg(delta + 1);
        return out;
    }
    add_g_zdeg(delta);
    add_f_zdeg(delta + 1);
    if (delta == 1 && (kind == SolveKind::formal || kind == SolveKind::cm)) add_f_zdeg(0);
    return out;
}

std::vector<Condition> sector_conditions(const ManifoldSpec& spec, SolveKind kind, int delta, int k) {
    std::vector<Condition> out;
    const HermitianFamily& fam = spec.family;
    int n = spec.n, d = spec.d;
    GaussRat iu = GaussRat::i_unit();

    auto add_full = [&](int p, int q) {
        if (!block_exists(k, p, q)) return;
        Condition c;
        c.name = "kill (" + std::to_string(p) + "," + std::to_string(q) + ")";
        c.apply = [p, q](const BigradedSeries& s) { return s.extract_pq(p, q); };
        c.block = GradedPiece::bidegree_block(n, d, d, p, q, block_udeg(k, p, q));
        out.push_back(std::move(c));
    };

    if (kind == SolveKind::p1high) {
        int p = delta + 1;
        if (p >= 4 && block_exists(k, p, 1)) {
            Condition c;
            c.name = "Kstar (" + std::to_string(p) + ",1)";
            c.apply = [&fam, p](const BigradedSeries& s) { return Kstar_apply(fam, s.extract_pq(p, 1), false); };
            c.block = GradedPiece::bidegree_block(n, d, n, p, 0, block_udeg(k, p, 1));
            out.push_back(std::move(c));
        }
        return out;
    }

    if (delta >= 1) {
        add_full(delta, 0);
        int p = delta + 1;
        if (block_exists(k, p, 1)) {
            if (kind == SolveKind::cm) {
                add_full(p, 1);
            } else {
                Condition c;
                c.name = "Kstar (" + std::to_string(p) + ",1)";
                c.apply = [&fam, p](const BigradedSeries& s) {
                    return Kstar_apply(fam, s.extract_pq(p, 1), false);
                };
                c.block = GradedPiece::bidegree_block(n, d, n, p, 0, block_udeg(k, p, 1));
                out.push_back(std::move(c));
            }
        }
        if (delta == 1 && block_exists(k, 3, 2)) {
            if (kind == SolveKind::formal) {
                Condition c;
                c.name = "Noff (3,2)";
                c.apply = [&fam, iu](const BigradedSeries& s) {
                    BigradedSeries comb =
                        s.extract_pq(3, 2) - delta_apply(fam, s.extract_pq(2, 1)).scaled(iu);
                    return Kstar_apply(fam, deltastar_apply(fam, deltastar_apply(fam, comb)), true);
                };
                c.block = GradedPiece::bidegree_block(n, d, n, 0, 0, block_udeg(k, 3, 2) + 2);
                out.push_back(std::move(c));
            } else if (kind == SolveKind::cm) {
                Condition c;
                c.name = "CM trace^2 (3,2)";
                c.apply = [&fam](const BigradedSeries& s) { return cm_trace(fam, s.extract_pq(3, 2), 2); };
                c.block = GradedPiece::bidegree_block(n, d, d, 1, 0, block_udeg(k, 3, 2) + 2);
                out.push_back(std::move(c));
            }
        }
        return out;
    }

    // delta == 0
    add_full(0, 0);
    if (kind == SolveKind::cm) {
        add_full(1, 1);
        if (block_exists(k, 2, 2)) {
            Condition c;
            c.name = "CM trace (2,2)";
            c.apply = [&fam](const BigradedSeries& s) { return cm_trace(fam, s.extract_pq(2, 2), 1); };
            c.block = GradedPiece::bidegree_block(n, d, d, 1, 1, block_udeg(k, 2, 2));
            out.push_back(std::move(c));
        }
        if (block_exists(k, 3, 3)) {
            Condition c;
            c.name = "CM trace^3 (3,3)";
            c.apply = [&fam](const BigradedSeries& s) { return cm_trace(fam, s.extract_pq(3, 3), 3); };
            c.block = GradedPiece::bidegree_block(n, d, d, 0, 0, block_udeg(k, 3, 3));
            out.push_back(std::move(c));
        }
    } else if (block_exists(k, 1, 1)) {
        Condition c1;
        c1.name = "Nd diagonal";
        c1.apply = [&fam](const BigradedSeries& s) {
            BigradedSeries r = deltastar_apply(fam, s.extract_pq(1, 1)).scaled(GaussRat(-6));
            r += deltastar_apply(fam, deltastar_apply(fam, deltastar_apply(fam, s.extract_pq(3, 3))));
            return r;
        };
        c1.block = GradedPiece::bidegree_block(n, d, d, 0, 0, k / 2);
        out.push_back(std::move(c1));
        Condition c2;
        c2.name = "Nd Kstar";
        c2.apply = [&fam, iu](const BigradedSeries& s) {
            BigradedSeries inner = s.extract_pq(1, 1) - deltastar_apply(fam, s.extract_pq(2, 2)).scaled(iu) -
                                   deltastar_apply(fam, deltastar_apply(fam, s.extract_pq(3, 3)));
            return Kstar_apply(fam, inner, false);
        };
        c2.block = GradedPiece::bidegree_block(n, d, n, 1, 0, block_udeg(k, 1, 1));
        out.push_back(std::move(c2));
    }
    return out;
}

std::vector<GaussRat> realify(const std::vector<GaussRat>& v) {
    std::vector<GaussRat> out;
    out.reserve(2 * v.size());
    for (const auto& c : v) {
        out.push_back(GaussRat(c.re));
        out.push_back(GaussRat(c.im));
    }
    return out;
}

struct DegreeResult {
    HoloSeries f_inc, g_inc;
    BigradedSeries phi_k;
    int kernel_dim = 0;
};

DegreeResult solve_degree(const ManifoldSpec& spec, const Transform& t, const BigradedSeries& phi, int k,
                          SolveKind kind, const HoloSeries* f0_prescribed) {
    int n = spec.n, d = spec.d;
    BigradedSeries rhs = rhs_degree_k(spec, t, phi, k);
    DegreeResult res;
    res.f_inc = HoloSeries::zero(n, d, n, spec.cap);
    res.g_inc = HoloSeries::zero(n, d, d, spec.cap);

    if (kind == SolveKind::weak && f0_prescribed) {
        HoloSeries part = f0_prescribed->extract_quasidegree(k - 1);
        if (!part.is_zero()) {
            rhs -= lhs_full(spec.family, part.truncated(k), HoloSeries::zero(n, d, d, k), k)
                       .extract_quasidegree(k);
            res.f_inc += part;
        }
    }

    for (int delta = k; delta >= 0; --delta) {
        std::vector<Unknown> unknowns = sector_unknowns(spec, kind, delta, k);
        if (unknowns.empty()) continue;
        std::vector<Condition> conds = sector_conditions(spec, kind, delta, k);

        // Images of the unknown basis under the linear side.
        std::vector<BigradedSeries> images(unknowns.size());
        HoloSeries zf = HoloSeries::zero(n, d, n, k), zg = HoloSeries::zero(n, d, d, k);
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            const Unknown& u = unknowns[i];
            GaussRat c = u.imag_part ? GaussRat::i_unit() : GaussRat(1);
            if (u.is_f)
                images[i] = lhs_full(spec.family, HoloSeries::monomial(n, d, n, k, u.term, u.comp, c), zg, k);
            else
                images[i] = lhs_full(spec.family, zf, HoloSeries::monomial(n, d, d, k, u.term, u.comp, c), k);
        }

        int rows = 0;
        for (const auto& cnd : conds) rows += 2 * cnd.block.dim();
        QMat A(rows, static_cast<int>(unknowns.size()));
        std::vector<GaussRat> c(rows);
        std::vector<Rat> W(rows, Rat(1));
        int r0 = 0;
        for (const auto& cnd : conds) {
            std::vector<Rat> bw = cnd.block.gram_diagonal(false);
            std::vector<GaussRat> rv = realify(cnd.block.coords(cnd.apply(rhs)));
            for (int r = 0; r < 2 * cnd.block.dim(); ++r) {
                c[r0 + r] = rv[r];
                W[r0 + r] = bw[r / 2];
            }
            for (std::size_t i = 0; i < unknowns.size(); ++i) {
                std::vector<GaussRat> col = realify(cnd.block.coords(cnd.apply(images[i])));
                for (int r = 0; r < 2 * cnd.block.dim(); ++r) A.at(r0 + r, static_cast<int>(i)) = col[r];
            }
            r0 += 2 * cnd.block.dim();
        }

        // The stated conditions need not pin the residual: directions of ker A that L
        // does not kill move it inside the allowed space (for d >= 2 the transverse
        // parameter does this on the (2,1) rows). Cutting the residual orthogonal to
        // L(ker A) picks one canonical complement, so the computed Phi depends only on
        // the manifold and not on the solver's kernel choice.
        {
            std::vector<std::vector<GaussRat>> kerA = A.null_space();
            std::vector<std::vector<GaussRat>> extra_rows;
            std::vector<GaussRat> extra_rhs;
            for (const auto& v : kerA) {
                BigradedSeries Lv(n, d, d, k);
                for (std::size_t i = 0; i < unknowns.size(); ++i)
                    if (!v[i].is_zero()) Lv += images[i].scaled(v[i]);
                if (Lv.is_zero()) continue;
                std::vector<GaussRat> row(unknowns.size());
                for (std::size_t i = 0; i < unknowns.size(); ++i) row[i] = fischer_inner(images[i], Lv, false);
                extra_rows.push_back(std::move(row));
                extra_rhs.push_back(fischer_inner(rhs, Lv, false));
            }
            if (!extra_rows.empty()) {
                QMat A2(A.rows() + 2 * static_cast<int>(extra_rows.size()), A.cols());
                std::vector<GaussRat> c2(c.size() + 2 * extra_rows.size());
                std::vector<Rat> W2(W.size() + 2 * extra_rows.size(), Rat(1));
                for (int r = 0; r < A.rows(); ++r)
                    for (int cc = 0; cc < A.cols(); ++cc) A2.at(r, cc) = A.at(r, cc);
                std::copy(c.begin(), c.end(), c2.begin());
                std::copy(W.begin(), W.end(), W2.begin());
                for (std::size_t e = 0; e < extra_rows.size(); ++e)
                    for (int cc = 0; cc < A.cols(); ++cc) {
                        A2.at(A.rows() + 2 * static_cast<int>(e), cc) = GaussRat(extra_rows[e][cc].re);
                        A2.at(A.rows() + 2 * static_cast<int>(e) + 1, cc) = GaussRat(extra_rows[e][cc].im);
                        c2[c.size() + 2 * e] = GaussRat(extra_rhs[e].re);
                        c2[c.size() + 2 * e + 1] = GaussRat(extra_rhs[e].im);
                    }
                A = std::move(A2);
                c = std::move(c2);
                W = std::move(W2);
            }
        }

        std::vector<Rat> V(unknowns.size());
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            V[i] = multiindex_factorial(unknowns[i].term.alpha) * multiindex_factorial(unknowns[i].term.delta);

        MinNormResult sol = minimal_norm_solve_weighted(A, W, V, c);
        if (!vec_is_zero(sol.residual)) fail_internal("degree solve inconsistent at quasidegree " + std::to_string(k));

        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            GaussRat x = sol.solution[i];
            if (sgn(x.im) != 0) fail_internal("degree solve produced a non-real coordinate");
            if (x.is_zero()) continue;
            const Unknown& u = unknowns[i];
            GaussRat coef = u.imag_part ? x * GaussRat::i_unit() : x;
            if (u.is_f)
                res.f_inc.add_term(u.term, u.comp, coef);
            else
                res.g_inc.add_term(u.term, u.comp, coef);
        }

        // ker L on this sector, reported as a real dimension.
        struct KeyLess {
            TermLess tl;
            bool operator()(const std::pair<Term, int>& a, const std::pair<Term, int>& b) const {
                if (!(a.first == b.first)) return tl(a.first, b.first);
                return a.second < b.second;
            }
        };
        std::map<std::pair<Term, int>, int, KeyLess> idx;
        std::vector<std::pair<Term, int>> keys;
        for (const auto& img : images)
            for (const auto& [tm, vv] : img.terms())
                for (int j = 0; j < d; ++j)
                    if (!vv[j].is_zero() && !idx.count({tm, j})) {
                        idx.emplace(std::pair<Term, int>{tm, j}, static_cast<int>(keys.size()));
                        keys.push_back({tm, j});
                    }
        QMat L(2 * static_cast<int>(keys.size()), static_cast<int>(unknowns.size()));
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            for (std::size_t r = 0; r < keys.size(); ++r) {
                GaussRat v = images[i].coeff(keys[r].first, keys[r].second);
                L.at(2 * static_cast<int>(r), static_cast<int>(i)) = GaussRat(v.re);
                L.at(2 * static_cast<int>(r) + 1, static_cast<int>(i)) = GaussRat(v.im);
            }
        res.kernel_dim += static_cast<int>(unknowns.size()) - L.rank();
    }

    BigradedSeries Lx = lhs_full(spec.family, res.f_inc.truncated(k), res.g_inc.truncated(k), k);
    res.phi_k = rhs - Lx.extract_quasidegree(k);
    if (!res.phi_k.is_real_valued()) fail_internal("normal-form component not real valued");
    return res;
}

NormalFormReport run_normalization(const ManifoldSpec& spec, SolveKind kind, const HoloSeries* f0) {
    SpecReport val = validate_spec(spec);
    if (!val.pass) fail_validation("invalid manifold spec: " + val.message);
    if (kind == SolveKind::cm && spec.d != 1) fail_validation("cm normalization requires d = 1");

    NormalFormReport rep;
    rep.mode = kind == SolveKind::weak ? NormalFormMode::weak
               : kind == SolveKind::cm ? NormalFormMode::cm
                                       : NormalFormMode::full;
    Transform t = Transform::identity(spec.n, spec.d, spec.cap);
    BigradedSeries phi(spec.n, spec.d, spec.d, spec.cap);

    for (int k = 3; k <= spec.cap; ++k) {
        DegreeResult dr = solve_degree(spec, t, phi, k, kind, f0);
        t.f += dr.f_inc;
        t.g += dr.g_inc;
        BigradedSeries add = dr.phi_k;
        add.set_cap(spec.cap);
        phi += add;
        rep.kernel_dims.push_back({k, dr.kernel_dim});
    }
    // The top-degree part of a prescribed f0 acts only above the cap; include it
    // so the reported transform carries the parameter verbatim.
    if (kind == SolveKind::weak && f0) t.f += f0->extract_quasidegree(spec.cap);

    rep.phi = phi;
    rep.transform = t;
    rep.conjugacy_exact = verify_conjugacy(spec, t, phi).is_zero();
    if (!rep.conjugacy_exact) fail_internal("normalization lost exact conjugacy");

    std::vector<ConditionReport> reports;
    if (kind == SolveKind::cm) {
        reports.push_back(check_CM(spec.family, phi));
        rep.notes = "unitary polar factor pinned to the identity representative";
    } else {
        reports.push_back(check_N0(spec.family, phi));
        reports.push_back(check_N1(spec.family, phi, spec.cap));
        reports.push_back(check_Nd(spec.family, phi));
        if (kind == SolveKind::formal) reports.push_back(check_Noff(spec.family, phi));
    }
    rep.conditions = merge_reports(reports);
    if (!rep.conditions.pass) fail_internal("normal-form conditions violated by engine output");

    rep.phi11_terms = phi.extract_pq(1, 1).term_count();
    rep.phi12_terms = phi.extract_pq(1, 2).term_count();
    rep.crucial_holds = crucial_residual(spec.family, phi).is_zero();
    return rep;
}

}  // namespace

NormalFormReport normalize_formal(const ManifoldSpec& spec) { return run_normalization(spec, SolveKind::formal, nullptr); }

void require_valid_f0(const ManifoldSpec& spec, const HoloSeries& f0) {
    if (f0.n() != spec.n || f0.d() != spec.d || f0.s() != spec.n) fail_validation("f0 must be n-valued in (z,w)");
    for (const auto& [tm, v] : f0.terms()) {
        if (expo_sum(tm.alpha) != 0) fail_validation("f0 must depend on w only");
        if (expo_sum(tm.delta) == 0) fail_validation("f0 must vanish at the origin");
    }
}

NormalFormReport normalize_weak(const ManifoldSpec& spec, const HoloSeries& f0) {
    require_valid_f0(spec, f0);
    HoloSeries f0c = f0.truncated(spec.cap);
    return run_normalization(spec, SolveKind::weak, &f0c);
}

NormalFormReport cm_normalize(const ManifoldSpec& spec) { return run_normalization(spec, SolveKind::cm, nullptr); }

std::pair<ManifoldSpec, Transform> prepare_normal_coordinates(const ManifoldSpec& spec, const HoloSeries& f0) {
    require_valid_f0(spec, f0);
    SpecReport val = validate_spec(spec);
    if (!val.pass) fail_validation("invalid manifold spec: " + val.message);
    int n = spec.n, d = spec.d, cap = spec.cap;

    ComplexDefining cd = real_to_complex(spec);
    HoloSeries fz = HoloSeries::identity_z(n, d, cap);
    fz += f0;
    HoloSeries fbar0(n, d, n, cap);
    for (const auto& [tm, v] : f0.terms())
        for (int c = 0; c < n; ++c) fbar0.add_term(tm, c, v[c].conj());

    // G(0,w) = phi~(f0, fbar0, w), computed from the full real defining function.
    BigradedSeries defining = quadric_series(spec.family, cap) + spec.perturbation.truncated(cap);
    HoloSeries wid = HoloSeries::identity_w(n, d, cap);
    HoloSeries G0 = evaluate_at_holo(defining, f0, fbar0, wid);
    HoloSeries tau_arg = wid - G0.scaled(GaussRat::i_unit());
    HoloSeries G = evaluate_at_holo(cd.theta, fz, fbar0, tau_arg) - wid;
    G = G.scaled(GaussRat::i_unit().inverse());

    Transform t0;
    t0.f = fz;
    t0.g = wid + G.scaled(GaussRat::i_unit());
    ManifoldSpec prepared = transform_spec(spec, t0);
    if (!check_N0(prepared.family, prepared.perturbation).pass)
        fail_internal("prepare_normal_coordinates did not reach normal coordinates");
    return {prepared, t0};
}

std::pair<ManifoldSpec, Transform> prepare_normal_coordinates(const ManifoldSpec& spec) {
    return prepare_normal_coordinates(spec, HoloSeries::zero(spec.n, spec.d, spec.n, spec.cap));
}

std::pair<Transform, BigradedSeries> normalize_p1_high(const ManifoldSpec& spec) {
    SpecReport val = validate_spec(spec);
    if (!val.pass) fail_validation("invalid manifold spec: " + val.message);
    if (!check_N0(spec.family, spec.perturbation).pass)
        fail_validation("normalize_p1_high requires a spec in normal coordinates");

    Transform t = Transform::identity(spec.n, spec.d, spec.cap);
    BigradedSeries phi(spec.n, spec.d, spec.d, spec.cap);
    for (int k = 3; k <= spec.cap; ++k) {
        DegreeResult dr = solve_degree(spec, t, phi, k, SolveKind::p1high, nullptr);
        t.f += dr.f_inc;
        BigradedSeries add = dr.phi_k;
        add.set_cap(spec.cap);
        phi += add;
    }
    if (!verify_conjugacy(spec, t, phi).is_zero()) fail_internal("p1 normalization lost exact conjugacy");
    for (int p = 4; p <= spec.cap; ++p)
        if (!Kstar_apply(spec.family, phi.extract_pq(p, 1), false).is_zero())
            fail_internal("p1 normalization left a (p,1) residual");
    return {t, phi};
}

}  // namespace cmnf
