#include "diagnostics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "error.hpp"
#include "fischer.hpp"
#include "multiindex.hpp"

namespace cmnf {

BigradedSeries crucial_residual(const HermitianFamily& fam, const BigradedSeries& phi) {
    if (!phi.is_real_valued()) fail_validation("crucial_residual: phi must be real valued");
    BigradedSeries p11 = phi.extract_pq(1, 1);
    BigradedSeries p12 = phi.extract_pq(1, 2);
    BigradedSeries Q = quadric_series(fam, phi.cap());
    return d_u_contract(p11, p12) - d_u_contract(p12, Q + p11);
}

namespace {

double norm2_bigraded(const BigradedSeries& s, int k) {
    double acc = 0;
    for (const auto& [t, v] : s.terms()) {
        if (t.wt() != k) continue;
        double w = fischer_weight(t, true).get_d();
        for (const auto& c : v) acc += w * (c.to_double_re() * c.to_double_re() + c.to_double_im() * c.to_double_im());
    }
    return acc;
}

double norm2_holo(const HoloSeries& s, int k) {
    double acc = 0;
    for (const auto& [t, v] : s.terms()) {
        if (t.wt() != k) continue;
        Rat w = multiindex_factorial(t.alpha) * multiindex_factorial(t.delta) /
                Rat(factorial(expo_sum(t.alpha) + expo_sum(t.delta)));
        for (const auto& c : v)
            acc += w.get_d() * (c.to_double_re() * c.to_double_re() + c.to_double_im() * c.to_double_im());
    }
    return acc;
}

}  // namespace

GrowthProfile norm_growth(const BigradedSeries& phi, const Transform& t) {
    GrowthProfile out;
    int cap = phi.cap();
    HoloSeries fi = t.f_increment(), gi = t.g_increment();
    for (int k = 0; k <= cap; ++k) {
        out.phi_norms.push_back(std::sqrt(norm2_bigraded(phi, k)));
        out.transform_norms.push_back(std::sqrt(norm2_holo(fi, k) + norm2_holo(gi, k)));
    }
    // Least-squares geometric ratio over the nonzero phi norms.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = 0; k <= cap; ++k) {
        if (out.phi_norms[k] <= 0) continue;
        double x = k, y = std::log(out.phi_norms[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2 && cnt * sxx - sx * sx != 0) out.ratio = std::exp((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
    return out;
}

// ---------------------------------------------------------------- big denominators

namespace {

struct RealBasisElem {
    int group;  // component index into cfg.m
    BigradedSeries series;
    double weight;  // squared norm of the basis element
};

// Realified coordinates of a d-valued series over a bidegree block, with the
// u-tensor norm: value-space normalized Fischer times u-Fischer weight.
struct TargetBlock {
    std::vector<std::pair<Term, int>> basis;
    std::vector<double> weight;

    static TargetBlock build(int n, int d, int s, int p, int q, int udeg) {
        TargetBlock b;
        Rat val_w = Rat(factorial(p)) * Rat(factorial(q)) / Rat(factorial(p + q));
        for (const Expo& a : multiindices_of_degree(n, p))
            for (const Expo& bb : multiindices_of_degree(n, q))
                for (const Expo& g : multiindices_of_degree(d, udeg)) {
                    Rat w = multiindex_factorial(a) * multiindex_factorial(bb) / Rat(factorial(p + q)) *
                            (multiindex_factorial(g) / Rat(factorial(udeg)));
                    for (int j = 0; j < s; ++j) {
                        b.basis.push_back({Term{a, bb, g}, j});
                        b.weight.push_back(w.get_d());
                    }
                }
        (void)val_w;
        return b;
    }
};

}  // namespace

BigdenomTable bigdenom_probe(const HermitianFamily& fam, BigdenomOp op, const ProbeConfig& cfg) {
    BigdenomTable table;
    table.op = op;
    table.cfg = cfg;
    int n = fam.n, d = fam.d;
    int ngroups = op == BigdenomOp::Delta_cubed ? 1 : 2;
    std::vector<int> m = op == BigdenomOp::Delta_cubed ? std::vector<int>{3} : std::vector<int>{2, 3};
    int cap = 2 * (cfg.i_max + 4) + 6;

    for (int i = cfg.i_min; i <= cfg.i_max; ++i) {
        // Domain basis.
        std::vector<RealBasisElem> dom;
        auto push = [&](int group, const BigradedSeries& s, double w) { dom.push_back({group, s, w}); };
        if (op == BigdenomOp::L1_tilde) {
            // f1 group: A(u) z with A an n x n matrix, u-degree i + 2.
            for (const Expo& g : multiindices_of_degree(d, i + 2)) {
                double uw = Rat(multiindex_factorial(g) / Rat(factorial(i + 2))).get_d();
                for (int c = 0; c < n; ++c)
                    for (int zv = 0; zv < n; ++zv)
                        for (int im = 0; im < 2; ++im) {
                            Term t{Expo(n, 0), Expo(n, 0), g};
                            t.alpha[zv] = 1;
                            push(0,
                                 BigradedSeries::monomial(n, d, n, cap, t, c,
                                                          im ? GaussRat::i_unit() : GaussRat(1)),
                                 uw);
                        }
            }
        }
        {
            // psi group (real valued): u-degree i + 3.
            int group = op == BigdenomOp::Delta_cubed ? 0 : 1;
            for (const Expo& g : multiindices_of_degree(d, i + 3)) {
                double uw = Rat(multiindex_factorial(g) / Rat(factorial(i + 3))).get_d();
                for (int c = 0; c < d; ++c) {
                    Term t{Expo(n, 0), Expo(n, 0), g};
                    push(group, BigradedSeries::monomial(n, d, d, cap, t, c, GaussRat(1)), uw);
                }
            }
        }

        // Row evaluator.
        auto half = GaussRat(Rat(1, 2));
        auto halfi = GaussRat(Rat(0), Rat(-1, 2));  // 1/(2i)
        auto rows_of = [&](const BigradedSeries& f1, const BigradedSeries& psi) {
            std::vector<BigradedSeries> rows;
            if (op == BigdenomOp::Delta_cubed) {
                rows.push_back(delta_apply(fam, delta_apply(fam, delta_apply(fam, psi))));
                return rows;
            }
            BigradedSeries d2f1 = delta_apply(fam, delta_apply(fam, f1));
            BigradedSeries Kd2 = K_apply(fam, d2f1, false);
            BigradedSeries reK = (Kd2 + Kd2.conjugate()).scaled(half);
            BigradedSeries imK = (Kd2 - Kd2.conjugate()).scaled(halfi);
            BigradedSeries d3psi = delta_apply(fam, delta_apply(fam, delta_apply(fam, psi)));
            rows.push_back(d3psi - reK.scaled(GaussRat(2)));
            rows.push_back(imK.scaled(GaussRat(-2)));
            rows.push_back(d3psi.scaled(GaussRat(rat_from_long(-1, 6))) + reK);
            return rows;
        };

        TargetBlock blk = TargetBlock::build(n, d, d, 3, 3, i);
        int nrows_per = 2 * static_cast<int>(blk.basis.size());
        int nrows = (op == BigdenomOp::Delta_cubed ? 1 : 3) * nrows_per;
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nrows, static_cast<int>(dom.size()));
        BigradedSeries zf1(n, d, n, cap), zpsi(n, d, d, cap);
        for (std::size_t c = 0; c < dom.size(); ++c) {
            std::vector<BigradedSeries> rows =
                (op == BigdenomOp::L1_tilde && dom[c].group == 0) ? rows_of(dom[c].series, zpsi)
                : op == BigdenomOp::L1_tilde                      ? rows_of(zf1, dom[c].series)
                                                                  : rows_of(zf1, dom[c].series);
            double dw = std::sqrt(dom[c].weight);
            for (std::size_t rr = 0; rr < rows.size(); ++rr)
                for (std::size_t b = 0; b < blk.basis.size(); ++b) {
                    GaussRat v = rows[rr].coeff(blk.basis[b].first, blk.basis[b].second);
                    double ww = std::sqrt(blk.weight[b]);
                    M(static_cast<int>(rr) * nrows_per + 2 * static_cast<int>(b), static_cast<int>(c)) =
                        v.to_double_re() * ww / dw;
                    M(static_cast<int>(rr) * nrows_per + 2 * static_cast<int>(b) + 1, static_cast<int>(c)) =
                        v.to_double_im() * ww / dw;
                }
        }

        BigdenomRow row;
        row.degree = i;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        double smax = sv.size() ? sv.maxCoeff() : 0.0;
        double tol = smax * 1e-12;
        Eigen::VectorXd inv = sv;
        for (int j = 0; j < inv.size(); ++j) inv(j) = sv(j) > tol ? 1.0 / sv(j) : 0.0;
        if (smax == 0.0) row.gram_singular = true;
        Eigen::MatrixXd pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
        for (int gj = 0; gj < ngroups; ++gj) {
            std::vector<int> idx;
            for (std::size_t c = 0; c < dom.size(); ++c)
                if (dom[c].group == gj) idx.push_back(static_cast<int>(c));
            Eigen::MatrixXd sub(static_cast<int>(idx.size()), pinv.cols());
            for (std::size_t r = 0; r < idx.size(); ++r) sub.row(static_cast<int>(r)) = pinv.row(idx[r]);
            Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(sub);
            double nm = ssvd.singularValues().size() ? ssvd.singularValues().maxCoeff() : 0.0;
            row.inverse_norms.push_back(nm);
            double scale = 1.0;
            for (int tt = 1; tt <= m[gj]; ++tt) scale *= (i + cfg.q + tt);
            row.rescaled.push_back(nm * scale);
        }
        table.rows.push_back(std::move(row));
    }

    table.bounded.resize(ngroups, false);
    table.verdict = true;
    for (int gj = 0; gj < ngroups; ++gj) {
        double base = table.rows.front().rescaled[gj];
        double sup = 0;
        for (const auto& r : table.rows) sup = std::max(sup, r.rescaled[gj]);
        table.bounded[gj] = base == 0.0 ? sup == 0.0 : sup <= 10.0 * base;
        table.verdict = table.verdict && table.bounded[gj];
    }
    return table;
}

// ---------------------------------------------------------------- regularity probe

namespace {

int u_vanishing_order(const BigradedSeries& s) {
    if (s.is_zero()) return -1;
    int m = -1;
    for (const auto& [t, v] : s.terms()) {
        int u = expo_sum(t.gamma);
        if (m < 0 || u < m) m = u;
    }
    return m;
}

}  // namespace

RegularityReport regularity_probe(int n, int d, int cap, const WEvaluator& W, const std::vector<JetSlot>& slots,
                                  const ProbeConfig& cfg, const std::vector<BigradedSeries>& jet,
                                  const std::vector<std::vector<BigradedSeries>>& slot_directions,
                                  const std::vector<BigradedSeries>* second_jet) {
    if (slots.size() != jet.size() || slots.size() != slot_directions.size())
        fail_validation("regularity_probe: jet size mismatch");
    RegularityReport rep;
    rep.regular = true;

    // Exact slot derivative by interpolation in the perturbation scale: p(t) =
    // W(jet + t * direction) has degree <= cap in t, so p'(0) is a fixed rational
    // combination of the values at the integer nodes 0..cap.
    int D = cap;
    std::vector<Rat> lag(D + 1, Rat(0));
    for (int j = 0; j <= D; ++j) {
        Rat acc(0);
        for (int mm = 0; mm <= D; ++mm) {
            if (mm == j) continue;
            Rat prod = rat_from_long(1, j - mm);
            for (int l = 0; l <= D; ++l) {
                if (l == j || l == mm) continue;
                prod *= rat_from_long(-l, 1);
                prod /= rat_from_long(j - l, 1);
            }
            acc += prod;
        }
        lag[j] = acc;
    }

    for (std::size_t si = 0; si < slots.size(); ++si) {
        const JetSlot& slot = slots[si];
        int mj = cfg.m.at(slot.j);
        int required = std::max(0, expo_sum(slot.alpha) + cfg.q + 1 - mj);

        int actual = -1;  // min vanishing order over the slot's value directions
        for (const BigradedSeries& unit : slot_directions[si]) {
            BigradedSeries dW(n, d, 1, cap);
            bool first = true;
            for (int node = 0; node <= D; ++node) {
                if (lag[node] == 0) continue;
                std::vector<BigradedSeries> perturbed = jet;
                perturbed[si] += unit.scaled(GaussRat(rat_from_long(node)));
                BigradedSeries val = W(perturbed).scaled(GaussRat(lag[node]));
                if (first) {
                    dW = val;
                    first = false;
                } else {
                    dW += val;
                }
            }
            int o = u_vanishing_order(dW);
            if (o >= 0 && (actual < 0 || o < actual)) actual = o;
        }

        RegularitySlotResult r;
        r.slot = slot;
        r.required_order = required;
        r.actual_order = actual;
        r.pass = actual < 0 || actual >= required;
        rep.regular = rep.regular && r.pass;
        rep.slots.push_back(std::move(r));
    }

    if (second_jet) {
        if (second_jet->size() != jet.size()) fail_validation("regularity_probe: second jet size mismatch");
        int ord_jets = -1;
        for (std::size_t si = 0; si < jet.size(); ++si) {
            int o = u_vanishing_order(jet[si] - (*second_jet)[si]);
            if (o >= 0 && (ord_jets < 0 || o < ord_jets)) ord_jets = o;
        }
        int ow = u_vanishing_order(W(jet) - W(*second_jet));
        if (ord_jets < 0)
            rep.strict_increase = true;
        else
            rep.strict_increase = ow < 0 || ow > ord_jets + cfg.q;
    }
    return rep;
}

// ---------------------------------------------------------------- concrete system

ConcreteWSystem build_diagonal_row_system(const ManifoldSpec& spec) {
    ConcreteWSystem sys;
    sys.n = spec.n;
    sys.d = spec.d;
    sys.cap = spec.cap;
    sys.m = {2, 3};
    int n = spec.n, d = spec.d, cap = spec.cap;
    for (int j = 0; j < 2; ++j)
        for (const Expo& a : multiindices_up_to_degree(d, sys.m[j])) sys.slots.push_back({j, a});

    const HermitianFamily fam = spec.family;
    BigradedSeries Q = quadric_series(fam, cap);
    BigradedSeries pert = spec.perturbation.truncated(cap);
    pert.set_cap(cap);
    BigradedSeries phi11 = pert.extract_pq(1, 1);
    BigradedSeries phi22 = pert.extract_pq(2, 2);
    BigradedSeries phi33 = pert.extract_pq(3, 3);
    std::vector<JetSlot> slots = sys.slots;

    // The diagonal-row nonlinear side with every jet occurrence replaced by its
    // independent slot value (slot group 0: f1 and its u-derivatives, group 1: psi);
    // the perturbation components of the spec are the fixed analytic data. The
    // top-order slots enter only against data vanishing at u = 0.
    sys.W = [=](const std::vector<BigradedSeries>& vals) -> BigradedSeries {
        auto slot_val = [&](int j, const Expo& a) -> const BigradedSeries& {
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (slots[i].j == j && slots[i].alpha == a) return vals[i];
            fail_internal("missing slot");
        };
        // sum_{|a| = order} order!/a! slot(group, a) * prod_l V_l^{a_l}
        auto contract = [&](int group, int order, const BigradedSeries& V, int s_out) {
            BigradedSeries acc(n, d, s_out, cap);
            for (const Expo& a : multiindices_of_degree(d, order)) {
                Rat mult = Rat(factorial(order)) / multiindex_factorial(a);
                BigradedSeries prod(n, d, 1, cap);
                prod.add_term(Term{Expo(n, 0), Expo(n, 0), Expo(d, 0)}, 0, GaussRat(1));
                for (int l = 0; l < d; ++l)
                    for (int e = 0; e < a[l]; ++e) prod = mul(prod, V.component(l)).truncated(cap);
                acc += mul(prod, slot_val(group, a)).scaled(GaussRat(mult));
            }
            return acc;
        };
        GaussRat iu = GaussRat::i_unit();
        BigradedSeries f1 = slot_val(0, Expo(d, 0));
        BigradedSeries f1bar = f1.conjugate();
        BigradedSeries QP = Q + phi11;

        BigradedSeries w1 = eval_Q(fam, f1, f1bar) + contract(1, 1, phi11, d);

        BigradedSeries df1QP = contract(0, 1, QP, n);
        BigradedSeries w2 = eval_Q(fam, df1QP, f1bar).scaled(iu) - eval_Q(fam, f1, df1QP.conjugate()).scaled(iu);
        w2 += contract(1, 1, phi22, d);
        w2 += (contract(1, 2, QP, d) - contract(1, 2, Q, d)).scaled(GaussRat(Rat(1, 2)));

        BigradedSeries d2f1QP = contract(0, 2, QP, n);
        BigradedSeries w3 = eval_Q(fam, d2f1QP, f1bar) + eval_Q(fam, f1, d2f1QP.conjugate());
        w3 += contract(1, 1, phi33, d);
        w3 += (contract(1, 3, QP, d) - contract(1, 3, Q, d)).scaled(GaussRat(rat_from_long(1, 6)));

        BigradedSeries out(n, d, 3 * d, cap);
        for (int j = 0; j < d; ++j) {
            out.set_component(j, w1.component(j));
            out.set_component(d + j, w2.component(j));
            out.set_component(2 * d + j, w3.component(j));
        }
        return out;
    };
    return sys;
}

std::vector<std::vector<BigradedSeries>> ConcreteWSystem::slot_directions() const {
    std::vector<std::vector<BigradedSeries>> out;
    for (const JetSlot& s : slots) {
        std::vector<BigradedSeries> dirs;
        if (s.j == 0) {
            for (int zv = 0; zv < n; ++zv)
                for (int c = 0; c < n; ++c)
                    for (int im = 0; im < 2; ++im) {
                        Term t{Expo(n, 0), Expo(n, 0), Expo(d, 0)};
                        t.alpha[zv] = 1;
                        dirs.push_back(BigradedSeries::monomial(n, d, n, cap, t, c,
                                                                im ? GaussRat::i_unit() : GaussRat(1)));
                    }
        } else {
            for (int c = 0; c < d; ++c)
                dirs.push_back(BigradedSeries::monomial(n, d, d, cap,
                                                        Term{Expo(n, 0), Expo(n, 0), Expo(d, 0)}, c, GaussRat(1)));
        }
        out.push_back(std::move(dirs));
    }
    return out;
}

std::vector<BigradedSeries> ConcreteWSystem::sample_jet(unsigned seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    // Consistent jets of random polynomial unknowns with ord f1 >= 2, ord psi >= 3.
    BigradedSeries f1(n, d, n, cap);
    for (const Expo& g : multiindices_of_degree(d, 2))
        for (int zv = 0; zv < n; ++zv)
            for (int c = 0; c < n; ++c) {
                Term t{Expo(n, 0), Expo(n, 0), g};
                t.alpha[zv] = 1;
                f1.add_term(t, c, GaussRat(rat_from_long(coef(rng)), rat_from_long(coef(rng))));
            }
    BigradedSeries psi(n, d, d, cap);
    for (const Expo& g : multiindices_of_degree(d, 3))
        for (int c = 0; c < d; ++c) {
            Term t{Expo(n, 0), Expo(n, 0), g};
            psi.add_term(t, c, GaussRat(rat_from_long(coef(rng))));
        }
    std::vector<BigradedSeries> out;
    for (const JetSlot& s : slots) {
        BigradedSeries base = s.j == 0 ? f1 : psi;
        for (int l = 0; l < d; ++l)
            for (int e = 0; e < s.alpha[l]; ++e) base = base.d_u(l);
        out.push_back(base);
    }
    return out;
}

}  // namespace cmnf
