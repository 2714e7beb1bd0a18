#include "quadric.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "error.hpp"
#include "multiindex.hpp"

namespace cmnf {

FamilyReport validate_family(const HermitianFamily& fam) {
    FamilyReport rep;
    if (fam.d <= 0 || fam.n <= 0 || static_cast<int>(fam.J.size()) != fam.d) {
        rep.message = "family has wrong shape";
        return rep;
    }
    for (const QMat& J : fam.J)
        if (J.rows() != fam.n || J.cols() != fam.n) {
            rep.message = "J matrices must be n x n";
            return rep;
        }
    rep.hermitian = true;
    for (int k = 0; k < fam.d && rep.hermitian; ++k)
        for (int p = 0; p < fam.n && rep.hermitian; ++p)
            for (int q = 0; q < fam.n; ++q)
                if (fam.J[k].at(p, q) != fam.J[k].at(q, p).conj()) {
                    rep.hermitian = false;
                    rep.message = "J_" + std::to_string(k + 1) + " is not Hermitian";
                    break;
                }

    // Common kernel: stack all J_k.
    QMat stack(fam.d * fam.n, fam.n);
    for (int k = 0; k < fam.d; ++k)
        for (int p = 0; p < fam.n; ++p)
            for (int q = 0; q < fam.n; ++q) stack.at(k * fam.n + p, q) = fam.J[k].at(p, q);
    rep.common_kernel_dim = fam.n - stack.rank();

    // Real-linear independence: realify each J_k into a vector.
    QMat dep(fam.d, 2 * fam.n * fam.n);
    for (int k = 0; k < fam.d; ++k)
        for (int p = 0; p < fam.n; ++p)
            for (int q = 0; q < fam.n; ++q) {
                dep.at(k, 2 * (p * fam.n + q)) = GaussRat(fam.J[k].at(p, q).re);
                dep.at(k, 2 * (p * fam.n + q) + 1) = GaussRat(fam.J[k].at(p, q).im);
            }
    rep.independent = dep.rank() == fam.d;

    rep.pass = rep.hermitian && rep.common_kernel_dim == 0 && rep.independent;
    if (!rep.pass && rep.message.empty()) {
        if (rep.common_kernel_dim != 0)
            rep.message = "common kernel of the J_k is nontrivial";
        else if (!rep.independent)
            rep.message = "the J_k are linearly dependent over R";
    }
    return rep;
}

BigradedSeries eval_Q(const HermitianFamily& fam, const BigradedSeries& a, const BigradedSeries& b) {
    if (a.s() != fam.n || b.s() != fam.n) fail_validation("eval_Q: arguments must be n-valued");
    int cap = std::min(a.cap(), b.cap());
    BigradedSeries r(a.n(), a.d(), fam.d, cap);
    std::vector<BigradedSeries> ac(fam.n), bc(fam.n);
    for (int i = 0; i < fam.n; ++i) {
        ac[i] = a.component(i);
        bc[i] = b.component(i);
    }
    for (int k = 0; k < fam.d; ++k) {
        BigradedSeries comp(a.n(), a.d(), 1, cap);
        for (int p = 0; p < fam.n; ++p)
            for (int q = 0; q < fam.n; ++q) {
                GaussRat j = fam.entry(k, p, q);
                if (j.is_zero()) continue;
                comp += mul(bc[p], ac[q]).scaled(j);
            }
        r.set_component(k, comp);
    }
    return r;
}

BigradedSeries quadric_series(const HermitianFamily& fam, int cap) {
    BigradedSeries z = BigradedSeries::identity_z(fam.n, fam.d, cap);
    return eval_Q(fam, z, z.conjugate());
}

BigradedSeries K_apply(const HermitianFamily& fam, const BigradedSeries& f, bool conjugated) {
    BigradedSeries id = BigradedSeries::identity_z(fam.n, fam.d, f.cap());
    if (!conjugated) return eval_Q(fam, f, id.conjugate());
    return eval_Q(fam, id, f);
}

BigradedSeries K_apply(const HermitianFamily& fam, const HoloSeries& f, bool conjugated) {
    return K_apply(fam, conjugated ? f.conj_rename_w_to_u() : f.rename_w_to_u(), conjugated);
}

BigradedSeries Kstar_apply(const HermitianFamily& fam, const BigradedSeries& P, bool conjugated) {
    if (P.s() != fam.d) fail_validation("Kstar_apply: argument must be d-valued");
    if (conjugated) return Kstar_apply(fam, P.conjugate(), false).conjugate();
    for (const auto& [t, v] : P.terms())
        if (expo_sum(t.beta) != 1) fail_validation("Kstar_apply: argument must be linear in zbar");
    BigradedSeries r(P.n(), P.d(), fam.n, P.cap());
    for (int m = 0; m <= P.cap(); ++m) {
        BigradedSeries Pm = P.extract_pq(m, 1);
        if (Pm.is_zero()) continue;
        GaussRat inv_m1 = GaussRat(Rat(1, m + 1));
        for (int q = 0; q < fam.n; ++q) {
            BigradedSeries comp(P.n(), P.d(), 1, P.cap());
            for (int k = 0; k < fam.d; ++k)
                for (int p = 0; p < fam.n; ++p) {
                    GaussRat j = fam.entry(k, q, p);  // (J_k d_zbar)^q = sum_p (J_k)_{q,p} d_zbar_p
                    if (j.is_zero()) continue;
                    comp += Pm.component(k).d_zbar(p).scaled(j);
                }
            BigradedSeries lift(P.n(), P.d(), fam.n, P.cap());
            lift.set_component(q, comp.scaled(inv_m1));
            r += lift;
        }
    }
    return r;
}

BigradedSeries delta_apply(const HermitianFamily& fam, const BigradedSeries& phi) {
    BigradedSeries Q = quadric_series(fam, phi.cap());
    BigradedSeries r(phi.n(), phi.d(), phi.s(), phi.cap());
    for (int j = 0; j < fam.d; ++j) r += mul(Q.component(j), phi.d_u(j));
    return r;
}

BigradedSeries deltastar_apply(const HermitianFamily& fam, const BigradedSeries& phi) {
    BigradedSeries r(phi.n(), phi.d(), phi.s(), phi.cap());
    for (int j = 0; j < fam.d; ++j) {
        BigradedSeries acc(phi.n(), phi.d(), phi.s(), phi.cap());
        for (int p = 0; p < fam.n; ++p)
            for (int q = 0; q < fam.n; ++q) {
                GaussRat c = fam.entry(j, p, q).conj();
                if (c.is_zero()) continue;
                acc += phi.d_zbar(p).d_z(q).scaled(c);
            }
        Term uj{Expo(phi.n(), 0), Expo(phi.n(), 0), Expo(phi.d(), 0)};
        uj.gamma[j] = 1;
        BigradedSeries umon = BigradedSeries::monomial(phi.n(), phi.d(), 1, phi.cap(), uj, 0, GaussRat(1));
        r += mul(umon, acc);
    }
    return r;
}

BigradedSeries cm_trace(const HermitianFamily& fam, const BigradedSeries& phi, int power) {
    if (fam.d != 1) fail_validation("cm_trace: defined only for d = 1");
    BigradedSeries r = phi;
    for (int it = 0; it < power; ++it) {
        BigradedSeries acc(phi.n(), phi.d(), phi.s(), phi.cap());
        for (int p = 0; p < fam.n; ++p)
            for (int q = 0; q < fam.n; ++q) {
                GaussRat c = fam.entry(0, p, q).conj();
                if (c.is_zero()) continue;
                acc += r.d_zbar(p).d_z(q).scaled(c);
            }
        r = acc;
    }
    return r;
}

SigmaMin sigma_min_K(const HermitianFamily& fam, int m) {
    // Domain: C^n-valued z-homogeneous degree m, normalized Fischer alpha!/m!.
    // Codomain: R_{m,1}, weights alpha! * 1 / (m+1)!.
    std::vector<Expo> alphas = multiindices_of_degree(fam.n, m);
    int dim_dom = static_cast<int>(alphas.size()) * fam.n;
    int dim_cod = static_cast<int>(alphas.size()) * fam.n * fam.d;

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim_cod, dim_dom);
    auto dom_weight = [&](const Expo& a) { return Rat(multiindex_factorial(a) / Rat(factorial(m))); };
    auto cod_weight = [&](const Expo& a) { return Rat(multiindex_factorial(a) / Rat(factorial(m + 1))); };
    auto cidx = [&](int ai, int p, int k) { return (ai * fam.n + p) * fam.d + k; };

    for (std::size_t ai = 0; ai < alphas.size(); ++ai)
        for (int q = 0; q < fam.n; ++q) {
            int col = static_cast<int>(ai) * fam.n + q;
            double dw = std::sqrt(dom_weight(alphas[ai]).get_d());
            // K(z^alpha e_q) has component k equal to sum_p (J_k)_{p,q} zbar_p z^alpha.
            for (int k = 0; k < fam.d; ++k)
                for (int p = 0; p < fam.n; ++p) {
                    GaussRat j = fam.entry(k, p, q);
                    if (j.is_zero()) continue;
                    double cw = std::sqrt(cod_weight(alphas[ai]).get_d());
                    std::complex<double> val(j.to_double_re(), j.to_double_im());
                    M(cidx(static_cast<int>(ai), p, k), col) += val * cw / dw;
                }
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    SigmaMin out;
    out.sigma_min = svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0;
    out.rescaled = std::sqrt(static_cast<double>(m + 1)) * out.sigma_min;
    return out;
}

}  // namespace cmnf
