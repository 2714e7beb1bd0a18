#pragma once

#include <string>
#include <vector>

#include "quadric.hpp"
#include "series.hpp"

namespace cmnf {

// A manifold Im w = Q(z, zbar) + Phi~(z, zbar, Re w), with Phi~ real valued of
// quasiorder >= 3 truncated at cap.
struct ManifoldSpec {
    int n = 0, d = 0, cap = 0;
    HermitianFamily family;
    BigradedSeries perturbation;  // d-valued
};

struct SpecReport {
    FamilyReport family;
    bool perturbation_real = false;
    bool quasiorder_ok = false;
    bool pass = false;
    std::string message;
};
SpecReport validate_spec(const ManifoldSpec& spec);

// Holomorphic map (z, w) -> (f(z,w), g(z,w)) tangent to the identity.
struct Transform {
    HoloSeries f;  // n-valued, f = z + f_{>=2}
    HoloSeries g;  // d-valued, g = w + g_{>=3}

    static Transform identity(int n, int d, int cap);
    bool is_tangent_to_identity() const;
    HoloSeries f_increment() const;  // f - z
    HoloSeries g_increment() const;  // g - w
};

// The linear side of the conjugacy equation applied to the increment of t:
// (1/2i)(g(z,u+iQ) - conj) - Q(z, fbar(zbar,u-iQ)) - Q(f(z,u+iQ), zbar).
BigradedSeries lhs_full(const HermitianFamily& fam, const HoloSeries& f_inc, const HoloSeries& g_inc, int cap);
// Quasidegree-k part of the operator applied to (f_{k-1}, g_k) of t.
BigradedSeries lhs_apply(const Transform& t, int k, const ManifoldSpec& ctx);

// Full conjugacy residual (1/2i)(g - gbar) - Q(f, fbar) - Phi~(f, fbar, (g+gbar)/2),
// everything evaluated at v = Q + phi, truncated at cap.
BigradedSeries verify_conjugacy(const ManifoldSpec& spec, const Transform& t, const BigradedSeries& phi);

// Quasidegree-k right-hand side of the degree-k conjugacy equation; reads only
// f of quasidegree < k-1, g of quasidegree < k and phi of quasidegree < k.
BigradedSeries rhs_degree_k(const ManifoldSpec& spec, const Transform& t_partial,
                            const BigradedSeries& phi_partial, int k);

// Defining function of the same manifold after the coordinate change t ((z', w') = t(z, w)).
ManifoldSpec transform_spec(const ManifoldSpec& spec, const Transform& t);

// Complex defining equation w = theta(z, chi, tau) with theta = tau + 2iQ + S.
struct ComplexDefining {
    int n = 0, d = 0, cap = 0;
    HermitianFamily family;
    BigradedSeries theta;  // chi stored in the zbar slot, tau in the u slot
    BigradedSeries S;      // theta - tau - 2iQ, quasiorder >= 3

    BigradedSeries S_component(int j, int k) const { return S.extract_pq(j, k); }
};

ComplexDefining real_to_complex(const ManifoldSpec& spec);

struct RealityReport {
    BigradedSeries residual;  // tau - theta(z, chi, conj theta(chi, z, tau))
    std::vector<std::pair<std::string, BigradedSeries>> relation_residuals;
    bool pass = false;
};
RealityReport reality_check(const ComplexDefining& cd);

// Phi_{p,q} for (p,q) <= (3,3) recovered from the S_{j,k} by the closed formulas.
BigradedSeries phi_from_S(const ComplexDefining& cd);

// Independent cross-check of the component expansions: for the requested bidegree,
// the pair (substitution-engine value, closed-form value) for the g-Taylor
// difference and for Q(f_{>=2}, fbar_{>=2}); the contract is exact agreement.
struct CrosscheckResult {
    BigradedSeries g_taylor_generic, g_taylor_closed;
    BigradedSeries qff_generic, qff_closed;
    bool pass() const { return g_taylor_generic == g_taylor_closed && qff_generic == qff_closed; }
};
CrosscheckResult appendix_crosscheck(const ManifoldSpec& spec, const Transform& t, const BigradedSeries& phi,
                                     int p, int q);

}  // namespace cmnf
