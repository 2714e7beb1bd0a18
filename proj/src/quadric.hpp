#pragma once

#include <string>
#include <vector>

#include "linalg.hpp"
#include "series.hpp"

namespace cmnf {

// The d Hermitian matrices J_1..J_d defining the model quadric Im w = Q(z, zbar).
struct HermitianFamily {
    int n = 0, d = 0;
    std::vector<QMat> J;  // each n x n

    GaussRat entry(int k, int p, int q) const { return J[k].at(p, q); }
};

struct FamilyReport {
    bool hermitian = false;
    int common_kernel_dim = -1;
    bool independent = false;
    bool pass = false;
    std::string message;
};

// Nondegeneracy check: each J_k Hermitian, trivial common kernel, real-linear
// independence of the family.
FamilyReport validate_family(const HermitianFamily& fam);

// Q(a, b) with b in the conjugated slot: component k is b^t J_k a.
BigradedSeries eval_Q(const HermitianFamily& fam, const BigradedSeries& a, const BigradedSeries& b);

// The model quadric Q(z, zbar) as a d-valued series.
BigradedSeries quadric_series(const HermitianFamily& fam, int cap);

// K(f) = Q(f, zbar) for f(z, u) holomorphic in z; conjugated variant gives
// Kbar(fbar) = Q(z, fbar). Input passed as a bigraded series (beta empty resp. alpha empty).
BigradedSeries K_apply(const HermitianFamily& fam, const BigradedSeries& f, bool conjugated);
BigradedSeries K_apply(const HermitianFamily& fam, const HoloSeries& f, bool conjugated);

// Per z-homogeneity m: (1/(m+1)) sum_k J_k d_zbar P_k, the normalized-Fischer adjoint
// of K. P must be linear in zbar (alpha-linear when conjugated).
BigradedSeries Kstar_apply(const HermitianFamily& fam, const BigradedSeries& P, bool conjugated);

// Delta phi = sum_j dphi/du_j Q_j.
BigradedSeries delta_apply(const HermitianFamily& fam, const BigradedSeries& phi);
// Delta* phi = sum_j u_j Q_j(d_z, d_zbar) phi, the standard-Fischer adjoint of Delta.
BigradedSeries deltastar_apply(const HermitianFamily& fam, const BigradedSeries& phi);

// d = 1 trace operator, applied `power` times; u * trace(phi) = Delta*(phi).
BigradedSeries cm_trace(const HermitianFamily& fam, const BigradedSeries& phi, int power);

struct SigmaMin {
    double sigma_min = 0.0;
    double rescaled = 0.0;  // sqrt(m+1) * sigma_min
};
// Smallest singular value of K_m between normalized-Fischer spaces (double precision,
// diagnostics only).
SigmaMin sigma_min_K(const HermitianFamily& fam, int m);

}  // namespace cmnf
