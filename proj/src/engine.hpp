#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "conjugacy.hpp"

namespace cmnf {

enum class NormalFormMode { full, weak, cm };

struct NormalFormReport {
    NormalFormMode mode = NormalFormMode::full;
    BigradedSeries phi;
    Transform transform;
    ConditionReport conditions;
    std::vector<std::pair<int, int>> kernel_dims;  // (quasidegree, real dimension of ker L_k)
    bool conjugacy_exact = false;
    // d = 1 outputs report the computed Phi_{1,1}, Phi_{1,2} and the convergence
    // criterion verdict without asserting either claim about them.
    std::size_t phi11_terms = 0;
    std::size_t phi12_terms = 0;
    std::optional<bool> crucial_holds;
    std::string notes;
};

// Theorem-1.1-style full formal normal form into N0 ∩ N1 ∩ Nd ∩ Noff.
NormalFormReport normalize_formal(const ManifoldSpec& spec);
// Weak normal form with the transverse parameter f0 prescribed; target drops Noff.
NormalFormReport normalize_weak(const ManifoldSpec& spec, const HoloSeries& f0);
// d = 1 Chern-Moser normalization.
NormalFormReport cm_normalize(const ManifoldSpec& spec);

// Preliminary change of coordinates z -> z + f0(w), w -> w + iG(z,w) making the
// coordinates normal (Phi_{p,0} = Phi_{0,p} = 0). f0 may be zero.
std::pair<ManifoldSpec, Transform> prepare_normal_coordinates(const ManifoldSpec& spec, const HoloSeries& f0);
std::pair<ManifoldSpec, Transform> prepare_normal_coordinates(const ManifoldSpec& spec);

// z -> z + f_{>=4}(z,w), w -> w solving Kstar Phi_{p,1} = 0 for 4 <= p <= cap;
// requires a spec already in normal coordinates. Returns the transform and the
// transformed perturbation.
std::pair<Transform, BigradedSeries> normalize_p1_high(const ManifoldSpec& spec);

// f0 validation helper shared by normalize_weak and the CLI.
void require_valid_f0(const ManifoldSpec& spec, const HoloSeries& f0);

}  // namespace cmnf
