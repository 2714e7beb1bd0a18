#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conjugacy.hpp"
#include "quadric.hpp"
#include "series.hpp"

namespace cmnf {

// Phi'_{1,1} Phi_{1,2} - Phi'_{1,2} (Q + Phi_{1,1}), primes contracted against the
// following d-vector argument. Exact; zero iff the convergence criterion holds
// through the cap.
BigradedSeries crucial_residual(const HermitianFamily& fam, const BigradedSeries& phi);

struct GrowthProfile {
    std::vector<double> phi_norms;        // per quasidegree, normalized Fischer
    std::vector<double> transform_norms;  // f and g increments combined
    std::optional<double> ratio;          // least-squares geometric ratio of phi norms
};
GrowthProfile norm_growth(const BigradedSeries& phi, const Transform& t);

enum class BigdenomOp { L1_tilde, Delta_cubed };

struct ProbeConfig {
    std::vector<int> m;  // order multiindex, one entry per unknown component
    int q = 0;
    int i_min = 0, i_max = 0;
};

struct BigdenomRow {
    int degree = 0;
    std::vector<double> inverse_norms;   // per component j: ||S_j^-1 pi|| on the block
    std::vector<double> rescaled;        // x (i+m_j+q)...(i+q+1)
    bool gram_singular = false;
};
struct BigdenomTable {
    BigdenomOp op;
    ProbeConfig cfg;
    std::vector<BigdenomRow> rows;
    std::vector<bool> bounded;  // verdict per component: sup <= 10x value at i_min
    bool verdict = false;
};
BigdenomTable bigdenom_probe(const HermitianFamily& fam, BigdenomOp op, const ProbeConfig& cfg);

// Nonlinear right-hand side W fed with independent jet-slot values: the evaluator
// receives one u-series per slot (j, alpha) and returns the s-valued value series.
struct JetSlot {
    int j;       // unknown component index
    Expo alpha;  // derivative order, |alpha| <= m_j
};
using WEvaluator = std::function<BigradedSeries(const std::vector<BigradedSeries>&)>;

struct RegularitySlotResult {
    JetSlot slot;
    int required_order = 0;
    int actual_order = 0;  // vanishing order in u at 0; -1 encodes identically zero
    bool pass = false;
};
struct RegularityReport {
    std::vector<RegularitySlotResult> slots;
    bool regular = false;
    std::optional<bool> strict_increase;  // Corollary q=0 check on two sampled jets
};

// Probes the regularity orders p_{j,|alpha|} = max(0, |alpha|+q+1-m_j) of dW/du_{j,alpha}
// along the sampled jet, by exact interpolation of the slot-direction derivative;
// slot_directions lists a spanning set of value-space directions per slot.
RegularityReport regularity_probe(int n, int d, int cap, const WEvaluator& W, const std::vector<JetSlot>& slots,
                                  const ProbeConfig& cfg, const std::vector<BigradedSeries>& jet,
                                  const std::vector<std::vector<BigradedSeries>>& slot_directions,
                                  const std::vector<BigradedSeries>* second_jet);

// The concrete diagonal-row nonlinear side of the conjugacy system for a spec, as a
// W-evaluator over the jet slots of (f_1, Re g_0); used by the CLI regularity probe.
struct ConcreteWSystem {
    std::vector<JetSlot> slots;
    std::vector<int> m;  // orders per unknown component
    WEvaluator W;
    int n = 0, d = 0, cap = 0;
    std::vector<BigradedSeries> sample_jet(unsigned seed) const;
    std::vector<std::vector<BigradedSeries>> slot_directions() const;
};
ConcreteWSystem build_diagonal_row_system(const ManifoldSpec& spec);

}  // namespace cmnf
