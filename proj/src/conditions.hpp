#pragma once

#include <string>
#include <vector>

#include "quadric.hpp"
#include "series.hpp"

namespace cmnf {

// One normal-form condition with its exact residual; pass iff the residual is
// identically zero through the series cap.
struct ConditionEntry {
    std::string name;
    BigradedSeries residual;
    bool pass = false;
    std::size_t residual_terms = 0;
};

struct ConditionReport {
    std::vector<ConditionEntry> entries;
    std::string checked_range;
    bool pass = true;

    void add(const std::string& name, const BigradedSeries& residual);
};

// Phi(z,0,u) = Phi(0,zbar,u) = 0.
ConditionReport check_N0(const HermitianFamily& fam, const BigradedSeries& phi);
// K* Phi_{p,1} = Kbar* Phi_{1,p} = 0 for 1 < p <= min(k_max, cap).
ConditionReport check_N1(const HermitianFamily& fam, const BigradedSeries& phi, int k_max);
// -6 D* Phi_{1,1} + D*^3 Phi_{3,3} = 0 and K*(Phi_{1,1} - i D* Phi_{2,2} - D*^2 Phi_{3,3}) = 0.
ConditionReport check_Nd(const HermitianFamily& fam, const BigradedSeries& phi);
// K* D*^2 (Phi_{2,3} + i Delta Phi_{1,2}) = Kbar* D*^2 (Phi_{3,2} - i Delta Phi_{2,1}) = 0.
ConditionReport check_Noff(const HermitianFamily& fam, const BigradedSeries& phi);
// d = 1 Chern-Moser space.
ConditionReport check_CM(const HermitianFamily& fam, const BigradedSeries& phi);

ConditionReport merge_reports(const std::vector<ConditionReport>& reports);

}  // namespace cmnf
