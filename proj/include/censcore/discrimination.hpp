#pragma once

// Empirical concordance index and time-dependent AUC, included as
// comparison baselines; neither is a proper scoring method.

#include <limits>
#include <vector>

namespace censcore {

struct RiskCase {
    double risk;  // predicted P(T <= s)
    double time;  // realized event time
};

struct RiskDataset {
    std::vector<RiskCase> cases;
    double horizon_s = 0.0;  // the s of AUC_s
    double censor_tau = std::numeric_limits<double>::infinity();
};

// Pair-sum ratio with half credit for forecast ties, conditioned on
// t_i < t_j and t_i <= tau. Throws std::invalid_argument when no pair
// qualifies. O(n log n) for large n, direct double sum for small n.
double c_index(const RiskDataset& d);

// Same with the condition t_i <= s < t_j; invariant under strictly
// increasing transformations of the forecasts.
double auc_s(const RiskDataset& d);

}  // namespace censcore
