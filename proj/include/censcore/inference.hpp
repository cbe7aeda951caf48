#pragma once

// Diebold-Mariano test on score differentials with an autocorrelation-robust
// (Hering-Genton style) variance estimate; asymptotically standard normal
// under the null of equal predictive accuracy.

#include <optional>
#include <string>
#include <vector>

namespace censcore {

struct ScoreSeries {
    std::string label;
    std::vector<double> scores;

    double mean() const;
};

enum class TestSided { one, two };

struct DmTestResult {
    double statistic;
    double p_value;
    int lag_used;
    bool lag_fallback;  // negative long-run variance forced L = 0
};

// Standard normal CDF.
double normal_cdf(double z);

// lag: rectangular truncation point L; nullopt selects L = ceil(n^(1/3)).
// One-sided p-values test superiority of the better-performing series, i.e.
// p = 1 - Phi(|statistic|); two-sided doubles that. Conventions for
// degenerate inputs: identical series give p = 1; a nonzero mean with zero
// variance gives an infinite statistic and p = 0 (one-sided).
DmTestResult dm_test(const ScoreSeries& a, const ScoreSeries& b,
                     std::optional<int> lag = std::nullopt, TestSided sided = TestSided::two);

}  // namespace censcore
