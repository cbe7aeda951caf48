#include "censcore/inference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace censcore {

double ScoreSeries::mean() const {
    if (scores.empty()) throw std::invalid_argument("ScoreSeries: empty series");
    double s = 0.0;
    for (double v : scores) s += v;
    return s / static_cast<double>(scores.size());
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

DmTestResult dm_test(const ScoreSeries& a, const ScoreSeries& b, std::optional<int> lag,
                     TestSided sided) {
    const std::size_t n = a.scores.size();
    if (n != b.scores.size()) {
        throw std::invalid_argument("dm_test: series lengths differ");
    }
    if (n < 10) throw std::invalid_argument("dm_test: need at least 10 cases");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(a.scores[i]) || !std::isfinite(b.scores[i])) {
            throw std::invalid_argument("dm_test: non-finite score");
        }
    }

    std::vector<double> d(n);
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a.scores[i] - b.scores[i];
        if (d[i] != 0.0) all_zero = false;
    }
    if (all_zero) return DmTestResult{0.0, 1.0, 0, false};

    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(n);

    int L = lag ? *lag : static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
    if (L < 0) throw std::invalid_argument("dm_test: negative lag");
    if (L >= static_cast<int>(n)) L = static_cast<int>(n) - 1;

    auto autocov = [&](int k) {
        double s = 0.0;
        for (std::size_t i = static_cast<std::size_t>(k); i < n; ++i) {
            s += (d[i] - mean) * (d[i - static_cast<std::size_t>(k)] - mean);
        }
        return s / static_cast<double>(n);
    };

    const double g0 = autocov(0);
    double var = g0;
    for (int k = 1; k <= L; ++k) var += 2.0 * autocov(k);
    bool fallback = false;
    if (var <= 0.0 && L > 0) {
        // rectangular weights can produce a negative estimate
        var = g0;
        L = 0;
        fallback = true;
    }

    double stat;
    if (var <= 0.0) {
        stat = mean > 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    } else {
        stat = mean / std::sqrt(var / static_cast<double>(n));
    }

    double p;
    if (sided == TestSided::one) {
        p = 1.0 - normal_cdf(std::fabs(stat));
    } else {
        p = 2.0 * (1.0 - normal_cdf(std::fabs(stat)));
    }
    if (std::isinf(stat)) p = 0.0;
    return DmTestResult{stat, p, L, fallback};
}

}  // namespace censcore
