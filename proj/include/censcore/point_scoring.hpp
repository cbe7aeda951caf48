#pragma once

// Scoring functions for quantile, single-valued, and interval forecasts,
// including their threshold-weighted variants and elementary scores.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace censcore {

struct QuantileForecast {
    double level;  // alpha in (0, 1)
    double value;
};

struct IntervalForecast {
    double lower;
    double upper;
    double central_coverage;  // 1 - alpha

    IntervalForecast(double lower_, double upper_, double central_coverage_ = 0.5)
        : lower(lower_), upper(upper_), central_coverage(central_coverage_) {
        if (lower > upper) {
            throw std::invalid_argument("IntervalForecast: lower must not exceed upper");
        }
    }
};

namespace detail {
inline void check_level(double alpha, const char* who) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1)");
    }
}
}  // namespace detail

// Pinball loss: alpha (t - x) if x < t, (1 - alpha)(x - t) otherwise.
inline double quantile_loss(double alpha, double x, double t) {
    detail::check_level(alpha, "quantile_loss");
    return x < t ? alpha * (t - x) : (1.0 - alpha) * (x - t);
}

// (1{x >= t} - alpha)(g(x) - g(t)) for strictly increasing g.
inline double g_quantile_score(double alpha, const std::function<double(double)>& g, double x,
                               double t) {
    detail::check_level(alpha, "g_quantile_score");
    return ((x >= t ? 1.0 : 0.0) - alpha) * (g(x) - g(t));
}

// Threshold-weighted quantile loss; depends only on the censored arguments.
inline double tw_quantile_loss(double alpha, double tau, double x, double t) {
    detail::check_level(alpha, "tw_quantile_loss");
    if (!(tau > 0.0)) throw std::domain_error("tw_quantile_loss: tau must be positive");
    const double xc = std::min(x, tau);
    const double tc = std::min(t, tau);
    return ((xc >= tc ? 1.0 : 0.0) - alpha) * (xc - tc);
}

// Width + overprediction + underprediction decomposition of the interval
// score, identical to QL_{alpha/2}(x1, t) + QL_{1-alpha/2}(x2, t).
inline double interval_score(double alpha, const IntervalForecast& iv, double t) {
    detail::check_level(alpha, "interval_score");
    double s = 0.5 * alpha * (iv.upper - iv.lower);
    if (t < iv.lower) s += iv.lower - t;
    if (t > iv.upper) s += t - iv.upper;
    return s;
}

// (alpha/2)([x2] - [x1]) + distances from [t] to the censored interval.
inline double tw_interval_score(double alpha, double tau, const IntervalForecast& iv,
                                double t) {
    detail::check_level(alpha, "tw_interval_score");
    if (!(tau > 0.0)) throw std::domain_error("tw_interval_score: tau must be positive");
    const double x1 = std::min(iv.lower, tau);
    const double x2 = std::min(iv.upper, tau);
    const double tc = std::min(t, tau);
    double s = 0.5 * alpha * (x2 - x1);
    if (x1 > tc) s += x1 - tc;
    if (x2 < tc) s += tc - x2;
    return s;
}

// Elementary score for an alpha-quantile at decision threshold theta.
inline double elementary_score(double alpha, double theta, double x, double t) {
    detail::check_level(alpha, "elementary_score");
    if (t <= theta && theta < x) return 1.0 - alpha;
    if (x <= theta && theta < t) return alpha;
    return 0.0;
}

}  // namespace censcore
