#pragma once

// Curve-producing diagnostics: Brier-decomposition curves of the CRPS,
// quantile Murphy diagrams, and quantile reliability curves from min-max
// isotonic regression, with recalibration of single-valued forecasts into
// intervals.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "censcore/distributions.hpp"
#include "censcore/point_scoring.hpp"

namespace censcore {

enum class CurveKind { brier_decomposition, murphy, reliability };

struct CurvePoint {
    double x;
    double y;
};

struct Curve {
    CurveKind kind;
    std::string label;
    std::vector<CurvePoint> points;  // strictly increasing abscissas
};

const char* curve_kind_name(CurveKind k);

// CSV with header abscissa,value,label; floats at 17 significant digits so
// a round trip is bit exact.
void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves);
std::vector<Curve> read_curves_csv(std::istream& is);

// Minimal SVG polyline rendering of one or more curves.
void write_curves_svg(std::ostream& os, const std::vector<Curve>& curves, int width = 640,
                      int height = 400);

// Trapezoidal area under the curve restricted to [lo, hi]; curve values are
// interpolated linearly at the interval ends when needed.
double curve_area(const Curve& c, double lo, double hi);

struct QuantilePairs {
    std::vector<std::pair<double, double>> pairs;  // (forecast x, realization t)
    double alpha = 0.5;
};

// Sorted unique data values plus `fill` evenly spaced points on [0, hi],
// plus midpoints of consecutive grid values so piecewise-constant curves
// integrate exactly.
std::vector<double> default_threshold_grid(const std::vector<double>& data, double hi,
                                           std::size_t fill = 200);

// Mean Brier score (1{s >= t} - F(s))^2 across cases, per grid threshold.
Curve brier_curve(const std::vector<std::pair<PredictiveDistribution, double>>& cases,
                  const std::vector<double>& grid, std::string label = {});

// Mean elementary score across pairs, per decision threshold.
Curve murphy_curve(const QuantilePairs& pairs, const std::vector<double>& grid,
                   std::string label = {});

// Nondecreasing step function x -> recalibrated value from the min-max
// isotonic quantile fit; pairs with equal x are pooled into one block.
struct ReliabilityCurve {
    std::vector<double> knots;   // distinct forecast values, increasing
    std::vector<double> fitted;  // nondecreasing
    double alpha = 0.5;

    // Value at the greatest knot <= x; leftmost value below the first knot.
    double eval(double x) const;
    Curve as_curve(std::string label = {}) const;
};

// Min-max solution: fitted_i = min over blocks j >= i of max over blocks
// k <= i of the lower empirical alpha-quantile of t_k..t_j.
ReliabilityCurve isotonic_quantile_fit(const QuantilePairs& pairs);

// Converts a single-valued forecast to an interval via two reliability
// curves fitted at levels alpha/2 and 1 - alpha/2 on the same pairs.
IntervalForecast recalibrate(const ReliabilityCurve& lower, const ReliabilityCurve& upper,
                             double x);

// Pool-adjacent-violators fit under squared loss; generic preprocessing
// utility (for example conditional-bias correction of an upstream signal).
ReliabilityCurve isotonic_mean_fit(const std::vector<std::pair<double, double>>& pairs);

}  // namespace censcore
