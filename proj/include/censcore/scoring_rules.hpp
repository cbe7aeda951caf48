#pragma once

// Scoring rules for full predictive distributions: the CRPS family
// (integral, kernel, gamma closed forms, ensemble estimator), logarithmic
// and linear scores, survival-CRPS, and the constructors that turn strictly
// proper rules into provisionally strictly proper ones.

#include <functional>
#include <vector>

#include "censcore/censoring.hpp"
#include "censcore/distributions.hpp"
#include "censcore/quadrature.hpp"
#include "censcore/special_math.hpp"

namespace censcore {

// Weight function w : [0, inf) -> [0, inf), zero beyond a declared bound.
// For provisional use it must be strictly positive on its support.
class WeightFunction {
public:
    static WeightFunction indicator_closed(double tau);    // 1{0 <= s <= tau}
    static WeightFunction indicator_halfopen(double tau);   // 1{0 <= s < tau}
    static WeightFunction custom(std::function<double(double)> w, double support_bound);

    double operator()(double s) const;
    double support_bound() const { return bound_; }
    bool is_indicator() const { return kind_ != Kind::custom; }
    // Chaining function v(x) = int over [0, x) of w; exact for indicators.
    double chaining(double x, const QuadratureControl& q = {}) const;

private:
    enum class Kind { indicator_closed, indicator_halfopen, custom };
    WeightFunction(Kind k, double bound, std::function<double(double)> fn)
        : kind_(k), bound_(bound), fn_(std::move(fn)) {}
    Kind kind_;
    double bound_;
    std::function<double(double)> fn_;
};

// Strictly convex phi on [0, 1] with subgradient; induces a strictly proper
// binary scoring rule through the Savage representation.
struct BinaryScore {
    std::function<double(double)> phi;
    std::function<double(double)> phi_prime;

    // phi(p) = p ln p + (1 - p) ln(1 - p) inside (0, 1), 0 at the endpoints.
    static BinaryScore negative_binary_entropy();
};

double crps(const PredictiveDistribution& f, double t, const QuadratureControl& q = {});

// Closed form for an unshifted gamma; shifts are handled by translation.
double crps_gamma(const GammaDist& d, double t);

double twcrps(const PredictiveDistribution& f, double t, const WeightFunction& w,
              const QuadratureControl& q = {});

// Kernel form E|v(X) - v(t)| - E|v(X) - v(X')| / 2 for discrete forecasts,
// with v the chaining function of w.
double twcrps_via_chaining(const PredictiveDistribution& f, double t, const WeightFunction& w,
                           const QuadratureControl& q = {});

// Closed form of the threshold-weighted CRPS for a (shifted) gamma
// distribution, via the lower incomplete Gauss hypergeometric series.
double twcrps_gamma(const GammaDist& d, double t, double tau, const SeriesControl& ctl = {});

enum class EnsembleFairness { fair, empirical };

// Double-sum estimator (1/m) sum |[x_i] - [t]| - (1/(2 m c_m)) sum sum
// |[x_i] - [x_j]| with c_m = m - 1 (fair) or m (empirical; exact for the
// ensemble's empirical CDF).
double twcrps_ensemble(const std::vector<double>& members, double t, double tau,
                       EnsembleFairness fairness);

// -ln F'(t); +infinity where the density vanishes. Requires a density.
double log_score(const PredictiveDistribution& f, double t);

// -F'(t). Not proper; provided as a comparison baseline.
double lin_score(const PredictiveDistribution& f, double t);

// CRPS(F, t) if t < tau, else the integral of F^2 over [0, tau]. Not
// provisionally proper; provided as a comparison baseline.
double surv_crps(const PredictiveDistribution& f, double t, double tau,
                 const QuadratureControl& q = {});

// Savage representation: S(p, 0) = phi(0) - phi(p) + p phi'(p),
// S(p, 1) = phi(1) - phi(p) - (1 - p) phi'(p).
double binary_score_from_phi(const BinaryScore& b, double p, int outcome);

// -1{0 <= t < tau} ln F'(t) - 1{t >= tau} ln(1 - F(tau-)). Infinite scores
// are returned as values, not raised, so dataset means can propagate them.
double twlog_score(const PredictiveDistribution& f, double t, double tau);

// The density-score constructor instantiated with LogS and a pluggable
// binary score; reduces to twlog_score for the negative binary entropy.
double twlog_score_with_binary(const PredictiveDistribution& f, double t, double tau,
                               const BinaryScore& sb);

using ScoringRule = std::function<double(const PredictiveDistribution&, double)>;

// S_tau(F, t) = S([F]_tau, t): scoring any strictly proper rule on the
// right-censored forecast yields a provisionally strictly proper rule.
ScoringRule make_provisional(ScoringRule rule, CensorHorizon h);

}  // namespace censcore
