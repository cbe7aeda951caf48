#pragma once

// Predictive-distribution objects: (shifted) gamma distributions, empirical
// CDFs from ensembles, point masses, and a right-censored wrapper, all
// behind one CDF-evaluation interface used by every scoring rule.

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "censcore/random.hpp"

namespace censcore {

// Gamma(shape, rate) translated by `shift` >= 0; CDF(x) = 0 for x < shift.
struct GammaDist {
    double shape;
    double rate;
    double shift = 0.0;

    GammaDist(double shape_, double rate_, double shift_ = 0.0);

    double cdf(double x) const;
    double pdf(double x) const;
    // Inverse CDF to absolute tolerance 1e-10, bracketing plus safeguarded
    // Newton on the CDF. Throws std::domain_error for p outside (0, 1).
    double quantile(double p) const;
    double mean() const { return shift + shape / rate; }

    double sample(RandomEngine& rng) const;
    std::vector<double> sample(RandomEngine& rng, std::size_t n) const;
};

// Right-continuous empirical CDF: F(s) = #{members <= s} / m.
class EmpiricalDist {
public:
    explicit EmpiricalDist(std::vector<double> members);

    const std::vector<double>& members() const { return members_; }
    double cdf(double s) const;
    double cdf_left(double s) const;
    // Lower empirical alpha-quantile: the ceil(alpha*m)-th order statistic.
    double quantile_lower(double alpha) const;

private:
    std::vector<double> members_;
};

struct PointMass {
    double location;
};

class PredictiveDistribution {
public:
    PredictiveDistribution(GammaDist d) : v_(std::move(d)) {}
    PredictiveDistribution(EmpiricalDist d) : v_(std::move(d)) {}
    PredictiveDistribution(PointMass d) : v_(d) {}

    // The right-censored wrapper [F]_tau: cdf(s) = F(s) for s < tau, 1 beyond.
    static PredictiveDistribution censored(PredictiveDistribution inner, double tau);

    double cdf(double s) const;
    // Left limit lim_{u -> s-} cdf(u); scores on censored forecasts consume
    // the forecast only through values strictly below the horizon.
    double cdf_left(double s) const;

    // Lebesgue density at x, when one exists there: gamma everywhere, the
    // censored wrapper strictly below its horizon. nullopt otherwise.
    std::optional<double> pdf(double x) const;
    bool has_density() const;

    // Point beyond which 1 - cdf is negligible for quadrature purposes.
    double upper_cut() const;

    // Member values when the distribution is purely discrete (empirical or
    // point mass, possibly censored); censoring is applied to the values.
    std::optional<std::vector<double>> discrete_members() const;

    const GammaDist* as_gamma() const { return std::get_if<GammaDist>(&v_); }
    const EmpiricalDist* as_empirical() const { return std::get_if<EmpiricalDist>(&v_); }
    const PointMass* as_point_mass() const { return std::get_if<PointMass>(&v_); }
    bool is_censored() const;
    // Censoring horizon of the outermost wrapper, if any.
    std::optional<double> censor_horizon() const;
    // Distribution inside the outermost censoring wrapper; throws if none.
    const PredictiveDistribution& censored_inner() const;

private:
    struct Censored {
        double tau;
        std::shared_ptr<const PredictiveDistribution> inner;
    };
    using Variant = std::variant<GammaDist, EmpiricalDist, PointMass, Censored>;

    explicit PredictiveDistribution(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

}  // namespace censcore
