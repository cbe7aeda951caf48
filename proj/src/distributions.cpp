#include "censcore/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "censcore/errors.hpp"
#include "censcore/special_math.hpp"

namespace censcore {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GammaDist::GammaDist(double shape_, double rate_, double shift_)
    : shape(shape_), rate(rate_), shift(shift_) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::domain_error("GammaDist: shape and rate must be positive");
    }
    if (shift < 0.0) {
        throw std::domain_error("GammaDist: shift must be nonnegative");
    }
}

double GammaDist::cdf(double x) const {
    const double u = x - shift;
    if (u <= 0.0) return 0.0;
    return reg_lower_gamma(shape, rate * u);
}

double GammaDist::pdf(double x) const {
    const double u = x - shift;
    if (u < 0.0) return 0.0;
    if (u == 0.0) {
        if (shape > 1.0) return 0.0;
        if (shape == 1.0) return rate;
        return kInf;
    }
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(u) - rate * u -
                    ln_gamma(shape));
}

double GammaDist::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("GammaDist::quantile: p must lie in (0, 1)");
    }
    // Work on the unshifted distribution.
    double lo = 0.0;
    double hi = (shape + 10.0 * std::sqrt(shape) + 10.0) / rate;
    while (reg_lower_gamma(shape, rate * hi) < p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw convergence_error("GammaDist::quantile: bracket failed");
    }
    // Safeguarded Newton: every evaluation tightens the bracket, and the
    // loop runs to relative bracket collapse so tiny quantiles (shape < 1)
    // come out with full relative accuracy, not just the absolute tolerance.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
        const double F = reg_lower_gamma(shape, rate * x) - p;
        if (F > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double dens =
            x > 0.0 ? std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) -
                               rate * x - ln_gamma(shape))
                    : 0.0;
        double next = dens > 0.0 ? x - F / dens : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    return shift + x;
}

double GammaDist::sample(RandomEngine& rng) const {
    // Marsaglia-Tsang rejection for shape >= 1, with the standard boost
    // g = Gamma(shape + 1) * U^{1/shape} for shape < 1.
    double a = shape;
    double boost = 1.0;
    if (a < 1.0) {
        boost = std::pow(rng.uniform(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 ||
            std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return shift + boost * d * v / rate;
        }
    }
}

std::vector<double> GammaDist::sample(RandomEngine& rng, std::size_t n) const {
    std::vector<double> out(n);
    for (auto& v : out) v = sample(rng);
    return out;
}

EmpiricalDist::EmpiricalDist(std::vector<double> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("EmpiricalDist: at least one member required");
    }
    std::sort(members_.begin(), members_.end());
}

double EmpiricalDist::cdf(double s) const {
    const auto it = std::upper_bound(members_.begin(), members_.end(), s);
    return static_cast<double>(it - members_.begin()) / static_cast<double>(members_.size());
}

double EmpiricalDist::cdf_left(double s) const {
    const auto it = std::lower_bound(members_.begin(), members_.end(), s);
    return static_cast<double>(it - members_.begin()) / static_cast<double>(members_.size());
}

double EmpiricalDist::quantile_lower(double alpha) const {
    if (!(alpha > 0.0) || !(alpha <= 1.0)) {
        throw std::domain_error("EmpiricalDist::quantile_lower: alpha must lie in (0, 1]");
    }
    const auto m = members_.size();
    std::size_t idx = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(m)));
    if (idx < 1) idx = 1;
    if (idx > m) idx = m;
    return members_[idx - 1];
}

PredictiveDistribution PredictiveDistribution::censored(PredictiveDistribution inner,
                                                        double tau) {
    if (!(tau > 0.0)) {
        throw std::domain_error("PredictiveDistribution::censored: tau must be positive");
    }
    Censored c{tau, std::make_shared<const PredictiveDistribution>(std::move(inner))};
    return PredictiveDistribution(Variant(std::move(c)));
}

double PredictiveDistribution::cdf(double s) const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                return d.cdf(s);
            } else if constexpr (std::is_same_v<T, EmpiricalDist>) {
                return d.cdf(s);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return s >= d.location ? 1.0 : 0.0;
            } else {
                return s >= d.tau ? 1.0 : d.inner->cdf(s);
            }
        },
        v_);
}

double PredictiveDistribution::cdf_left(double s) const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                return d.cdf(s);
            } else if constexpr (std::is_same_v<T, EmpiricalDist>) {
                return d.cdf_left(s);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return s > d.location ? 1.0 : 0.0;
            } else {
                return s > d.tau ? 1.0 : d.inner->cdf_left(s);
            }
        },
        v_);
}

std::optional<double> PredictiveDistribution::pdf(double x) const {
    return std::visit(
        [&](const auto& d) -> std::optional<double> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                return d.pdf(x);
            } else if constexpr (std::is_same_v<T, Censored>) {
                if (x < d.tau) return d.inner->pdf(x);
                return std::nullopt;
            } else {
                (void)d;
                return std::nullopt;
            }
        },
        v_);
}

bool PredictiveDistribution::has_density() const {
    return std::holds_alternative<GammaDist>(v_);
}

double PredictiveDistribution::upper_cut() const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                const double span =
                    (d.shape + 40.0 * std::sqrt(d.shape) + 45.0) / d.rate;
                return d.shift + std::max(span, 2.0 * d.shape / d.rate);
            } else if constexpr (std::is_same_v<T, EmpiricalDist>) {
                return d.members().back();
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return d.location;
            } else {
                return std::min(d.tau, d.inner->upper_cut());
            }
        },
        v_);
}

std::optional<std::vector<double>> PredictiveDistribution::discrete_members() const {
    return std::visit(
        [&](const auto& d) -> std::optional<std::vector<double>> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, EmpiricalDist>) {
                return d.members();
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return std::vector<double>{d.location};
            } else if constexpr (std::is_same_v<T, Censored>) {
                auto inner = d.inner->discrete_members();
                if (!inner) return std::nullopt;
                for (auto& v : *inner) v = std::min(v, d.tau);
                return inner;
            } else {
                (void)d;
                return std::nullopt;
            }
        },
        v_);
}

bool PredictiveDistribution::is_censored() const {
    return std::holds_alternative<Censored>(v_);
}

std::optional<double> PredictiveDistribution::censor_horizon() const {
    if (const auto* c = std::get_if<Censored>(&v_)) return c->tau;
    return std::nullopt;
}

const PredictiveDistribution& PredictiveDistribution::censored_inner() const {
    const auto* c = std::get_if<Censored>(&v_);
    if (!c) throw std::invalid_argument("censored_inner: not a censored distribution");
    return *c->inner;
}

}  // namespace censcore
