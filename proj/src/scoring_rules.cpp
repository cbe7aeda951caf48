#include "censcore/scoring_rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "censcore/errors.hpp"

namespace censcore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sum over all ordered pairs of |v_i - v_j| for sorted v.
double abs_diff_all_pairs(const std::vector<double>& sorted) {
    double total = 0.0;
    double prefix = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        total += static_cast<double>(i) * sorted[i] - prefix;
        prefix += sorted[i];
    }
    return 2.0 * total;
}

double mean_abs_dev(const std::vector<double>& v, double t) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x - t);
    return s / static_cast<double>(v.size());
}

// Integrate fn over [lo, hi], additionally splitting at the given interior
// breakpoints so each adaptive pass sees a smooth integrand.
template <class F>
double integrate_split(F&& fn, double lo, double hi, std::vector<double> breaks,
                       const QuadratureControl& q) {
    if (!(hi > lo)) return 0.0;
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    double prev = lo;
    for (double b : breaks) {
        if (b <= prev || b > hi) continue;
        total += adaptive_simpson(fn, prev, b, q);
        prev = b;
    }
    return total;
}

std::vector<double> interior_breaks(const PredictiveDistribution& f) {
    std::vector<double> b;
    const PredictiveDistribution* p = &f;
    while (p->is_censored()) {
        b.push_back(*p->censor_horizon());
        p = &p->censored_inner();
    }
    return b;
}

// A forecast already censored at or beyond the horizon scores identically to
// its inner distribution on [0, tau); dropping the wrapper makes the
// forecast-censoring invariance of the threshold-weighted scores exact.
const PredictiveDistribution& unwrap_outside_horizon(const PredictiveDistribution& f,
                                                     double tau) {
    const PredictiveDistribution* p = &f;
    while (p->is_censored() && *p->censor_horizon() >= tau) {
        p = &p->censored_inner();
    }
    return *p;
}

// Brier integral of (1{s >= t} - F(s))^2 over [0, hi], where beyond `cut`
// the CDF is treated as 1.
double brier_integral(const PredictiveDistribution& f, double t, double hi,
                      const QuadratureControl& q) {
    const double cut = std::min(f.upper_cut(), hi);
    auto below = [&](double s) { const double c = f.cdf(s); return c * c; };
    auto above = [&](double s) { const double c = 1.0 - f.cdf(s); return c * c; };
    const auto breaks = interior_breaks(f);
    double total = 0.0;
    // s < t: integrand F^2; beyond the cut it is ~1.
    const double t_hi = std::min(t, hi);
    if (t_hi > 0.0) {
        total += integrate_split(below, 0.0, std::min(t_hi, cut), breaks, q);
        if (t_hi > cut) total += t_hi - cut;
    }
    // s >= t: integrand (1 - F)^2; negligible beyond the cut.
    if (hi > t) {
        total += integrate_split(above, std::max(t, 0.0), std::max(cut, std::max(t, 0.0)),
                                 breaks, q);
    }
    return total;
}

double twcrps_gamma_unshifted(double shape, double rate, double t, double tau,
                              const SeriesControl& ctl) {
    const double w = std::min(t, tau);
    const double f_tau = reg_lower_gamma(shape, rate * tau);
    const double f_w = w > 0.0 ? reg_lower_gamma(shape, rate * w) : 0.0;
    const double f1_tau = reg_lower_gamma(shape + 1.0, rate * tau);
    const double f1_w = w > 0.0 ? reg_lower_gamma(shape + 1.0, rate * w) : 0.0;
    const double hyp = lower_incomplete_2f1(2.0 * shape + 1.0, rate * tau, shape,
                                            shape + 1.0, -1.0, ctl);
    const double pref =
        2.0 * shape / rate * std::exp(ln_gamma(2.0 * shape + 1.0) - 2.0 * ln_gamma(shape + 1.0));
    return tau * (1.0 - f_tau) * (1.0 - f_tau) + w * (2.0 * f_w - 1.0) +
           2.0 * shape / rate * (f1_tau - f1_w) - pref * hyp;
}

}  // namespace

WeightFunction WeightFunction::indicator_closed(double tau) {
    if (!(tau > 0.0)) throw std::domain_error("WeightFunction: tau must be positive");
    return WeightFunction(Kind::indicator_closed, tau, nullptr);
}

WeightFunction WeightFunction::indicator_halfopen(double tau) {
    if (!(tau > 0.0)) throw std::domain_error("WeightFunction: tau must be positive");
    return WeightFunction(Kind::indicator_halfopen, tau, nullptr);
}

WeightFunction WeightFunction::custom(std::function<double(double)> w, double support_bound) {
    if (!(support_bound > 0.0)) {
        throw std::domain_error("WeightFunction: support bound must be positive");
    }
    if (!w) throw std::invalid_argument("WeightFunction: callable required");
    return WeightFunction(Kind::custom, support_bound, std::move(w));
}

double WeightFunction::operator()(double s) const {
    if (s < 0.0) return 0.0;
    switch (kind_) {
        case Kind::indicator_closed:
            return s <= bound_ ? 1.0 : 0.0;
        case Kind::indicator_halfopen:
            return s < bound_ ? 1.0 : 0.0;
        case Kind::custom:
            return s <= bound_ ? fn_(s) : 0.0;
    }
    return 0.0;
}

double WeightFunction::chaining(double x, const QuadratureControl& q) const {
    if (x <= 0.0) return 0.0;
    if (is_indicator()) return std::min(x, bound_);
    return adaptive_simpson(fn_, 0.0, std::min(x, bound_), q);
}

BinaryScore BinaryScore::negative_binary_entropy() {
    BinaryScore b;
    b.phi = [](double p) {
        if (p <= 0.0 || p >= 1.0) return 0.0;
        return p * std::log(p) + (1.0 - p) * std::log1p(-p);
    };
    b.phi_prime = [](double p) {
        if (p <= 0.0) return -kInf;
        if (p >= 1.0) return kInf;
        return std::log(p) - std::log1p(-p);
    };
    return b;
}

double crps(const PredictiveDistribution& f, double t, const QuadratureControl& q) {
    if (t < 0.0) throw std::domain_error("crps: realization must be nonnegative");
    if (auto members = f.discrete_members()) {
        return mean_abs_dev(*members, t) -
               abs_diff_all_pairs(*members) /
                   (2.0 * static_cast<double>(members->size()) *
                    static_cast<double>(members->size()));
    }
    const double hi = std::max(f.upper_cut(), t);
    return brier_integral(f, t, hi, q);
}

double crps_gamma(const GammaDist& d, double t) {
    if (t < 0.0) throw std::domain_error("crps_gamma: realization must be nonnegative");
    const double u = t - d.shift;
    const double t0 = std::max(u, 0.0);
    const double f = t0 > 0.0 ? reg_lower_gamma(d.shape, d.rate * t0) : 0.0;
    const double f1 = t0 > 0.0 ? reg_lower_gamma(d.shape + 1.0, d.rate * t0) : 0.0;
    const double pi = 3.14159265358979323846;
    const double core = t0 * (2.0 * f - 1.0) - d.shape / d.rate * (2.0 * f1 - 1.0) -
                        d.shape / (d.rate * pi) * beta_fn(d.shape + 0.5, 0.5);
    return (u < 0.0 ? -u : 0.0) + core;
}

double twcrps(const PredictiveDistribution& f0, double t, const WeightFunction& w,
              const QuadratureControl& q) {
    if (t < 0.0) throw std::domain_error("twcrps: realization must be nonnegative");
    const PredictiveDistribution& f = unwrap_outside_horizon(f0, w.support_bound());
    if (w.is_indicator()) {
        const double tau = w.support_bound();
        if (auto members = f.discrete_members()) {
            auto cens = *members;
            for (auto& v : cens) v = std::min(v, tau);
            const double tc = std::min(t, tau);
            return mean_abs_dev(cens, tc) -
                   abs_diff_all_pairs(cens) /
                       (2.0 * static_cast<double>(cens.size()) *
                        static_cast<double>(cens.size()));
        }
        return brier_integral(f, t, tau, q);
    }
    // Custom weight: quadrature of the weighted Brier integrand, one smooth
    // branch per side of the realization so no segment samples the indicator
    // from the wrong side.
    const double hi = std::min(w.support_bound(), std::max(f.upper_cut(), t));
    auto below = [&](double s) { const double c = f.cdf(s); return c * c * w(s); };
    auto above = [&](double s) { const double c = 1.0 - f.cdf(s); return c * c * w(s); };
    auto breaks = interior_breaks(f);
    if (auto members = f.discrete_members()) {
        breaks.insert(breaks.end(), members->begin(), members->end());
    }
    const double mid = std::min(std::max(t, 0.0), hi);
    return integrate_split(below, 0.0, mid, breaks, q) +
           integrate_split(above, mid, hi, std::move(breaks), q);
}

double twcrps_via_chaining(const PredictiveDistribution& f, double t, const WeightFunction& w,
                           const QuadratureControl& q) {
    const auto members = f.discrete_members();
    if (!members) {
        throw std::invalid_argument("twcrps_via_chaining: discrete forecast required");
    }
    std::vector<double> v(members->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w.chaining((*members)[i], q);
    std::sort(v.begin(), v.end());
    return mean_abs_dev(v, w.chaining(t, q)) -
           abs_diff_all_pairs(v) /
               (2.0 * static_cast<double>(v.size()) * static_cast<double>(v.size()));
}

double twcrps_gamma(const GammaDist& d, double t, double tau, const SeriesControl& ctl) {
    if (t < 0.0) throw std::domain_error("twcrps_gamma: realization must be nonnegative");
    if (!(tau > 0.0)) throw std::domain_error("twcrps_gamma: tau must be positive");
    // Below the shift the CDF is identically zero, so that stretch of the
    // integral contributes 1{s >= t} exactly; the rest is the unshifted
    // closed form in translated coordinates.
    const double c = std::min(d.shift, tau);
    const double head = c - std::min(t, c);
    if (tau <= d.shift) return head;
    return head +
           twcrps_gamma_unshifted(d.shape, d.rate, std::max(t - d.shift, 0.0), tau - d.shift,
                                  ctl);
}

double twcrps_ensemble(const std::vector<double>& members, double t, double tau,
                       EnsembleFairness fairness) {
    if (members.empty()) {
        throw std::invalid_argument("twcrps_ensemble: at least one member required");
    }
    if (!(tau > 0.0)) throw std::domain_error("twcrps_ensemble: tau must be positive");
    const std::size_t m = members.size();
    if (fairness == EnsembleFairness::fair && m < 2) {
        throw std::invalid_argument("twcrps_ensemble: fair variant requires m >= 2");
    }
    std::vector<double> cens(members);
    for (auto& v : cens) v = std::min(v, tau);
    std::sort(cens.begin(), cens.end());
    const double tc = std::min(t, tau);
    const double cm =
        fairness == EnsembleFairness::fair ? static_cast<double>(m - 1) : static_cast<double>(m);
    return mean_abs_dev(cens, tc) -
           abs_diff_all_pairs(cens) / (2.0 * static_cast<double>(m) * cm);
}

double log_score(const PredictiveDistribution& f, double t) {
    if (!f.has_density()) {
        throw std::invalid_argument("log_score: forecast must have a density");
    }
    const double p = *f.pdf(t);
    if (p <= 0.0) return kInf;
    return -std::log(p);
}

double lin_score(const PredictiveDistribution& f, double t) {
    if (!f.has_density()) {
        throw std::invalid_argument("lin_score: forecast must have a density");
    }
    return -*f.pdf(t);
}

double surv_crps(const PredictiveDistribution& f0, double t, double tau,
                 const QuadratureControl& q) {
    if (!(tau > 0.0)) throw std::domain_error("surv_crps: tau must be positive");
    if (t < tau) return crps(f0, t, q);
    // the survivor branch only reads the CDF on [0, tau)
    const PredictiveDistribution& f = unwrap_outside_horizon(f0, tau);
    if (auto members = f.discrete_members()) {
        // Exact integral of the squared step CDF over [0, tau].
        const auto& v = *members;  // sorted
        const std::size_t m = v.size();
        double total = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i <= m; ++i) {
            const double next = i < m ? std::min(v[i], tau) : tau;
            const double level = static_cast<double>(i) / static_cast<double>(m);
            if (next > prev) total += (next - prev) * level * level;
            prev = next;
            if (prev >= tau) break;
        }
        return total;
    }
    const double cut = std::min(f.upper_cut(), tau);
    auto fn = [&](double s) { const double c = f.cdf(s); return c * c; };
    double total = integrate_split(fn, 0.0, cut, interior_breaks(f), q);
    if (tau > cut) total += tau - cut;
    return total;
}

double binary_score_from_phi(const BinaryScore& b, double p, int outcome) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::domain_error("binary_score_from_phi: p must lie in [0, 1]");
    }
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("binary_score_from_phi: outcome must be 0 or 1");
    }
    if (outcome == 1) {
        if (p >= 1.0) return 0.0;
        return b.phi(1.0) - b.phi(p) - (1.0 - p) * b.phi_prime(p);
    }
    if (p <= 0.0) return 0.0;
    return b.phi(0.0) - b.phi(p) + p * b.phi_prime(p);
}

double twlog_score(const PredictiveDistribution& f, double t, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("twlog_score: tau must be positive");
    if (t < 0.0) throw std::domain_error("twlog_score: realization must be nonnegative");
    if (t < tau) {
        const auto p = f.pdf(t);
        if (!p) {
            throw std::invalid_argument("twlog_score: forecast must have a density below tau");
        }
        return *p > 0.0 ? -std::log(*p) : kInf;
    }
    const double surv = 1.0 - f.cdf_left(tau);
    return surv > 0.0 ? -std::log(surv) : kInf;
}

double twlog_score_with_binary(const PredictiveDistribution& f, double t, double tau,
                               const BinaryScore& sb) {
    if (!(tau > 0.0)) throw std::domain_error("twlog_score_with_binary: tau must be positive");
    if (t < 0.0) {
        throw std::domain_error("twlog_score_with_binary: realization must be nonnegative");
    }
    const double mass = f.cdf_left(tau);  // integral of the density against w
    if (t >= tau) return binary_score_from_phi(sb, mass, 0);
    const auto p = f.pdf(t);
    if (!p) {
        throw std::invalid_argument(
            "twlog_score_with_binary: forecast must have a density below tau");
    }
    if (mass <= 0.0 || *p <= 0.0) return kInf;
    return -std::log(*p / mass) + binary_score_from_phi(sb, mass, 1);
}

ScoringRule make_provisional(ScoringRule rule, CensorHorizon h) {
    return [rule = std::move(rule), h](const PredictiveDistribution& f, double t) {
        return rule(censor_distribution(h, f), t);
    };
}

}  // namespace censcore
