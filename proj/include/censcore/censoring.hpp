#pragma once

// Right-censoring operators [.]_tau on scalars, vectors, and distributions.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "censcore/distributions.hpp"

namespace censcore {

struct CensorHorizon {
    double tau;

    explicit CensorHorizon(double tau_) : tau(tau_) {
        if (!(tau > 0.0)) {
            throw std::domain_error("CensorHorizon: tau must be positive");
        }
    }
};

// min(t, tau) plus a was-censored flag. The flag is for reporting only; all
// scoring operations ignore it by contract.
struct CensoredTime {
    double value;
    bool was_censored;
};

inline double censor_scalar(const CensorHorizon& h, double t) {
    return std::min(t, h.tau);
}

inline CensoredTime censor_time(const CensorHorizon& h, double t) {
    return CensoredTime{std::min(t, h.tau), t > h.tau};
}

inline std::vector<double> censor_vector(const CensorHorizon& h, const std::vector<double>& x) {
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) out.push_back(std::min(v, h.tau));
    return out;
}

inline PredictiveDistribution censor_distribution(const CensorHorizon& h,
                                                  PredictiveDistribution f) {
    return PredictiveDistribution::censored(std::move(f), h.tau);
}

}  // namespace censcore
