#pragma once

// Special functions backing gamma-distribution scoring: log-gamma, the
// regularized lower incomplete gamma function, the beta function, and the
// lower incomplete Gauss hypergeometric series used by the closed-form
// threshold-weighted CRPS of a gamma distribution.

#include <cstddef>

namespace censcore {

struct SeriesControl {
    double rel_tol = 1e-12;
    std::size_t max_terms = 10000;
};

// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double ln_gamma(double x);

// gamma(s, x) / Gamma(s) in [0, 1]; series for x < s + 1, continued fraction
// of the upper function otherwise. Throws std::domain_error for s <= 0 or
// x < 0.
double reg_lower_gamma(double s, double x);

// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for a, b > 0.
double beta_fn(double a, double b);

// Lower incomplete Gauss hypergeometric series
//   sum_n (a, tau)_n (b)_n / (c)_n * z^n / n!
// with incomplete Pochhammer (a, tau)_n = gamma(a + n, tau) / Gamma(a).
// The incomplete-gamma values are generated by the stable downward form of
// the recursion gamma(l + 1, tau) = l gamma(l, tau) - tau^l e^-tau, seeded by
// a single reg_lower_gamma call at the truncation index; summation is
// carried in extended precision because the z = -1 series cancels heavily.
// Throws convergence_error if ctl.max_terms is insufficient.
double lower_incomplete_2f1(double a, double tau_arg, double b, double c, double z,
                            const SeriesControl& ctl = {});

}  // namespace censcore
