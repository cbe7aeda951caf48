#pragma once

// Adaptive Simpson quadrature shared by the integral-form scoring rules.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "censcore/errors.hpp"

namespace censcore {

struct QuadratureControl {
    double abs_tol = 1e-8;
    std::size_t max_subdivisions = 2000;
};

namespace detail {

// force_depth > 0 keeps splitting regardless of the error estimate; an
// accidentally small Simpson difference at a coarse level would otherwise
// end the recursion while the true error is still large.
template <class F>
double simpson_recurse(F& f, double lo, double hi, double flo, double fmid, double fhi,
                       double whole, double tol, int force_depth, std::size_t& budget) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flm = f(lmid);
    const double frm = f(rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if ((force_depth <= 0 && std::fabs(delta) <= 15.0 * tol) ||
        (hi - lo) < 1e-14 * (std::fabs(hi) + 1.0)) {
        return left + right + delta / 15.0;
    }
    if (budget == 0) {
        throw convergence_error("adaptive_simpson: subdivision budget exhausted");
    }
    --budget;
    return simpson_recurse(f, lo, mid, flo, flm, fmid, left, 0.5 * tol, force_depth - 1,
                           budget) +
           simpson_recurse(f, mid, hi, fmid, frm, fhi, right, 0.5 * tol, force_depth - 1,
                           budget);
}

}  // namespace detail

// Integrates f over [lo, hi] to absolute tolerance q.abs_tol. Throws
// convergence_error if q.max_subdivisions interval splits are not enough.
template <class F>
double adaptive_simpson(F&& f, double lo, double hi, const QuadratureControl& q = {}) {
    if (!(q.abs_tol > 0.0)) {
        throw std::invalid_argument("adaptive_simpson: abs_tol must be positive");
    }
    if (!(hi > lo)) return 0.0;
    std::size_t budget = q.max_subdivisions;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fmid = f(mid);
    const double fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return detail::simpson_recurse(f, lo, hi, flo, fmid, fhi, whole, q.abs_tol, 4, budget);
}

}  // namespace censcore
