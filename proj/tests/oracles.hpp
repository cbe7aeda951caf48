#pragma once

// Test-side oracles, kept independent of the library code paths they check:
// a self-contained adaptive integrator, exact step-CDF Brier integrals, a
// convergent transformed series for 2F1 at z = -1, and a brute-force
// isotonic-regression optimum.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Adaptive Simpson with its own recursion and termination, used only by tests.
inline double integrate_impl(const std::function<double(double)>& f, double a, double b,
                             double fa, double fm, double fb, double whole, double tol,
                             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return integrate_impl(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           integrate_impl(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int depth = 48) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return integrate_impl(f, a, b, fa, fm, fb, whole, tol, depth);
}

// int over [0, hi] of (1{s >= t} - F(s))^2 for the right-continuous step CDF
// of the given members, evaluated exactly from the breakpoints.
inline double step_brier_integral(std::vector<double> members, double t, double hi) {
    std::sort(members.begin(), members.end());
    const double m = static_cast<double>(members.size());
    std::vector<double> breaks{0.0, hi};
    for (double v : members) {
        if (v > 0.0 && v < hi) breaks.push_back(v);
    }
    if (t > 0.0 && t < hi) breaks.push_back(t);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double up = breaks[i + 1];
        if (!(up > lo)) continue;
        const double mid = 0.5 * (lo + up);
        const double cdf =
            static_cast<double>(std::upper_bound(members.begin(), members.end(), mid) -
                                members.begin()) /
            m;
        const double d = (mid >= t ? 1.0 : 0.0) - cdf;
        total += d * d * (up - lo);
    }
    return total;
}

// 2F1(a, b; c; -1) through the Pfaff transformation
// (1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1)), whose series converges at 1/2.
inline double pfaff_2f1_minus1(double a, double b, double c) {
    double coeff = 1.0;
    double sum = 0.0;
    for (int n = 0; n < 500; ++n) {
        sum += coeff;
        coeff *= (a + n) * (c - b + n) / ((c + n) * (n + 1.0)) * 0.5;
        if (std::fabs(coeff) < 1e-18 * std::fabs(sum)) break;
    }
    return sum * std::pow(2.0, -a);
}

inline double pinball(double alpha, double fitted, double target) {
    return fitted < target ? alpha * (target - fitted) : (1.0 - alpha) * (fitted - target);
}

// Minimum total pinball loss over all nondecreasing fitted vectors whose
// values are drawn from the candidate grid; plain recursion over the grid.
inline double brute_isotonic_best_loss(const std::vector<double>& targets, double alpha,
                                       const std::vector<double>& grid) {
    const std::size_t n = targets.size();
    std::vector<double> best(1, 1e300);
    std::function<void(std::size_t, std::size_t, double)> rec = [&](std::size_t i,
                                                                    std::size_t min_g,
                                                                    double acc) {
        if (i == n) {
            best[0] = std::min(best[0], acc);
            return;
        }
        for (std::size_t g = min_g; g < grid.size(); ++g) {
            rec(i + 1, g, acc + pinball(alpha, grid[g], targets[i]));
        }
    };
    rec(0, 0, 0.0);
    return best[0];
}

}  // namespace oracle
