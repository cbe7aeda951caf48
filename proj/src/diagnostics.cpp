#include "censcore/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace censcore {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void check_grid(const std::vector<double>& grid, const char* who) {
    if (grid.empty()) throw std::invalid_argument(std::string(who) + ": empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument(std::string(who) + ": grid must be strictly increasing");
        }
    }
}

}  // namespace

const char* curve_kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::brier_decomposition:
            return "brier_decomposition";
        case CurveKind::murphy:
            return "murphy";
        case CurveKind::reliability:
            return "reliability";
    }
    return "unknown";
}

void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves) {
    os << "abscissa,value,label\n";
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            os << format_double(p.x) << ',' << format_double(p.y) << ',' << c.label << '\n';
        }
    }
}

std::vector<Curve> read_curves_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "abscissa,value,label") {
        throw std::invalid_argument("read_curves_csv: missing abscissa,value,label header");
    }
    std::vector<Curve> curves;
    std::map<std::string, std::size_t> index;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::invalid_argument("read_curves_csv: malformed row: " + line);
        }
        const double x = std::stod(line.substr(0, c1));
        const double y = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const std::string label = line.substr(c2 + 1);
        auto it = index.find(label);
        if (it == index.end()) {
            it = index.emplace(label, curves.size()).first;
            curves.push_back(Curve{CurveKind::murphy, label, {}});
        }
        curves[it->second].points.push_back({x, y});
    }
    return curves;
}

void write_curves_svg(std::ostream& os, const std::vector<Curve>& curves, int width,
                      int height) {
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    const double pad = 10.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    std::size_t ci = 0;
    for (const auto& c : curves) {
        os << "<polyline fill=\"none\" stroke=\"" << palette[ci % 6]
           << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : c.points) {
            const double px = pad + (p.x - xmin) / (xmax - xmin) * (width - 2 * pad);
            const double py =
                height - pad - (p.y - ymin) / (ymax - ymin) * (height - 2 * pad);
            os << px << ',' << py << ' ';
        }
        os << "\"><title>" << c.label << "</title></polyline>\n";
        ++ci;
    }
    os << "</svg>\n";
}

double curve_area(const Curve& c, double lo, double hi) {
    const auto& pts = c.points;
    if (pts.size() < 2 || !(hi > lo)) return 0.0;
    auto value_at = [&](double x) {
        if (x <= pts.front().x) return pts.front().y;
        if (x >= pts.back().x) return pts.back().y;
        auto it = std::lower_bound(pts.begin(), pts.end(), x,
                                   [](const CurvePoint& p, double v) { return p.x < v; });
        const auto& b = *it;
        const auto& a = *(it - 1);
        const double f = (x - a.x) / (b.x - a.x);
        return a.y + f * (b.y - a.y);
    };
    double area = 0.0;
    double px = lo, py = value_at(lo);
    for (const auto& p : pts) {
        if (p.x <= lo) continue;
        if (p.x >= hi) break;
        area += 0.5 * (py + p.y) * (p.x - px);
        px = p.x;
        py = p.y;
    }
    area += 0.5 * (py + value_at(hi)) * (hi - px);
    return area;
}

std::vector<double> default_threshold_grid(const std::vector<double>& data, double hi,
                                           std::size_t fill) {
    std::vector<double> grid;
    grid.reserve(data.size() + fill + 2);
    for (double v : data) {
        if (v >= 0.0 && v <= hi) grid.push_back(v);
    }
    for (std::size_t i = 0; i <= fill; ++i) {
        grid.push_back(hi * static_cast<double>(i) / static_cast<double>(fill));
    }
    grid = sorted_unique(std::move(grid));
    std::vector<double> with_mid;
    with_mid.reserve(grid.size() * 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        with_mid.push_back(grid[i]);
        if (i + 1 < grid.size()) with_mid.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    return sorted_unique(std::move(with_mid));
}

Curve brier_curve(const std::vector<std::pair<PredictiveDistribution, double>>& cases,
                  const std::vector<double>& grid, std::string label) {
    if (cases.empty()) throw std::invalid_argument("brier_curve: no cases");
    check_grid(grid, "brier_curve");
    Curve c{CurveKind::brier_decomposition, std::move(label), {}};
    c.points.reserve(grid.size());
    for (double s : grid) {
        double sum = 0.0;
        for (const auto& [f, t] : cases) {
            const double d = (s >= t ? 1.0 : 0.0) - f.cdf(s);
            sum += d * d;
        }
        c.points.push_back({s, sum / static_cast<double>(cases.size())});
    }
    return c;
}

Curve murphy_curve(const QuantilePairs& pairs, const std::vector<double>& grid,
                   std::string label) {
    if (pairs.pairs.empty()) throw std::invalid_argument("murphy_curve: no pairs");
    check_grid(grid, "murphy_curve");
    Curve c{CurveKind::murphy, std::move(label), {}};
    c.points.reserve(grid.size());
    for (double theta : grid) {
        double sum = 0.0;
        for (const auto& [x, t] : pairs.pairs) {
            sum += elementary_score(pairs.alpha, theta, x, t);
        }
        c.points.push_back({theta, sum / static_cast<double>(pairs.pairs.size())});
    }
    return c;
}

double ReliabilityCurve::eval(double x) const {
    if (knots.empty()) throw std::invalid_argument("ReliabilityCurve: empty curve");
    auto it = std::upper_bound(knots.begin(), knots.end(), x);
    if (it == knots.begin()) return fitted.front();
    return fitted[static_cast<std::size_t>(it - knots.begin()) - 1];
}

Curve ReliabilityCurve::as_curve(std::string label) const {
    Curve c{CurveKind::reliability, std::move(label), {}};
    c.points.reserve(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) c.points.push_back({knots[i], fitted[i]});
    return c;
}

ReliabilityCurve isotonic_quantile_fit(const QuantilePairs& pairs) {
    if (pairs.pairs.empty()) {
        throw std::invalid_argument("isotonic_quantile_fit: no pairs");
    }
    if (!(pairs.alpha > 0.0) || !(pairs.alpha < 1.0)) {
        throw std::domain_error("isotonic_quantile_fit: alpha must lie in (0, 1)");
    }
    auto sorted = pairs.pairs;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    // pool ties in x into blocks
    std::vector<double> knots;
    std::vector<std::vector<double>> blocks;
    for (const auto& [x, t] : sorted) {
        if (knots.empty() || x != knots.back()) {
            knots.push_back(x);
            blocks.emplace_back();
        }
        blocks.back().push_back(t);
    }
    const std::size_t nb = blocks.size();

    auto lower_quantile = [&](const std::vector<double>& vals) {
        std::size_t idx =
            static_cast<std::size_t>(std::ceil(pairs.alpha * static_cast<double>(vals.size())));
        if (idx < 1) idx = 1;
        if (idx > vals.size()) idx = vals.size();
        return vals[idx - 1];
    };

    // q[k][j - k]: lower alpha-quantile of the pooled targets of blocks k..j,
    // built by keeping the pool sorted while extending j.
    std::vector<std::vector<double>> q(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        std::vector<double> pool;
        q[k].reserve(nb - k);
        for (std::size_t j = k; j < nb; ++j) {
            for (double v : blocks[j]) {
                pool.insert(std::upper_bound(pool.begin(), pool.end(), v), v);
            }
            q[k].push_back(lower_quantile(pool));
        }
    }

    // fitted_i = min_{j >= i} max_{k <= i} q(k, j); row maxima accumulate in m.
    ReliabilityCurve out;
    out.alpha = pairs.alpha;
    out.knots = knots;
    out.fitted.resize(nb);
    std::vector<double> m(nb, -std::numeric_limits<double>::max());
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = i; j < nb; ++j) m[j] = std::max(m[j], q[i][j - i]);
        double best = std::numeric_limits<double>::max();
        for (std::size_t j = i; j < nb; ++j) best = std::min(best, m[j]);
        out.fitted[i] = best;
    }
    return out;
}

IntervalForecast recalibrate(const ReliabilityCurve& lower, const ReliabilityCurve& upper,
                             double x) {
    return IntervalForecast(lower.eval(x), upper.eval(x), upper.alpha - lower.alpha);
}

ReliabilityCurve isotonic_mean_fit(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("isotonic_mean_fit: no pairs");
    auto sorted = pairs;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> knots;
    std::vector<double> sums;
    std::vector<double> counts;
    for (const auto& [x, t] : sorted) {
        if (knots.empty() || x != knots.back()) {
            knots.push_back(x);
            sums.push_back(0.0);
            counts.push_back(0.0);
        }
        sums.back() += t;
        counts.back() += 1.0;
    }
    // pool adjacent violators on block means
    struct Block {
        double sum, count;
        std::size_t span;
    };
    std::vector<Block> stack;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        Block b{sums[i], counts[i], 1};
        while (!stack.empty() &&
               stack.back().sum / stack.back().count >= b.sum / b.count) {
            b.sum += stack.back().sum;
            b.count += stack.back().count;
            b.span += stack.back().span;
            stack.pop_back();
        }
        stack.push_back(b);
    }
    ReliabilityCurve out;
    out.alpha = 0.5;
    out.knots = knots;
    out.fitted.reserve(knots.size());
    for (const auto& b : stack) {
        for (std::size_t k = 0; k < b.span; ++k) out.fitted.push_back(b.sum / b.count);
    }
    return out;
}

}  // namespace censcore
