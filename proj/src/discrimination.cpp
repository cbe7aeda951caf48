#include "censcore/discrimination.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace censcore {

namespace {

constexpr std::size_t kBruteForceLimit = 512;

// Fenwick tree over compressed risk ranks.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
    void add(std::size_t i) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
    }
    // count of inserted ranks <= i
    std::int64_t prefix(std::size_t i) const {
        std::int64_t s = 0;
        for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::int64_t> tree_;
};

double c_index_brute(const RiskDataset& d) {
    std::int64_t num2 = 0;  // twice the numerator, to keep half credits integral
    std::int64_t den = 0;
    for (const auto& a : d.cases) {
        if (a.time > d.censor_tau) continue;
        for (const auto& b : d.cases) {
            if (!(a.time < b.time)) continue;
            ++den;
            if (a.risk > b.risk) {
                num2 += 2;
            } else if (a.risk == b.risk) {
                num2 += 1;
            }
        }
    }
    if (den == 0) {
        throw std::invalid_argument("c_index: no comparable pair (degenerate dataset)");
    }
    return static_cast<double>(num2) / (2.0 * static_cast<double>(den));
}

double c_index_fast(const RiskDataset& d) {
    const std::size_t n = d.cases.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return d.cases[a].time < d.cases[b].time;
    });

    std::vector<double> risks(n);
    for (std::size_t i = 0; i < n; ++i) risks[i] = d.cases[i].risk;
    std::sort(risks.begin(), risks.end());
    risks.erase(std::unique(risks.begin(), risks.end()), risks.end());
    auto rank_of = [&](double r) {
        return static_cast<std::size_t>(
            std::lower_bound(risks.begin(), risks.end(), r) - risks.begin());
    };

    Fenwick tree(risks.size());
    std::int64_t inserted = 0;
    std::int64_t num2 = 0;
    std::int64_t den = 0;
    std::size_t i = 0;
    while (i < n) {
        // process a block of equal realization times: query first, insert after
        std::size_t j = i;
        while (j < n && d.cases[order[j]].time == d.cases[order[i]].time) ++j;
        for (std::size_t k = i; k < j; ++k) {
            const auto& c = d.cases[order[k]];
            den += inserted;
            const std::size_t r = rank_of(c.risk);
            const std::int64_t le = tree.prefix(r);
            const std::int64_t lt = r > 0 ? tree.prefix(r - 1) : 0;
            num2 += 2 * (inserted - le) + (le - lt);
        }
        for (std::size_t k = i; k < j; ++k) {
            const auto& c = d.cases[order[k]];
            if (c.time <= d.censor_tau) {
                tree.add(rank_of(c.risk));
                ++inserted;
            }
        }
        i = j;
    }
    if (den == 0) {
        throw std::invalid_argument("c_index: no comparable pair (degenerate dataset)");
    }
    return static_cast<double>(num2) / (2.0 * static_cast<double>(den));
}

}  // namespace

double c_index(const RiskDataset& d) {
    if (d.cases.size() <= kBruteForceLimit) return c_index_brute(d);
    return c_index_fast(d);
}

double auc_s(const RiskDataset& d) {
    std::vector<double> early;  // risks with t <= s
    std::vector<double> late;   // risks with t > s
    for (const auto& c : d.cases) {
        (c.time <= d.horizon_s ? early : late).push_back(c.risk);
    }
    if (early.empty() || late.empty()) {
        throw std::invalid_argument("auc_s: no pair with t_i <= s < t_j (degenerate dataset)");
    }
    std::sort(early.begin(), early.end());
    std::sort(late.begin(), late.end());
    // For each early risk, count late risks strictly below it plus half the ties.
    std::int64_t num2 = 0;
    std::size_t below = 0, at = 0;
    for (double r : early) {
        while (below < late.size() && late[below] < r) ++below;
        at = below;
        while (at < late.size() && late[at] == r) ++at;
        num2 += 2 * static_cast<std::int64_t>(below) + static_cast<std::int64_t>(at - below);
    }
    return static_cast<double>(num2) /
           (2.0 * static_cast<double>(early.size()) * static_cast<double>(late.size()));
}

}  // namespace censcore
