#include "doctest.h"

#include <vector>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "censcore/distributions.hpp"
#include "censcore/random.hpp"
#include "censcore/special_math.hpp"

#include "oracles.hpp"

using namespace censcore;

TEST_CASE("gamma cdf") {
    const GammaDist expo(1.0, 1.0);
    CHECK(expo.cdf(2.0) == doctest::Approx(-std::expm1(-2.0)).epsilon(1e-14));
    CHECK(GammaDist(6.0, 1.0).cdf(0.0) == 0.0);
    // shifted: Gamma(3,1,2.45) at 4.53 equals the unshifted CDF at 2.08
    const GammaDist shifted(3.0, 1.0, 2.45);
    CHECK(shifted.cdf(4.53) == doctest::Approx(GammaDist(3.0, 1.0).cdf(2.08)).epsilon(1e-12));
    const double quad = oracle::integrate(
        [](double u) { return 0.5 * u * u * std::exp(-u); }, 0.0, 2.08, 1e-12);
    CHECK(shifted.cdf(4.53) == doctest::Approx(quad).epsilon(1e-10));
    CHECK(shifted.cdf(2.0) == 0.0);
}

TEST_CASE("gamma quantile") {
    const GammaDist g6(6.0, 1.0);
    CHECK(g6.quantile(0.5) == doctest::Approx(5.67016118871207).epsilon(1e-9));
    CHECK(g6.quantile(0.1) == doctest::Approx(3.1518980297921617).epsilon(1e-9));
    CHECK(GammaDist(1.0, 1.0).quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(g6.quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(g6.quantile(1.0), std::domain_error);
}

TEST_CASE("quantile and cdf invert each other") {
    for (const GammaDist& g : {GammaDist(6.0, 1.0), GammaDist(0.7, 2.5), GammaDist(3.0, 0.5, 1.5)}) {
        for (int i = 1; i <= 50; ++i) {
            const double p = static_cast<double>(i) / 51.0;
            const double x = g.quantile(p);
            CHECK(g.cdf(x) == doctest::Approx(p).epsilon(1e-8));
        }
    }
    // small shapes put an unbounded density at the origin
    const GammaDist tiny(0.3, 2.0);
    for (double p : {1e-4, 1e-3, 0.01, 0.999}) {
        CHECK(tiny.cdf(tiny.quantile(p)) == doctest::Approx(p).epsilon(1e-7));
    }
}

TEST_CASE("gamma sampling moments and determinism") {
    RandomEngine rng(1234);
    const std::size_t n = 100000;
    double sum = 0.0;
    const GammaDist expo(1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) sum += expo.sample(rng);
    CHECK(std::fabs(sum / n - 1.0) < 0.03);

    RandomEngine rng2(99);
    sum = 0.0;
    const GammaDist g6(6.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) sum += g6.sample(rng2);
    CHECK(std::fabs(sum / n - 6.0) < 0.05);

    RandomEngine a(7), b(7);
    const GammaDist frac(0.4, 2.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        CHECK(frac.sample(a) == frac.sample(b));
    }
}

TEST_CASE("gamma additivity: sum of components matches Gamma(6,1) by KS test") {
    RandomEngine rng(20240615);
    const GammaDist g3(3.0, 1.0), g2(2.0, 1.0), g1(1.0, 1.0);
    const std::size_t n = 10000;
    std::vector<double> t(n);
    for (auto& v : t) v = g3.sample(rng) + g2.sample(rng) + g1.sample(rng);
    std::sort(t.begin(), t.end());
    const GammaDist g6(6.0, 1.0);
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = g6.cdf(t[i]);
        ks = std::max(ks, std::fabs(f - static_cast<double>(i) / n));
        ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));  // 1% critical value
}

TEST_CASE("empirical cdf") {
    const EmpiricalDist e({1.0, 2.0, 3.0});
    CHECK(e.cdf(2.0) == doctest::Approx(2.0 / 3.0));
    const EmpiricalDist single({5.0});
    CHECK(single.cdf(4.0) == 0.0);
    CHECK(single.cdf(5.0) == 1.0);
    CHECK(single.cdf_left(5.0) == 0.0);
    CHECK_THROWS_AS(EmpiricalDist({}), std::invalid_argument);
}

TEST_CASE("empirical lower quantile") {
    const EmpiricalDist e({3.0, 5.0});
    CHECK(e.quantile_lower(0.5) == 3.0);
    CHECK(e.quantile_lower(0.75) == 5.0);
    CHECK(e.quantile_lower(0.25) == 3.0);
}

TEST_CASE("every variant yields a nondecreasing cdf") {
    std::vector<PredictiveDistribution> dists;
    dists.emplace_back(GammaDist(2.0, 1.5, 0.5));
    dists.emplace_back(EmpiricalDist({0.5, 1.0, 1.0, 4.0}));
    dists.emplace_back(PointMass{2.0});
    dists.push_back(
        PredictiveDistribution::censored(PredictiveDistribution(GammaDist(2.0, 1.0)), 3.0));
    for (const auto& d : dists) {
        double prev = 0.0;
        for (int i = 0; i <= 300; ++i) {
            const double s = 6.0 * i / 300.0;
            const double f = d.cdf(s);
            CHECK(f >= prev - 1e-15);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            prev = f;
        }
    }
}

TEST_CASE("point mass is right-continuous") {
    const PredictiveDistribution pm((PointMass{2.0}));
    CHECK(pm.cdf(2.0) == 1.0);
    CHECK(pm.cdf_left(2.0) == 0.0);
    CHECK(pm.cdf(1.999999) == 0.0);
}

TEST_CASE("nested censoring collapses to the tightest horizon") {
    const PredictiveDistribution base(GammaDist(2.0, 1.0));
    const auto outer_five = PredictiveDistribution::censored(base, 5.0);
    const auto nested = PredictiveDistribution::censored(outer_five, 3.0);
    const auto direct = PredictiveDistribution::censored(base, 3.0);
    for (int i = 0; i <= 300; ++i) {
        const double s = 7.0 * i / 300.0;
        CHECK(nested.cdf(s) == direct.cdf(s));
    }
}

TEST_CASE("discrete members view applies censoring") {
    const PredictiveDistribution emp(EmpiricalDist({1.0, 5.0, 9.0}));
    const auto censored = PredictiveDistribution::censored(emp, 6.0);
    const auto members = censored.discrete_members();
    REQUIRE(members.has_value());
    CHECK(*members == std::vector<double>{1.0, 5.0, 6.0});
    CHECK_FALSE(PredictiveDistribution(GammaDist(1.0, 1.0)).discrete_members().has_value());
}
