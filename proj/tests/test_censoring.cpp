#include "doctest.h"

#include <stdexcept>
#include <algorithm>
#include <vector>

#include <cmath>

#include "censcore/censoring.hpp"
#include "censcore/random.hpp"

using namespace censcore;

TEST_CASE("censor scalar") {
    CHECK(censor_scalar(CensorHorizon(18.0), 5.35) == 5.35);
    CHECK(censor_scalar(CensorHorizon(6.0), 7.0) == 6.0);
    CHECK(censor_scalar(CensorHorizon(6.0), 6.0) == 6.0);
    CHECK(censor_time(CensorHorizon(6.0), 7.0).was_censored);
    CHECK_FALSE(censor_time(CensorHorizon(6.0), 6.0).was_censored);
    CHECK_THROWS_AS(CensorHorizon(0.0), std::domain_error);
}

TEST_CASE("censor vector") {
    const CensorHorizon h(6.0);
    CHECK(censor_vector(h, {4.22, 7.42}) == std::vector<double>{4.22, 6.0});
    CHECK(censor_vector(h, {7.0, 9.0}) == std::vector<double>{6.0, 6.0});
    CHECK(censor_vector(h, {}).empty());
}

TEST_CASE("censor distribution") {
    const CensorHorizon h(2.0);
    const auto f = censor_distribution(h, PredictiveDistribution(GammaDist(1.0, 1.0)));
    CHECK(f.cdf(1.9) == doctest::Approx(-std::expm1(-1.9)).epsilon(1e-14));
    CHECK(f.cdf(2.0) == 1.0);

    const auto pm = censor_distribution(CensorHorizon(5.0), PredictiveDistribution(PointMass{7.0}));
    CHECK(pm.cdf(4.9) == 0.0);
    CHECK(pm.cdf(5.0) == 1.0);
}

TEST_CASE("censoring idempotence on a probe grid") {
    const CensorHorizon h(3.0);
    const PredictiveDistribution base(GammaDist(2.0, 1.0));
    const auto once = censor_distribution(h, base);
    const auto twice = censor_distribution(h, once);
    for (int i = 0; i <= 400; ++i) {
        const double s = 8.0 * i / 400.0;
        CHECK(once.cdf(s) == twice.cdf(s));
    }
    CHECK(censor_scalar(h, censor_scalar(h, 7.5)) == censor_scalar(h, 7.5));
    const std::vector<double> v{1.0, 3.5, 9.0};
    CHECK(censor_vector(h, censor_vector(h, v)) == censor_vector(h, v));
}

TEST_CASE("censoring is monotone in the horizon") {
    RandomEngine rng(5);
    for (int i = 0; i < 200; ++i) {
        const double t = 10.0 * rng.uniform();
        const double t1 = 5.0 * rng.uniform() + 0.01;
        const double t2 = t1 + 5.0 * rng.uniform();
        CHECK(censor_scalar(CensorHorizon(t1), t) <= censor_scalar(CensorHorizon(t2), t));
    }
}

TEST_CASE("sampled censoring matches the censored distribution") {
    const CensorHorizon h(1.2);
    const GammaDist g(2.0, 2.0);
    const auto cf = censor_distribution(h, PredictiveDistribution(g));
    RandomEngine rng(77);
    const std::size_t n = 10000;
    std::vector<double> v(n);
    for (auto& x : v) x = censor_scalar(h, g.sample(rng));
    std::sort(v.begin(), v.end());
    double ks = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double s = 1.5 * i / 500.0;
        const double emp =
            static_cast<double>(std::upper_bound(v.begin(), v.end(), s) - v.begin()) / n;
        ks = std::max(ks, std::fabs(emp - cf.cdf(s)));
    }
    CHECK(ks < 0.02);
}
