#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "censcore/synthetic.hpp"

using namespace censcore;

TEST_CASE("experiment generation is deterministic with the right marginals") {
    const auto cases = generate_experiment(10000, 7);
    REQUIRE(cases.size() == 10000);
    double mean_t = 0.0;
    for (const auto& c : cases) {
        CHECK(c.x > 0.0);
        CHECK(c.y > 0.0);
        CHECK(c.z > 0.0);
        CHECK(c.t == c.x + c.y + c.z);
        mean_t += c.t;
    }
    mean_t /= static_cast<double>(cases.size());
    CHECK(std::fabs(mean_t - 6.0) < 0.1);

    const auto again = generate_experiment(10000, 7);
    CHECK(again[123].t == cases[123].t);
    CHECK(again[9999].x == cases[9999].x);

    // KS against Gamma(6,1)
    std::vector<double> t;
    for (const auto& c : cases) t.push_back(c.t);
    std::sort(t.begin(), t.end());
    const GammaDist g6(6.0, 1.0);
    double ks = 0.0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double f = g6.cdf(t[i]);
        ks = std::max(ks, std::fabs(f - static_cast<double>(i) / n));
        ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    CHECK(ks < 1.628 / std::sqrt(n));
}

TEST_CASE("forecaster distributions follow the design") {
    const ExperimentCase c{2.45, 1.34, 0.94, 4.73};
    const auto lucy = forecaster_distribution(Forecaster::low_info_lucy, c);
    CHECK(lucy.shape == 6.0);
    CHECK(lucy.rate == 1.0);
    CHECK(lucy.shift == 0.0);

    const auto muli = forecaster_distribution(Forecaster::mod_info_muli, c);
    CHECK(muli.shape == 3.0);
    CHECK(muli.shift == 2.45);

    const auto penny = forecaster_distribution(Forecaster::pessimistic_penny, c);
    CHECK(penny.shift == doctest::Approx(3.79));
    CHECK(penny.rate == 2.0);

    const auto hannah = forecaster_distribution(Forecaster::high_info_hannah, c);
    CHECK(hannah.mean() == doctest::Approx(c.x + c.y + 1.0));

    const auto omar = forecaster_distribution(Forecaster::optimistic_omar, c);
    CHECK(omar.rate == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("functional values for the illustrated forecast case") {
    // x = 2.45, y = 1.34, z = 0.94 and the reference two-decimal functionals
    const ExperimentCase c{2.45, 1.34, 0.94, 4.73};
    const struct {
        Forecaster f;
        double mean, median, q10, iqr_lo, iqr_hi;
    } rows[] = {
        {Forecaster::low_info_lucy, 6.00, 5.67, 3.15, 4.22, 7.42},
        {Forecaster::mod_info_muli, 5.45, 5.12, 3.55, 4.18, 6.37},
        {Forecaster::high_info_hannah, 4.79, 4.48, 3.90, 4.08, 5.18},
        {Forecaster::pessimistic_penny, 4.29, 4.14, 3.84, 3.93, 4.48},
        {Forecaster::optimistic_omar, 6.79, 5.87, 4.11, 4.65, 7.95},
    };
    for (const auto& row : rows) {
        const auto g = forecaster_distribution(row.f, c);
        CHECK(g.mean() == doctest::Approx(row.mean).epsilon(0.002));
        CHECK(g.quantile(0.5) == doctest::Approx(row.median).epsilon(0.002));
        CHECK(g.quantile(0.1) == doctest::Approx(row.q10).epsilon(0.002));
        CHECK(g.quantile(0.25) == doctest::Approx(row.iqr_lo).epsilon(0.002));
        CHECK(g.quantile(0.75) == doctest::Approx(row.iqr_hi).epsilon(0.002));
    }
}

TEST_CASE("table bundle structure on a reduced run") {
    const auto bundle = run_experiment_tables(600, 11, {6.0});
    CHECK(bundle.n == 600);
    CHECK(bundle.logs_infinite_count == 0);
    REQUIRE(bundle.find("crps") != nullptr);
    REQUIRE(bundle.find("twcrps_6") != nullptr);
    REQUIRE(bundle.find("twql_0.9_6") != nullptr);
    REQUIRE(bundle.find("twis_0.5_6") != nullptr);
    REQUIRE(bundle.find("cindex_s2") != nullptr);
    CHECK(bundle.find("twcrps_12") == nullptr);

    // constant forecasts give LowInfoLucy a c-index of exactly one half
    CHECK(bundle.find("cindex_s2")->means[0] == 0.5);
    CHECK(bundle.find("aucs_s10")->means[0] == 0.5);

    // pairwise tests exist for per-case methods: 10 pairs each
    std::size_t crps_pairs = 0;
    for (const auto& p : bundle.pairwise) {
        if (p.method == "crps") ++crps_pairs;
        CHECK(p.p_value >= 0.0);
        CHECK(p.p_value <= 1.0);
    }
    CHECK(crps_pairs == 10);
}

TEST_CASE("table bundles are reproducible") {
    const auto a = run_experiment_tables(300, 5, {6.0});
    const auto b = run_experiment_tables(300, 5, {6.0});
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].method == b.rows[i].method);
        for (std::size_t fi = 0; fi < 5; ++fi) {
            CHECK(a.rows[i].means[fi] == b.rows[i].means[fi]);
        }
    }
    CHECK(a.twlogs2_z == b.twlogs2_z);
}

TEST_CASE("table bundle serializes to CSV and JSON") {
    const auto bundle = run_experiment_tables(200, 3, {6.0});
    std::ostringstream csv;
    write_table_csv(csv, bundle);
    CHECK(csv.str().find("method,LowInfoLucy,ModInfoMuli,HighInfoHannah,PessimisticPenny,"
                         "OptimisticOmar") == 0);
    CHECK(csv.str().find("crps,") != std::string::npos);
    std::ostringstream js;
    write_table_json(js, bundle);
    CHECK(js.str().find("\"twlogs2_z\"") != std::string::npos);
}
