#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "censcore/random.hpp"
#include "censcore/workbench.hpp"

using namespace censcore;

TEST_CASE("first passage interpolation") {
    const EventSpec spec{15.0, 18.0};
    const auto mid = first_passage({{0.0, 10.0}, {1.0, 20.0}}, spec);
    CHECK(mid.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(mid.was_censored);

    const auto immediate = first_passage({{0.0, 16.0}, {1.0, 10.0}}, spec);
    CHECK(immediate.value == 0.0);

    const auto never = first_passage({{0.0, 10.0}, {1.0, 12.0}}, spec);
    CHECK(never.was_censored);
    CHECK(never.value == 18.0);

    CHECK_THROWS_AS(first_passage({}, spec), std::invalid_argument);
    CHECK_THROWS_AS(first_passage({{1.0, 3.0}, {1.0, 4.0}}, spec), std::invalid_argument);
}

TEST_CASE("first passage is monotone in the threshold") {
    RandomEngine rng(51);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::pair<double, double>> samples;
        double v = 10.0;
        for (int i = 0; i <= 24; ++i) {
            v += 2.0 * (rng.uniform() - 0.45);
            samples.emplace_back(static_cast<double>(i), v);
        }
        double prev = 0.0;
        for (double h : {8.0, 10.0, 12.0, 14.0, 16.0}) {
            const double t = first_passage(samples, {h, 24.0}).value;
            CHECK(t >= prev);
            prev = t;
        }
    }
}

TEST_CASE("ensembles become censored empirical forecasts") {
    const EventSpec spec{15.0, 18.0};
    TimeSeriesForecast crossing{"c1", "m1", {{0.0, 10.0}, {1.0, 20.0}}};
    TimeSeriesForecast flat{"c1", "m2", {{0.0, 10.0}, {1.0, 11.0}}};
    const auto f = ensemble_to_event_forecast({crossing, flat}, spec);
    CHECK(f.cdf(0.5) == doctest::Approx(0.5));
    CHECK(f.cdf(17.9) == doctest::Approx(0.5));
    CHECK(f.cdf(18.0) == 1.0);

    const auto none = ensemble_to_event_forecast({flat}, spec);
    CHECK(none.cdf(17.0) == 0.0);
    CHECK(none.cdf(18.0) == 1.0);
}

TEST_CASE("fair ensemble estimator equals its direct double sum") {
    const EventSpec spec{15.0, 18.0};
    TimeSeriesForecast a{"c", "1", {{0.0, 10.0}, {1.0, 20.0}}};          // 0.5
    TimeSeriesForecast b{"c", "2", {{0.0, 10.0}, {2.0, 11.0}}};          // censored
    TimeSeriesForecast c{"c", "3", {{0.0, 14.0}, {1.0, 16.0}, {2.0, 20.0}}};  // 0.5
    std::vector<double> times;
    for (const auto& m : {a, b, c}) times.push_back(first_passage(m.samples, spec).value);
    const double t_obs = 7.0;
    const std::size_t m = times.size();
    double term1 = 0.0, term2 = 0.0;
    for (double x : times) term1 += std::fabs(std::min(x, 18.0) - std::min(t_obs, 18.0));
    for (double x : times)
        for (double y : times) term2 += std::fabs(std::min(x, 18.0) - std::min(y, 18.0));
    const double direct = term1 / m - term2 / (2.0 * m * (m - 1.0));
    CHECK(twcrps_ensemble(times, t_obs, 18.0, EnsembleFairness::fair) ==
          doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("records CSV round trip reproduces scores bit-identically") {
    std::vector<ForecastRecord> records;
    RandomEngine rng(52);
    for (int i = 0; i < 40; ++i) {
        ForecastRecord r;
        r.case_id = "case" + std::to_string(i);
        r.group = "g" + std::to_string(i % 5);
        r.kind = PayloadKind::ensemble;
        for (int k = 0; k < 7; ++k) r.payload.push_back(20.0 * rng.uniform());
        r.realization = 20.0 * rng.uniform();
        r.censored = r.realization > 12.0;
        records.push_back(std::move(r));
    }
    std::ostringstream os;
    write_records_csv(os, records);
    std::istringstream is(os.str());
    const auto parsed = read_records_csv(is);
    REQUIRE(parsed.size() == records.size());

    ScoreMethod method;
    method.kind = ScoreMethod::Kind::twcrps;
    method.fairness = EnsembleFairness::fair;
    const CensorHorizon tau(12.0);
    const auto s1 = score_dataset(records, method, tau);
    const auto s2 = score_dataset(parsed, method, tau);
    REQUIRE(s1.per_record.scores.size() == s2.per_record.scores.size());
    for (std::size_t i = 0; i < s1.per_record.scores.size(); ++i) {
        CHECK(s1.per_record.scores[i] == s2.per_record.scores[i]);
    }
}

TEST_CASE("ensemble long CSV parses grouped members") {
    const std::string csv =
        "case_id,member,lead_time,value\n"
        "c1,m1,0,10\n"
        "c1,m1,1,20\n"
        "c1,m2,0,11\n"
        "c2,m1,0,9\n";
    std::istringstream is(csv);
    const auto series = read_ensemble_csv(is);
    REQUIRE(series.size() == 3);
    CHECK(series[0].case_id == "c1");
    CHECK(series[0].member_id == "m1");
    CHECK(series[0].samples.size() == 2);
    CHECK(series[2].case_id == "c2");

    std::istringstream bad("wrong,header\n");
    CHECK_THROWS_AS(read_ensemble_csv(bad), std::invalid_argument);
}

TEST_CASE("score_dataset on a single quantile record") {
    ForecastRecord r;
    r.case_id = "one";
    r.group = "g";
    r.kind = PayloadKind::quantile;
    r.payload = {5.0};
    r.realization = 7.0;
    ScoreMethod method;
    method.kind = ScoreMethod::Kind::twql;
    method.alpha = 0.9;
    const auto out = score_dataset({r}, method, CensorHorizon(6.0));
    REQUIRE(out.per_record.scores.size() == 1);
    CHECK(out.per_record.scores[0] == doctest::Approx(0.9).epsilon(1e-14));

    // as a deterministic distribution, twcrps degenerates to the censored
    // absolute error
    ScoreMethod tw;
    tw.kind = ScoreMethod::Kind::twcrps;
    const auto out2 = score_dataset({r}, tw, CensorHorizon(6.0));
    CHECK(out2.per_record.scores[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("records CSV rejects malformed input") {
    const std::string header = "case_id,group,kind,payload,realization,censored\n";
    std::istringstream bad_header("case,group\n");
    CHECK_THROWS_AS(read_records_csv(bad_header), std::invalid_argument);
    std::istringstream few_fields(header + "c1,g,quantile,5\n");
    CHECK_THROWS_AS(read_records_csv(few_fields), std::invalid_argument);
    std::istringstream bad_flag(header + "c1,g,quantile,5,6,maybe\n");
    CHECK_THROWS_AS(read_records_csv(bad_flag), std::invalid_argument);
    std::istringstream bad_kind(header + "c1,g,fuzzy,5,6,0\n");
    CHECK_THROWS_AS(read_records_csv(bad_kind), std::invalid_argument);
    std::istringstream bad_number(header + "c1,g,quantile,5;x,6,0\n");
    CHECK_THROWS_AS(read_records_csv(bad_number), std::invalid_argument);
}

TEST_CASE("group means of equal-sized groups average to the overall mean") {
    std::vector<ForecastRecord> records;
    RandomEngine rng(53);
    for (int i = 0; i < 36; ++i) {
        ForecastRecord r;
        r.case_id = "c" + std::to_string(i);
        r.group = "g" + std::to_string(i % 4);
        r.kind = PayloadKind::quantile;
        r.payload = {10.0 * rng.uniform()};
        r.realization = 10.0 * rng.uniform();
        records.push_back(std::move(r));
    }
    ScoreMethod method;
    method.kind = ScoreMethod::Kind::twql;
    method.alpha = 0.75;
    const auto out = score_dataset(records, method, CensorHorizon(8.0));
    REQUIRE(out.group_keys.size() == 4);
    CHECK(out.group_means.mean() == doctest::Approx(out.per_record.mean()).epsilon(1e-12));
}

TEST_CASE("unscorable records are skipped with reasons, all-skip fails") {
    ForecastRecord ens;
    ens.case_id = "ens";
    ens.group = "g";
    ens.kind = PayloadKind::ensemble;
    ens.payload = {1.0, 2.0};
    ens.realization = 1.5;

    ForecastRecord gam;
    gam.case_id = "gam";
    gam.group = "g";
    gam.kind = PayloadKind::gamma;
    gam.payload = {2.0, 1.0, 0.0};
    gam.realization = 1.5;

    ScoreMethod twlogs;
    twlogs.kind = ScoreMethod::Kind::twlogs;
    const auto out = score_dataset({ens, gam}, twlogs, CensorHorizon(6.0));
    CHECK(out.per_record.scores.size() == 1);
    REQUIRE(out.skipped.size() == 1);
    CHECK(out.skipped[0].first == "ens");

    CHECK_THROWS_AS(score_dataset({ens}, twlogs, CensorHorizon(6.0)), std::invalid_argument);
}

TEST_CASE("score_dataset twcrps on ensembles honors the fairness mode") {
    ForecastRecord r;
    r.case_id = "c";
    r.group = "g";
    r.kind = PayloadKind::ensemble;
    r.payload = {3.0, 5.0, 20.0};
    r.realization = 4.0;
    ScoreMethod fair;
    fair.kind = ScoreMethod::Kind::twcrps;
    fair.fairness = EnsembleFairness::fair;
    const CensorHorizon tau(10.0);
    const auto out = score_dataset({r}, fair, tau);
    CHECK(out.per_record.scores[0] ==
          twcrps_ensemble(r.payload, r.realization, 10.0, EnsembleFairness::fair));
    ScoreMethod emp;
    emp.kind = ScoreMethod::Kind::twcrps;
    const auto out2 = score_dataset({r}, emp, tau);
    CHECK(out2.per_record.scores[0] ==
          twcrps_ensemble(r.payload, r.realization, 10.0, EnsembleFairness::empirical));
}

TEST_CASE("dataset-level discrimination methods") {
    std::vector<ForecastRecord> records;
    for (int i = 0; i < 8; ++i) {
        ForecastRecord r;
        r.case_id = "c" + std::to_string(i);
        r.group = "g";
        r.kind = PayloadKind::gamma;
        r.payload = {1.0, 1.0, static_cast<double>(i)};  // later shift = lower risk
        r.realization = static_cast<double>(i) + 0.5;
        records.push_back(std::move(r));
    }
    ScoreMethod cind;
    cind.kind = ScoreMethod::Kind::cindex;
    cind.risk_horizon = 20.0;  // all risks distinct
    const auto out = score_dataset(records, cind, CensorHorizon(100.0));
    REQUIRE(out.dataset_value.has_value());
    CHECK(*out.dataset_value == 1.0);  // risks perfectly ordered against times
}
