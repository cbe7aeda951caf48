#pragma once

// CSV ingestion, first-passage-time extraction from ensemble time series,
// and dataset scoring orchestration behind the command-line interface.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "censcore/censoring.hpp"
#include "censcore/distributions.hpp"
#include "censcore/inference.hpp"
#include "censcore/scoring_rules.hpp"

namespace censcore {

struct TimeSeriesForecast {
    std::string case_id;
    std::string member_id;
    std::vector<std::pair<double, double>> samples;  // (lead time, value), leads increasing
};

struct EventSpec {
    double threshold;
    double horizon;  // tau, hours
};

// First upcrossing of the threshold by linear interpolation between
// consecutive samples; 0 if the first sample already exceeds it; censored at
// the horizon when the threshold is not reached within it (no extrapolation
// past the last sample).
CensoredTime first_passage(const std::vector<std::pair<double, double>>& samples,
                           const EventSpec& spec);

// Empirical CDF of per-member first passage times, censored at the horizon
// and wrapped so cdf(s) = 1 for s >= horizon ("partial" CDF semantics).
PredictiveDistribution ensemble_to_event_forecast(const std::vector<TimeSeriesForecast>& members,
                                                  const EventSpec& spec);

enum class PayloadKind { ensemble, quantile, interval, gamma };

const char* payload_kind_name(PayloadKind k);
PayloadKind parse_payload_kind(const std::string& s);

struct ForecastRecord {
    std::string case_id;
    std::string group;
    PayloadKind kind = PayloadKind::ensemble;
    std::vector<double> payload;  // members | quantile value | (lo, hi) | (shape, rate, shift)
    double realization = 0.0;
    bool censored = false;  // reporting flag; scores censor by value regardless
};

// Records CSV: header case_id,group,kind,payload,realization,censored with a
// ';'-separated numeric payload. Floats carry 17 significant digits so an
// export/import round trip reproduces scores bit-identically.
std::vector<ForecastRecord> read_records_csv(std::istream& is);
void write_records_csv(std::ostream& os, const std::vector<ForecastRecord>& records);

// Ensemble long format: case_id,member,lead_time,value, leads increasing per
// member; case and member order follows first appearance.
std::vector<TimeSeriesForecast> read_ensemble_csv(std::istream& is);
void write_ensemble_csv(std::ostream& os, const std::vector<TimeSeriesForecast>& series);

struct ScoreMethod {
    enum class Kind { crps, twcrps, twlogs, twql, twis, survcrps, lins, cindex, aucs };
    Kind kind = Kind::twcrps;
    double alpha = 0.9;                 // level for twql / twis
    std::optional<double> risk_horizon; // s for cindex / aucs risks (default: tau)
    EnsembleFairness fairness = EnsembleFairness::empirical;
};

ScoreMethod::Kind parse_score_method(const std::string& s);
const char* score_method_name(ScoreMethod::Kind k);

struct ScoreOutput {
    // Per-record path (empty for the dataset-level discrimination indices).
    std::vector<std::string> case_ids;
    ScoreSeries per_record;
    // Group means keyed on the grouping column, in first-appearance order.
    std::vector<std::string> group_keys;
    ScoreSeries group_means;
    // Records that could not be scored, with reasons.
    std::vector<std::pair<std::string, std::string>> skipped;
    // c-index / AUC_s value when the method is dataset-level.
    std::optional<double> dataset_value;
};

// Scores every record with the method; per-record failures are collected,
// not fatal. Throws std::invalid_argument if nothing remains.
ScoreOutput score_dataset(const std::vector<ForecastRecord>& records, const ScoreMethod& method,
                          const CensorHorizon& tau);

}  // namespace censcore
