#include "censcore/workbench.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "censcore/discrimination.hpp"
#include "censcore/format.hpp"
#include "censcore/point_scoring.hpp"

namespace censcore {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid number for ") + what + ": '" + s + "'");
    }
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

PredictiveDistribution record_distribution(const ForecastRecord& r) {
    switch (r.kind) {
        case PayloadKind::ensemble:
            return PredictiveDistribution(EmpiricalDist(r.payload));
        case PayloadKind::quantile:
            if (r.payload.size() != 1) {
                throw std::invalid_argument("quantile payload must hold one value");
            }
            // single-valued forecasts are interpreted as deterministic
            // distributions
            return PredictiveDistribution(PointMass{r.payload[0]});
        case PayloadKind::gamma: {
            if (r.payload.size() != 3) {
                throw std::invalid_argument("gamma payload must hold shape;rate;shift");
            }
            return PredictiveDistribution(GammaDist(r.payload[0], r.payload[1], r.payload[2]));
        }
        case PayloadKind::interval:
            throw std::invalid_argument("interval payload has no distribution form");
    }
    throw std::invalid_argument("unknown payload kind");
}

}  // namespace

CensoredTime first_passage(const std::vector<std::pair<double, double>>& samples,
                           const EventSpec& spec) {
    if (samples.empty()) throw std::invalid_argument("first_passage: no samples");
    if (!(spec.horizon > 0.0)) throw std::domain_error("first_passage: horizon must be positive");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].first > samples[i - 1].first)) {
            throw std::invalid_argument("first_passage: lead times must be strictly increasing");
        }
    }
    if (samples.front().second >= spec.threshold) {
        return CensoredTime{0.0, false};
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const auto& [l0, v0] = samples[i - 1];
        const auto& [l1, v1] = samples[i];
        if (v1 >= spec.threshold) {
            const double t = l0 + (spec.threshold - v0) / (v1 - v0) * (l1 - l0);
            if (t <= spec.horizon) return CensoredTime{t, false};
            return CensoredTime{spec.horizon, true};
        }
    }
    return CensoredTime{spec.horizon, true};
}

PredictiveDistribution ensemble_to_event_forecast(const std::vector<TimeSeriesForecast>& members,
                                                  const EventSpec& spec) {
    if (members.empty()) {
        throw std::invalid_argument("ensemble_to_event_forecast: no members");
    }
    std::vector<double> times;
    times.reserve(members.size());
    for (const auto& m : members) {
        times.push_back(first_passage(m.samples, spec).value);
    }
    return PredictiveDistribution::censored(PredictiveDistribution(EmpiricalDist(times)),
                                            spec.horizon);
}

const char* payload_kind_name(PayloadKind k) {
    switch (k) {
        case PayloadKind::ensemble:
            return "ensemble";
        case PayloadKind::quantile:
            return "quantile";
        case PayloadKind::interval:
            return "interval";
        case PayloadKind::gamma:
            return "gamma";
    }
    return "unknown";
}

PayloadKind parse_payload_kind(const std::string& s) {
    if (s == "ensemble") return PayloadKind::ensemble;
    if (s == "quantile") return PayloadKind::quantile;
    if (s == "interval") return PayloadKind::interval;
    if (s == "gamma") return PayloadKind::gamma;
    throw std::invalid_argument("unknown payload kind: '" + s + "'");
}

std::vector<ForecastRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) ||
        strip_cr(line) != "case_id,group,kind,payload,realization,censored") {
        throw std::invalid_argument("records CSV: bad or missing header");
    }
    std::vector<ForecastRecord> out;
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 6) {
            throw std::invalid_argument("records CSV: expected 6 fields: " + line);
        }
        ForecastRecord r;
        r.case_id = fields[0];
        r.group = fields[1];
        r.kind = parse_payload_kind(fields[2]);
        for (const auto& tok : split(fields[3], ';')) {
            if (!tok.empty()) r.payload.push_back(parse_double(tok, "payload"));
        }
        if (r.payload.empty()) {
            throw std::invalid_argument("records CSV: empty payload: " + line);
        }
        r.realization = parse_double(fields[4], "realization");
        if (fields[5] == "0" || fields[5] == "false") {
            r.censored = false;
        } else if (fields[5] == "1" || fields[5] == "true") {
            r.censored = true;
        } else {
            throw std::invalid_argument("records CSV: censored must be 0/1: " + line);
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_records_csv(std::ostream& os, const std::vector<ForecastRecord>& records) {
    os << "case_id,group,kind,payload,realization,censored\n";
    for (const auto& r : records) {
        os << r.case_id << ',' << r.group << ',' << payload_kind_name(r.kind) << ',';
        for (std::size_t i = 0; i < r.payload.size(); ++i) {
            if (i) os << ';';
            os << format_g17(r.payload[i]);
        }
        os << ',' << format_g17(r.realization) << ',' << (r.censored ? '1' : '0') << '\n';
    }
}

std::vector<TimeSeriesForecast> read_ensemble_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || strip_cr(line) != "case_id,member,lead_time,value") {
        throw std::invalid_argument("ensemble CSV: bad or missing header");
    }
    std::vector<TimeSeriesForecast> out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 4) {
            throw std::invalid_argument("ensemble CSV: expected 4 fields: " + line);
        }
        const auto key = std::make_pair(fields[0], fields[1]);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, out.size()).first;
            out.push_back(TimeSeriesForecast{fields[0], fields[1], {}});
        }
        out[it->second].samples.emplace_back(parse_double(fields[2], "lead_time"),
                                             parse_double(fields[3], "value"));
    }
    return out;
}

void write_ensemble_csv(std::ostream& os, const std::vector<TimeSeriesForecast>& series) {
    os << "case_id,member,lead_time,value\n";
    for (const auto& s : series) {
        for (const auto& [lead, value] : s.samples) {
            os << s.case_id << ',' << s.member_id << ',' << format_g17(lead) << ','
               << format_g17(value) << '\n';
        }
    }
}

ScoreMethod::Kind parse_score_method(const std::string& s) {
    if (s == "crps") return ScoreMethod::Kind::crps;
    if (s == "twcrps") return ScoreMethod::Kind::twcrps;
    if (s == "twlogs") return ScoreMethod::Kind::twlogs;
    if (s == "twql") return ScoreMethod::Kind::twql;
    if (s == "twis") return ScoreMethod::Kind::twis;
    if (s == "survcrps") return ScoreMethod::Kind::survcrps;
    if (s == "lins") return ScoreMethod::Kind::lins;
    if (s == "cindex") return ScoreMethod::Kind::cindex;
    if (s == "aucs") return ScoreMethod::Kind::aucs;
    throw std::invalid_argument("unknown scoring method: '" + s + "'");
}

const char* score_method_name(ScoreMethod::Kind k) {
    switch (k) {
        case ScoreMethod::Kind::crps: return "crps";
        case ScoreMethod::Kind::twcrps: return "twcrps";
        case ScoreMethod::Kind::twlogs: return "twlogs";
        case ScoreMethod::Kind::twql: return "twql";
        case ScoreMethod::Kind::twis: return "twis";
        case ScoreMethod::Kind::survcrps: return "survcrps";
        case ScoreMethod::Kind::lins: return "lins";
        case ScoreMethod::Kind::cindex: return "cindex";
        case ScoreMethod::Kind::aucs: return "aucs";
    }
    return "unknown";
}

ScoreOutput score_dataset(const std::vector<ForecastRecord>& records, const ScoreMethod& method,
                          const CensorHorizon& tau) {
    if (records.empty()) throw std::invalid_argument("score_dataset: no records");
    ScoreOutput out;
    out.per_record.label = score_method_name(method.kind);
    out.group_means.label = out.per_record.label;

    const bool dataset_level =
        method.kind == ScoreMethod::Kind::cindex || method.kind == ScoreMethod::Kind::aucs;
    if (dataset_level) {
        RiskDataset d;
        d.horizon_s = method.risk_horizon.value_or(tau.tau);
        if (method.kind == ScoreMethod::Kind::cindex) d.censor_tau = tau.tau;
        for (const auto& r : records) {
            try {
                const auto f = record_distribution(r);
                d.cases.push_back({f.cdf(d.horizon_s), r.realization});
            } catch (const std::exception& e) {
                out.skipped.emplace_back(r.case_id, e.what());
            }
        }
        if (d.cases.empty()) {
            throw std::invalid_argument("score_dataset: no scorable records");
        }
        out.dataset_value =
            method.kind == ScoreMethod::Kind::cindex ? c_index(d) : auc_s(d);
        return out;
    }

    std::map<std::string, std::pair<double, std::size_t>> groups;
    std::vector<std::string> group_order;
    const QuadratureControl quad;
    for (const auto& r : records) {
        double score = 0.0;
        try {
            switch (method.kind) {
                case ScoreMethod::Kind::crps:
                    if (r.kind == PayloadKind::gamma) {
                        score = crps_gamma(GammaDist(r.payload[0], r.payload[1], r.payload[2]),
                                           r.realization);
                    } else {
                        score = crps(record_distribution(r), r.realization, quad);
                    }
                    break;
                case ScoreMethod::Kind::twcrps:
                    if (r.kind == PayloadKind::ensemble) {
                        score = twcrps_ensemble(r.payload, r.realization, tau.tau,
                                                method.fairness);
                    } else if (r.kind == PayloadKind::gamma) {
                        score = twcrps_gamma(GammaDist(r.payload[0], r.payload[1], r.payload[2]),
                                             r.realization, tau.tau);
                    } else {
                        score = twcrps(record_distribution(r), r.realization,
                                       WeightFunction::indicator_closed(tau.tau), quad);
                    }
                    break;
                case ScoreMethod::Kind::twlogs:
                    score = twlog_score(record_distribution(r), r.realization, tau.tau);
                    break;
                case ScoreMethod::Kind::twql:
                    if (r.payload.size() != 1) {
                        throw std::invalid_argument("twql needs a single-value payload");
                    }
                    score = tw_quantile_loss(method.alpha, tau.tau, r.payload[0], r.realization);
                    break;
                case ScoreMethod::Kind::twis:
                    if (r.payload.size() != 2) {
                        throw std::invalid_argument("twis needs a two-value payload");
                    }
                    score = tw_interval_score(method.alpha, tau.tau,
                                              IntervalForecast(r.payload[0], r.payload[1]),
                                              r.realization);
                    break;
                case ScoreMethod::Kind::survcrps:
                    score = surv_crps(record_distribution(r), r.realization, tau.tau, quad);
                    break;
                case ScoreMethod::Kind::lins:
                    score = lin_score(record_distribution(r), r.realization);
                    break;
                default:
                    throw std::invalid_argument("unreachable method");
            }
        } catch (const std::exception& e) {
            out.skipped.emplace_back(r.case_id, e.what());
            continue;
        }
        out.case_ids.push_back(r.case_id);
        out.per_record.scores.push_back(score);
        auto it = groups.find(r.group);
        if (it == groups.end()) {
            it = groups.emplace(r.group, std::make_pair(0.0, std::size_t{0})).first;
            group_order.push_back(r.group);
        }
        it->second.first += score;
        it->second.second += 1;
    }
    if (out.per_record.scores.empty()) {
        throw std::invalid_argument("score_dataset: no scorable records");
    }
    for (const auto& g : group_order) {
        const auto& [sum, count] = groups.at(g);
        out.group_keys.push_back(g);
        out.group_means.scores.push_back(sum / static_cast<double>(count));
    }
    return out;
}

}  // namespace censcore
