// censcore command-line interface: synthetic-experiment tables, dataset
// scoring, diagnostic curves, reliability recalibration, significance tests,
// and first-passage extraction, all over the CSV formats of the workbench.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "censcore/diagnostics.hpp"
#include "censcore/errors.hpp"
#include "censcore/format.hpp"
#include "censcore/synthetic.hpp"
#include "censcore/workbench.hpp"

namespace {

using namespace censcore;

// Writes to the path, or stdout for "-" / empty.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    return f;
}

std::vector<ForecastRecord> load_records(const std::string& path) {
    auto f = open_input(path);
    return read_records_csv(f);
}

// Two-column CSV of label,score rows (the per-record or group-mean output of
// `score`); header line is required and skipped.
ScoreSeries load_score_series(const std::string& path) {
    auto f = open_input(path);
    std::string line;
    if (!std::getline(f, line)) throw std::invalid_argument("empty score file: " + path);
    ScoreSeries s;
    s.label = path;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto pos = line.rfind(',');
        if (pos == std::string::npos) {
            throw std::invalid_argument("score file row needs two columns: " + line);
        }
        s.scores.push_back(std::stod(line.substr(pos + 1)));
    }
    return s;
}

std::vector<double> quantile_payload_values(const std::vector<ForecastRecord>& records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        if (r.kind != PayloadKind::quantile || r.payload.size() != 1) {
            throw std::invalid_argument("record " + r.case_id +
                                        ": expected a single-value quantile payload");
        }
        out.push_back(r.payload[0]);
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Evaluation of time-to-event forecasts under right-censoring"};
    app.require_subcommand(1);
    if (const char* cfg = std::getenv("CENSCORE_CONFIG")) {
        app.set_config("--config", cfg, "key=value configuration file", true);
    } else {
        app.set_config("--config", "", "key=value configuration file");
    }

    // synth
    auto* synth = app.add_subcommand("synth", "Run the five-forecaster synthetic experiment");
    std::size_t synth_n = 10000;
    std::uint64_t synth_seed = 1;
    std::vector<double> synth_taus{6.0, 12.0};
    std::string synth_out;
    bool synth_json = false;
    synth->add_option("--n", synth_n, "number of forecast cases");
    synth->add_option("--seed", synth_seed, "random seed");
    synth->add_option("--taus", synth_taus, "censoring times for threshold-weighted rows")
        ->delimiter(',');
    synth->add_option("--output,-o", synth_out, "output path (default stdout)");
    std::string synth_pairwise;
    synth->add_option("--pairwise", synth_pairwise,
                      "also write per-method pairwise one-sided p-values to this CSV");
    synth->add_flag("--json", synth_json, "emit JSON instead of CSV");

    // score
    auto* score = app.add_subcommand("score", "Score a records CSV with one method");
    std::string score_method = "twcrps";
    double score_tau = 6.0;
    double score_alpha = 0.9;
    std::optional<double> score_s;
    std::string score_fairness = "empirical";
    std::string score_input;
    std::string score_out;
    bool score_group_by = false;
    bool score_json = false;
    score->add_option("--method", score_method,
                      "crps|twcrps|twlogs|twql|twis|survcrps|lins|cindex|aucs");
    score->add_option("--tau", score_tau, "censoring horizon");
    score->add_option("--alpha", score_alpha, "quantile level (twql) or interval alpha (twis)");
    score->add_option("--s", score_s, "risk horizon for cindex/aucs (default: tau)");
    score->add_option("--fairness", score_fairness, "ensemble twcrps estimator: fair|empirical");
    score->add_option("--input", score_input, "records CSV")->required();
    score->add_flag("--group-by", score_group_by, "emit group means keyed on the group column");
    score->add_option("--output,-o", score_out, "output path (default stdout)");
    score->add_flag("--json", score_json, "emit summary as JSON");

    // murphy
    auto* murphy = app.add_subcommand("murphy", "Murphy diagram from quantile-payload records");
    double murphy_alpha = 0.9;
    double murphy_tau = 6.0;
    std::string murphy_input, murphy_out, murphy_label = "murphy";
    std::size_t murphy_fill = 200;
    murphy->add_option("--alpha", murphy_alpha, "quantile level");
    murphy->add_option("--tau", murphy_tau, "decision-threshold range [0, tau]");
    murphy->add_option("--input", murphy_input, "records CSV")->required();
    murphy->add_option("--label", murphy_label, "curve label");
    murphy->add_option("--grid-fill", murphy_fill, "evenly spaced fill points");
    murphy->add_option("--output,-o", murphy_out, "output path (default stdout)");
    std::string murphy_svg;
    murphy->add_option("--svg", murphy_svg, "also render the curve to this SVG file");

    // brier-curve
    auto* brier = app.add_subcommand("brier-curve", "Brier decomposition curve of the CRPS");
    double brier_tau = 6.0;
    std::string brier_input, brier_out, brier_label = "brier";
    std::size_t brier_fill = 200;
    brier->add_option("--tau", brier_tau, "threshold range [0, tau]");
    brier->add_option("--input", brier_input, "records CSV")->required();
    brier->add_option("--label", brier_label, "curve label");
    brier->add_option("--grid-fill", brier_fill, "evenly spaced fill points");
    brier->add_option("--output,-o", brier_out, "output path (default stdout)");
    std::string brier_svg;
    brier->add_option("--svg", brier_svg, "also render the curve to this SVG file");

    // reliability
    auto* rel = app.add_subcommand(
        "reliability", "Quantile reliability curves via isotonic regression, and recalibration");
    double rel_lo = 0.25, rel_hi = 0.75;
    std::string rel_train, rel_apply, rel_out;
    rel->add_option("--alpha-lo", rel_lo, "lower quantile level");
    rel->add_option("--alpha-hi", rel_hi, "upper quantile level");
    rel->add_option("--train", rel_train, "training records CSV (quantile payloads)")->required();
    rel->add_option("--apply", rel_apply,
                    "records CSV to recalibrate into intervals (omit to emit the curves)");
    double rel_dummy = 1000.0;
    rel->add_option("--dummy", rel_dummy,
                    "training target substituted for censored realizations (beyond any horizon)");
    rel->add_option("--output,-o", rel_out, "output path (default stdout)");
    std::string rel_svg;
    rel->add_option("--svg", rel_svg, "also render the curves to this SVG file");

    // dm-test
    auto* dm = app.add_subcommand("dm-test", "Diebold-Mariano test on two score series");
    std::string dm_a, dm_b, dm_lag = "auto", dm_sided = "one", dm_out;
    bool dm_json = false;
    dm->add_option("--a", dm_a, "score CSV for method A")->required();
    dm->add_option("--b", dm_b, "score CSV for method B")->required();
    dm->add_option("--lag", dm_lag, "rectangular truncation lag, or 'auto' = ceil(n^(1/3))");
    dm->add_option("--sided", dm_sided, "one|two");
    dm->add_option("--output,-o", dm_out, "output path (default stdout)");
    dm->add_flag("--json", dm_json, "emit summary as JSON");

    // first-passage
    auto* fp = app.add_subcommand("first-passage",
                                  "Extract first passage times from ensemble time series");
    double fp_threshold = 0.0, fp_horizon = 168.0;
    std::string fp_input, fp_obs, fp_out, fp_group = "all", fp_kind = "ensemble";
    double fp_dummy = 1000.0;
    fp->add_option("--threshold", fp_threshold, "event threshold h")->required();
    fp->add_option("--horizon", fp_horizon, "prediction horizon tau");
    fp->add_option("--input", fp_input, "ensemble long CSV (forecast members)")->required();
    fp->add_option("--obs", fp_obs, "ensemble long CSV with the observed series")->required();
    fp->add_option("--group", fp_group, "group key written to the records");
    std::string fp_group_delim;
    fp->add_option("--group-from-id", fp_group_delim,
                   "derive the group as the case id prefix before this delimiter");
    fp->add_option("--kind", fp_kind,
                   "payload kind to write: ensemble, or quantile (single member per case)");
    fp->add_option("--dummy", fp_dummy, "export value for censored forecast members (> tau)");
    fp->add_option("--output,-o", fp_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (synth->parsed()) {
        const auto bundle = run_experiment_tables(synth_n, synth_seed, synth_taus);
        OutputTarget out(synth_out);
        if (synth_json) {
            write_table_json(out.stream(), bundle);
        } else {
            write_table_csv(out.stream(), bundle);
        }
        if (!synth_pairwise.empty()) {
            OutputTarget pw(synth_pairwise);
            write_pairwise_csv(pw.stream(), bundle);
        }
        return 0;
    }

    if (score->parsed()) {
        ScoreMethod method;
        method.kind = parse_score_method(score_method);
        method.alpha = score_alpha;
        method.risk_horizon = score_s;
        if (score_fairness == "fair") {
            method.fairness = EnsembleFairness::fair;
        } else if (score_fairness == "empirical") {
            method.fairness = EnsembleFairness::empirical;
        } else {
            throw std::invalid_argument("--fairness must be fair or empirical");
        }
        const auto records = load_records(score_input);
        const auto result = score_dataset(records, method, CensorHorizon(score_tau));
        for (const auto& [id, reason] : result.skipped) {
            std::cerr << "skipped " << id << ": " << reason << '\n';
        }
        OutputTarget out(score_out);
        if (result.dataset_value) {
            if (score_json) {
                nlohmann::json j{{"method", score_method}, {"value", *result.dataset_value},
                                 {"skipped", result.skipped.size()}};
                out.stream() << j.dump(2) << '\n';
            } else {
                out.stream() << "method,value\n"
                             << score_method << ',' << format_g17(*result.dataset_value) << '\n';
            }
            return 0;
        }
        if (score_json) {
            nlohmann::json j{{"method", score_method},
                             {"mean", result.per_record.mean()},
                             {"n", result.per_record.scores.size()},
                             {"skipped", result.skipped.size()}};
            out.stream() << j.dump(2) << '\n';
            return 0;
        }
        if (score_group_by) {
            out.stream() << "group,mean_score\n";
            for (std::size_t i = 0; i < result.group_keys.size(); ++i) {
                out.stream() << result.group_keys[i] << ','
                             << format_g17(result.group_means.scores[i]) << '\n';
            }
        } else {
            out.stream() << "case_id,score\n";
            for (std::size_t i = 0; i < result.case_ids.size(); ++i) {
                out.stream() << result.case_ids[i] << ','
                             << format_g17(result.per_record.scores[i]) << '\n';
            }
        }
        return 0;
    }

    if (murphy->parsed()) {
        const auto records = load_records(murphy_input);
        QuantilePairs pairs;
        pairs.alpha = murphy_alpha;
        const CensorHorizon h(murphy_tau);
        const auto xs = quantile_payload_values(records);
        for (std::size_t i = 0; i < records.size(); ++i) {
            pairs.pairs.emplace_back(censor_scalar(h, xs[i]),
                                     censor_scalar(h, records[i].realization));
        }
        std::vector<double> data;
        for (const auto& [x, t] : pairs.pairs) {
            data.push_back(x);
            data.push_back(t);
        }
        const auto grid = default_threshold_grid(data, murphy_tau, murphy_fill);
        const auto curve = murphy_curve(pairs, grid, murphy_label);
        OutputTarget out(murphy_out);
        write_curves_csv(out.stream(), {curve});
        if (!murphy_svg.empty()) {
            OutputTarget svg(murphy_svg);
            write_curves_svg(svg.stream(), {curve});
        }
        return 0;
    }

    if (brier->parsed()) {
        const auto records = load_records(brier_input);
        std::vector<std::pair<PredictiveDistribution, double>> cases;
        std::vector<double> data;
        const CensorHorizon h(brier_tau);
        for (const auto& r : records) {
            if (r.kind == PayloadKind::interval) {
                throw std::invalid_argument("brier-curve: interval payloads have no CDF");
            }
            if (r.kind == PayloadKind::ensemble) {
                cases.emplace_back(PredictiveDistribution(EmpiricalDist(r.payload)),
                                   r.realization);
            } else if (r.kind == PayloadKind::quantile) {
                cases.emplace_back(PredictiveDistribution(PointMass{r.payload[0]}),
                                   r.realization);
            } else {
                cases.emplace_back(
                    PredictiveDistribution(GammaDist(r.payload[0], r.payload[1], r.payload[2])),
                    r.realization);
            }
            data.push_back(censor_scalar(h, r.realization));
        }
        const auto grid = default_threshold_grid(data, brier_tau, brier_fill);
        const auto curve = brier_curve(cases, grid, brier_label);
        OutputTarget out(brier_out);
        write_curves_csv(out.stream(), {curve});
        if (!brier_svg.empty()) {
            OutputTarget svg(brier_svg);
            write_curves_svg(svg.stream(), {curve});
        }
        return 0;
    }

    if (rel->parsed()) {
        const auto train = load_records(rel_train);
        QuantilePairs lo_pairs, hi_pairs;
        lo_pairs.alpha = rel_lo;
        hi_pairs.alpha = rel_hi;
        const auto xs = quantile_payload_values(train);
        for (std::size_t i = 0; i < train.size(); ++i) {
            // events that never materialized train against the dummy target;
            // sub-horizon fits and censored scores are invariant to its value
            const double target = train[i].censored ? rel_dummy : train[i].realization;
            lo_pairs.pairs.emplace_back(xs[i], target);
            hi_pairs.pairs.emplace_back(xs[i], target);
        }
        const auto lo_fit = isotonic_quantile_fit(lo_pairs);
        const auto hi_fit = isotonic_quantile_fit(hi_pairs);
        OutputTarget out(rel_out);
        if (!rel_svg.empty()) {
            OutputTarget svg(rel_svg);
            write_curves_svg(svg.stream(), {lo_fit.as_curve("q" + format_g17(rel_lo)),
                                            hi_fit.as_curve("q" + format_g17(rel_hi))});
        }
        if (rel_apply.empty()) {
            write_curves_csv(out.stream(),
                             {lo_fit.as_curve("q" + format_g17(rel_lo)),
                              hi_fit.as_curve("q" + format_g17(rel_hi))});
            return 0;
        }
        auto apply = load_records(rel_apply);
        const auto apply_xs = quantile_payload_values(apply);
        for (std::size_t i = 0; i < apply.size(); ++i) {
            const auto iv = recalibrate(lo_fit, hi_fit, apply_xs[i]);
            apply[i].kind = PayloadKind::interval;
            apply[i].payload = {iv.lower, iv.upper};
        }
        write_records_csv(out.stream(), apply);
        return 0;
    }

    if (dm->parsed()) {
        const auto a = load_score_series(dm_a);
        const auto b = load_score_series(dm_b);
        std::optional<int> lag;
        if (dm_lag != "auto") lag = std::stoi(dm_lag);
        TestSided sided;
        if (dm_sided == "one") {
            sided = TestSided::one;
        } else if (dm_sided == "two") {
            sided = TestSided::two;
        } else {
            throw std::invalid_argument("--sided must be one or two");
        }
        const auto r = dm_test(a, b, lag, sided);
        OutputTarget out(dm_out);
        if (dm_json) {
            nlohmann::json j{{"statistic", r.statistic},
                             {"p_value", r.p_value},
                             {"lag", r.lag_used},
                             {"lag_fallback", r.lag_fallback},
                             {"n", a.scores.size()},
                             {"sided", dm_sided}};
            out.stream() << j.dump(2) << '\n';
        } else {
            out.stream() << "statistic,p_value,lag,n\n"
                         << format_g17(r.statistic) << ',' << format_g17(r.p_value) << ','
                         << r.lag_used << ',' << a.scores.size() << '\n';
        }
        return 0;
    }

    if (fp->parsed()) {
        const EventSpec spec{fp_threshold, fp_horizon};
        auto fin = open_input(fp_input);
        const auto members = read_ensemble_csv(fin);
        auto fobs = open_input(fp_obs);
        const auto obs = read_ensemble_csv(fobs);

        std::map<std::string, CensoredTime> realized;
        for (const auto& o : obs) {
            realized.emplace(o.case_id, first_passage(o.samples, spec));
        }
        std::vector<std::string> case_order;
        std::map<std::string, std::vector<double>> payloads;
        for (const auto& m : members) {
            auto it = payloads.find(m.case_id);
            if (it == payloads.end()) {
                it = payloads.emplace(m.case_id, std::vector<double>{}).first;
                case_order.push_back(m.case_id);
            }
            const auto t = first_passage(m.samples, spec);
            it->second.push_back(t.was_censored ? fp_dummy : t.value);
        }
        std::vector<ForecastRecord> records;
        for (const auto& id : case_order) {
            const auto obs_it = realized.find(id);
            if (obs_it == realized.end()) {
                throw std::invalid_argument("first-passage: no observed series for case " + id);
            }
            ForecastRecord r;
            r.case_id = id;
            r.group = fp_group;
            if (!fp_group_delim.empty()) {
                const auto pos = id.find(fp_group_delim);
                if (pos != std::string::npos) r.group = id.substr(0, pos);
            }
            const auto& payload = payloads.at(id);
            if (fp_kind == "quantile") {
                if (payload.size() != 1) {
                    throw std::invalid_argument(
                        "first-passage --kind quantile needs exactly one member per case");
                }
                r.kind = PayloadKind::quantile;
            } else if (fp_kind == "ensemble") {
                r.kind = PayloadKind::ensemble;
            } else {
                throw std::invalid_argument("--kind must be ensemble or quantile");
            }
            r.payload = payload;
            r.realization = obs_it->second.value;
            r.censored = obs_it->second.was_censored;
            records.push_back(std::move(r));
        }
        OutputTarget out(fp_out);
        write_records_csv(out.stream(), records);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        return 2;
    } catch (const censcore::convergence_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
