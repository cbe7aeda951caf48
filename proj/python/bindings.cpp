// Python bindings for the main scoring operations, diagnostics, and the
// synthetic experiment.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "censcore/censoring.hpp"
#include "censcore/diagnostics.hpp"
#include "censcore/discrimination.hpp"
#include "censcore/inference.hpp"
#include "censcore/point_scoring.hpp"
#include "censcore/scoring_rules.hpp"
#include "censcore/synthetic.hpp"
#include "censcore/workbench.hpp"

namespace py = pybind11;
using namespace censcore;

namespace {

PredictiveDistribution dist_from_args(const py::object& spec) {
    // Accepts a GammaDist, a list of ensemble members, or a scalar point mass.
    if (py::isinstance<GammaDist>(spec)) {
        return PredictiveDistribution(spec.cast<GammaDist>());
    }
    if (py::isinstance<py::float_>(spec) || py::isinstance<py::int_>(spec)) {
        return PredictiveDistribution(PointMass{spec.cast<double>()});
    }
    return PredictiveDistribution(EmpiricalDist(spec.cast<std::vector<double>>()));
}

}  // namespace

PYBIND11_MODULE(_censcore, m) {
    m.doc() = "Evaluation of time-to-event forecasts under right-censoring";

    py::register_exception<convergence_error>(m, "ConvergenceError");

    py::class_<GammaDist>(m, "GammaDist")
        .def(py::init<double, double, double>(), py::arg("shape"), py::arg("rate"),
             py::arg("shift") = 0.0)
        .def_readonly("shape", &GammaDist::shape)
        .def_readonly("rate", &GammaDist::rate)
        .def_readonly("shift", &GammaDist::shift)
        .def("cdf", &GammaDist::cdf)
        .def("pdf", &GammaDist::pdf)
        .def("quantile", &GammaDist::quantile)
        .def("mean", &GammaDist::mean)
        .def(
            "sample",
            [](const GammaDist& g, std::uint64_t seed, std::size_t n) {
                RandomEngine rng(seed);
                return g.sample(rng, n);
            },
            py::arg("seed"), py::arg("n") = 1);

    m.def("ln_gamma", &ln_gamma);
    m.def("reg_lower_gamma", &reg_lower_gamma);
    m.def("beta_fn", &beta_fn);
    m.def(
        "lower_incomplete_2f1",
        [](double a, double tau, double b, double c, double z, double rel_tol,
           std::size_t max_terms) {
            return lower_incomplete_2f1(a, tau, b, c, z, SeriesControl{rel_tol, max_terms});
        },
        py::arg("a"), py::arg("tau"), py::arg("b"), py::arg("c"), py::arg("z"),
        py::arg("rel_tol") = 1e-12, py::arg("max_terms") = 10000);

    m.def("censor", [](double tau, double t) { return censor_scalar(CensorHorizon(tau), t); });

    m.def(
        "crps", [](const py::object& f, double t) { return crps(dist_from_args(f), t); },
        py::arg("forecast"), py::arg("t"));
    m.def("crps_gamma", &crps_gamma, py::arg("dist"), py::arg("t"));
    m.def(
        "twcrps",
        [](const py::object& f, double t, double tau) {
            return twcrps(dist_from_args(f), t, WeightFunction::indicator_closed(tau));
        },
        py::arg("forecast"), py::arg("t"), py::arg("tau"));
    m.def(
        "twcrps_gamma",
        [](const GammaDist& d, double t, double tau) { return twcrps_gamma(d, t, tau); },
        py::arg("dist"), py::arg("t"), py::arg("tau"));
    m.def(
        "twcrps_ensemble",
        [](const std::vector<double>& members, double t, double tau, const std::string& mode) {
            return twcrps_ensemble(members, t, tau,
                                   mode == "fair" ? EnsembleFairness::fair
                                                  : EnsembleFairness::empirical);
        },
        py::arg("members"), py::arg("t"), py::arg("tau"), py::arg("fairness") = "empirical");
    m.def(
        "log_score", [](const GammaDist& d, double t) {
            return log_score(PredictiveDistribution(d), t);
        });
    m.def(
        "lin_score", [](const GammaDist& d, double t) {
            return lin_score(PredictiveDistribution(d), t);
        });
    m.def(
        "surv_crps",
        [](const py::object& f, double t, double tau) {
            return surv_crps(dist_from_args(f), t, tau);
        },
        py::arg("forecast"), py::arg("t"), py::arg("tau"));
    m.def(
        "twlog_score",
        [](const GammaDist& d, double t, double tau) {
            return twlog_score(PredictiveDistribution(d), t, tau);
        },
        py::arg("dist"), py::arg("t"), py::arg("tau"));

    m.def("quantile_loss", &quantile_loss, py::arg("alpha"), py::arg("x"), py::arg("t"));
    m.def("tw_quantile_loss", &tw_quantile_loss, py::arg("alpha"), py::arg("tau"), py::arg("x"),
          py::arg("t"));
    m.def(
        "interval_score",
        [](double alpha, double lo, double hi, double t) {
            return interval_score(alpha, IntervalForecast(lo, hi), t);
        },
        py::arg("alpha"), py::arg("lower"), py::arg("upper"), py::arg("t"));
    m.def(
        "tw_interval_score",
        [](double alpha, double tau, double lo, double hi, double t) {
            return tw_interval_score(alpha, tau, IntervalForecast(lo, hi), t);
        },
        py::arg("alpha"), py::arg("tau"), py::arg("lower"), py::arg("upper"), py::arg("t"));
    m.def("elementary_score", &elementary_score, py::arg("alpha"), py::arg("theta"),
          py::arg("x"), py::arg("t"));

    m.def(
        "c_index",
        [](const std::vector<std::pair<double, double>>& cases, double tau) {
            RiskDataset d;
            for (const auto& [p, t] : cases) d.cases.push_back({p, t});
            d.censor_tau = tau;
            return c_index(d);
        },
        py::arg("cases"), py::arg("tau") = std::numeric_limits<double>::infinity());
    m.def(
        "auc_s",
        [](const std::vector<std::pair<double, double>>& cases, double s) {
            RiskDataset d;
            for (const auto& [p, t] : cases) d.cases.push_back({p, t});
            d.horizon_s = s;
            return auc_s(d);
        },
        py::arg("cases"), py::arg("s"));

    m.def(
        "dm_test",
        [](const std::vector<double>& a, const std::vector<double>& b,
           std::optional<int> lag, const std::string& sided) {
            const auto r = dm_test(ScoreSeries{"a", a}, ScoreSeries{"b", b}, lag,
                                   sided == "one" ? TestSided::one : TestSided::two);
            return py::make_tuple(r.statistic, r.p_value, r.lag_used);
        },
        py::arg("a"), py::arg("b"), py::arg("lag") = std::nullopt, py::arg("sided") = "two");

    m.def(
        "isotonic_quantile_fit",
        [](const std::vector<std::pair<double, double>>& pairs, double alpha) {
            QuantilePairs qp;
            qp.pairs = pairs;
            qp.alpha = alpha;
            const auto fit = isotonic_quantile_fit(qp);
            return py::make_tuple(fit.knots, fit.fitted);
        },
        py::arg("pairs"), py::arg("alpha"));
    m.def(
        "recalibrate",
        [](const std::vector<std::pair<double, double>>& pairs, double alpha_lo,
           double alpha_hi, double x) {
            QuantilePairs lo{pairs, alpha_lo}, hi{pairs, alpha_hi};
            const auto iv = recalibrate(isotonic_quantile_fit(lo), isotonic_quantile_fit(hi), x);
            return py::make_tuple(iv.lower, iv.upper);
        },
        py::arg("pairs"), py::arg("alpha_lo"), py::arg("alpha_hi"), py::arg("x"));

    m.def(
        "murphy_curve",
        [](const std::vector<std::pair<double, double>>& pairs, double alpha,
           const std::vector<double>& grid) {
            QuantilePairs qp{pairs, alpha};
            const auto c = murphy_curve(qp, grid);
            std::vector<std::pair<double, double>> out;
            for (const auto& p : c.points) out.emplace_back(p.x, p.y);
            return out;
        },
        py::arg("pairs"), py::arg("alpha"), py::arg("grid"));

    m.def(
        "first_passage",
        [](const std::vector<std::pair<double, double>>& samples, double threshold,
           double horizon) {
            const auto r = first_passage(samples, EventSpec{threshold, horizon});
            return py::make_tuple(r.value, r.was_censored);
        },
        py::arg("samples"), py::arg("threshold"), py::arg("horizon"));

    m.def(
        "run_experiment_tables",
        [](std::size_t n, std::uint64_t seed, const std::vector<double>& taus) {
            const auto bundle = run_experiment_tables(n, seed, taus);
            py::dict rows;
            for (const auto& row : bundle.rows) {
                py::dict means;
                for (std::size_t fi = 0; fi < 5; ++fi) {
                    means[forecaster_name(kAllForecasters[fi])] = row.means[fi];
                }
                rows[row.method.c_str()] = means;
            }
            py::dict out;
            out["rows"] = rows;
            out["twlogs2_z"] = bundle.twlogs2_z;
            out["logs_infinite_count"] = bundle.logs_infinite_count;
            return out;
        },
        py::arg("n") = 10000, py::arg("seed") = 1,
        py::arg("taus") = std::vector<double>{6.0, 12.0});
}
