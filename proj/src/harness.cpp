// SPDX-License-Identifier: MIT
#include "mfk/harness.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "mfk/csv.hpp"
#include "mfk/errors.hpp"
#include "mfk/rng.hpp"
#include "mfk/sampling.hpp"

namespace mfk {

void RunSpec::validate(const BiFidelityProblem& p) const {
    const int d = p.d;
    const int lf = effective_n_lf(d);
    const int hf = effective_n_hf(d);
    if (!(lf >= hf && hf >= 2)) throw InputError("run spec requires n_lf >= n_hf >= 2");
    if (repeats < 1) throw InputError("run spec requires repeats >= 1");
    if (strategies.empty()) throw InputError("run spec requires at least one strategy");
    if (lf_sites.size() > 0 && lf_sites.cols() != d)
        throw InputError("fixed LF sites have the wrong dimension");
    if (hf_sites.size() > 0 && hf_sites.cols() != d)
        throw InputError("fixed HF sites have the wrong dimension");
}

int RunSpec::effective_n_lf(int d) const {
    if (lf_sites.size() > 0) return static_cast<int>(lf_sites.rows());
    return n_lf > 0 ? n_lf : 10 * d;
}

int RunSpec::effective_n_hf(int d) const {
    if (hf_sites.size() > 0) return static_cast<int>(hf_sites.rows());
    return n_hf > 0 ? n_hf : 5 * d;
}

namespace {

constexpr const char* kReportHeader =
    "problem,strategy,repeat,seed,fit_time_s,r2,rmse,mae,beta_star,evals_lf,evals_hf";

const std::vector<std::string>& aggregate_metrics() {
    static const std::vector<std::string> names = {"fit_time_s", "r2",       "rmse",    "mae",
                                                   "beta_star",  "evals_lf", "evals_hf"};
    return names;
}

double row_metric(const BenchRow& row, const std::string& name) {
    if (name == "fit_time_s") return row.fit_time_s;
    if (name == "r2") return row.metrics.r2;
    if (name == "rmse") return row.metrics.rmse;
    if (name == "mae") return row.metrics.mae;
    if (name == "beta_star") return row.beta_star;
    if (name == "evals_lf") return static_cast<double>(row.evals_lf);
    if (name == "evals_hf") return static_cast<double>(row.evals_hf);
    throw InputError("unknown metric " + name);
}

// One repeat for all strategies on shared data.
std::vector<BenchRow> run_repeat(const RunSpec& spec, const BiFidelityProblem& problem,
                                 int repeat_index) {
    const int d = problem.d;
    const std::uint64_t repeat_seed = sub_seed(spec.seed, static_cast<std::uint64_t>(repeat_index));

    Design lf_design, hf_design;
    if (spec.lf_sites.size() > 0) {
        lf_design.points = spec.lf_sites;
        lf_design.domain = problem.domain;
    } else {
        lf_design = lhs(spec.effective_n_lf(d), problem.domain, sub_seed(repeat_seed, 1));
    }
    if (spec.hf_sites.size() > 0) {
        hf_design.points = spec.hf_sites;
        hf_design.domain = problem.domain;
    } else {
        hf_design = lhs(spec.effective_n_hf(d), problem.domain, sub_seed(repeat_seed, 2));
    }

    Eigen::VectorXd y_lf(lf_design.count()), y_hf(hf_design.count());
    for (int i = 0; i < lf_design.count(); ++i)
        y_lf[i] = problem.f_lf(lf_design.points.row(i).transpose());
    for (int i = 0; i < hf_design.count(); ++i)
        y_hf[i] = problem.f_hf(hf_design.points.row(i).transpose());

    const SampleSet lf = SampleSet::from_design(lf_design, y_lf, Fidelity::low);
    const SampleSet hf = SampleSet::from_design(hf_design, y_hf, Fidelity::high);

    const int v_count =
        spec.validation_count > 0 ? spec.validation_count : default_validation_count(d);
    const auto [v_design, v_truth] = make_validation_set(problem, v_count, sub_seed(repeat_seed, 3));

    std::vector<BenchRow> rows;
    for (Strategy strategy : spec.strategies) {
        BenchRow row;
        row.problem = spec.problem;
        row.strategy = strategy;
        row.repeat = repeat_index;
        row.seed = repeat_seed;

        TuningConfig cfg = spec.tuning;
        cfg.strategy = strategy;
        cfg.seed = sub_seed(repeat_seed, 4);
        try {
            const TuneResult tuned = tune(lf, hf, cfg);
            row.fit_time_s = spec.record_time ? tuned.fit_time_s : 0.0;
            row.beta_star = tuned.model.beta_star();
            row.evals_lf = tuned.evals_lf();
            row.evals_hf = tuned.evals_hf();
            row.lambda_star = tuned.lambda_star;
            row.chi_star = tuned.chi_star;
            row.omega = tuned.omega;
            row.lf_stages = tuned.lf_trace.stage_log;
            row.hf_stages = tuned.hf_trace.stage_log;
            row.metrics = evaluate_metrics(v_truth, tuned.model.predict(v_design.points));
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string csv_cell(double v) { return format_g17(v); }

}  // namespace

BenchReport run_benchmark(const RunSpec& spec) {
    const BiFidelityProblem problem = get_problem(spec.problem);
    spec.validate(problem);

    BenchReport report;
    std::vector<std::vector<BenchRow>> per_repeat(static_cast<std::size_t>(spec.repeats));
    if (spec.parallel && spec.repeats > 1) {
        std::vector<std::future<std::vector<BenchRow>>> futures;
        futures.reserve(static_cast<std::size_t>(spec.repeats));
        for (int r = 1; r <= spec.repeats; ++r)
            futures.push_back(std::async(std::launch::async,
                                         [&spec, &problem, r] { return run_repeat(spec, problem, r); }));
        for (int r = 0; r < spec.repeats; ++r)
            per_repeat[static_cast<std::size_t>(r)] = futures[static_cast<std::size_t>(r)].get();
    } else {
        for (int r = 1; r <= spec.repeats; ++r)
            per_repeat[static_cast<std::size_t>(r - 1)] = run_repeat(spec, problem, r);
    }
    for (auto& rows : per_repeat)
        for (auto& row : rows) {
            if (row.failed) ++report.failed_count;
            report.rows.push_back(std::move(row));
        }

    for (Strategy strategy : spec.strategies) {
        std::vector<const BenchRow*> ok;
        for (const auto& row : report.rows)
            if (row.strategy == strategy && !row.failed) ok.push_back(&row);
        if (ok.empty()) continue;
        for (const auto& metric : aggregate_metrics()) {
            double mean = 0.0;
            for (const auto* row : ok) mean += row_metric(*row, metric);
            mean /= static_cast<double>(ok.size());
            double var = 0.0;
            for (const auto* row : ok) {
                const double dev = row_metric(*row, metric) - mean;
                var += dev * dev;
            }
            var /= static_cast<double>(ok.size());
            AggregateRow agg;
            agg.problem = spec.problem;
            agg.strategy = to_string(strategy);
            agg.metric = metric;
            agg.mean = mean;
            agg.std_dev = std::sqrt(var);
            report.aggregates.push_back(std::move(agg));
        }
    }
    return report;
}

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << kReportHeader << "\n";
    for (const auto& row : rows) {
        out << row.problem << "," << to_string(row.strategy) << "," << row.repeat << ","
            << row.seed << ",";
        if (row.failed) {
            out << "nan,nan,nan,nan,nan,0,0\n";
            continue;
        }
        out << csv_cell(row.fit_time_s) << "," << csv_cell(row.metrics.r2) << ","
            << csv_cell(row.metrics.rmse) << "," << csv_cell(row.metrics.mae) << ","
            << csv_cell(row.beta_star) << "," << row.evals_lf << "," << row.evals_hf << "\n";
    }

    // Wide aggregate lines: repeat column carries the statistic name.
    std::vector<std::pair<std::string, std::string>> groups;
    for (const auto& agg : aggregates) {
        const auto key = std::make_pair(agg.problem, agg.strategy);
        bool seen = false;
        for (const auto& g : groups) seen = seen || g == key;
        if (!seen) groups.push_back(key);
    }
    auto find = [&](const std::string& problem, const std::string& strategy,
                    const std::string& metric, bool want_std) {
        for (const auto& agg : aggregates)
            if (agg.problem == problem && agg.strategy == strategy && agg.metric == metric)
                return want_std ? agg.std_dev : agg.mean;
        return std::numeric_limits<double>::quiet_NaN();
    };
    for (const auto& [problem, strategy] : groups) {
        for (const bool want_std : {false, true}) {
            out << problem << "," << strategy << "," << (want_std ? "std" : "mean") << ",,";
            bool first = true;
            for (const auto& metric : aggregate_metrics()) {
                if (!first) out << ",";
                first = false;
                out << csv_cell(find(problem, strategy, metric, want_std));
            }
            out << "\n";
        }
    }
    return out.str();
}

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

nlohmann::json stages_to_json(const std::vector<StageRecord>& stages) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : stages) {
        nlohmann::json j;
        j["stage"] = s.stage;
        j["evals"] = s.evals;
        j["objective_before"] = finite_or_null(s.objective_before);
        j["objective_after"] = finite_or_null(s.objective_after);
        j["theta"] = std::vector<double>(s.theta.data(), s.theta.data() + s.theta.size());
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

std::string BenchReport::to_json() const {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r;
        r["problem"] = row.problem;
        r["strategy"] = to_string(row.strategy);
        r["repeat"] = row.repeat;
        r["seed"] = row.seed;
        r["failed"] = row.failed;
        if (row.failed) {
            r["error"] = row.error;
        } else {
            r["fit_time_s"] = row.fit_time_s;
            r["r2"] = finite_or_null(row.metrics.r2);
            r["rmse"] = row.metrics.rmse;
            r["mae"] = row.metrics.mae;
            r["n_validation"] = row.metrics.n_validation;
            r["beta_star"] = row.beta_star;
            r["evals_lf"] = row.evals_lf;
            r["evals_hf"] = row.evals_hf;
            r["lambda_star"] = finite_or_null(row.lambda_star);
            r["chi_star"] = finite_or_null(row.chi_star);
            r["omega"] = std::vector<double>(row.omega.data(), row.omega.data() + row.omega.size());
            r["lf_stages"] = stages_to_json(row.lf_stages);
            r["hf_stages"] = stages_to_json(row.hf_stages);
        }
        j["rows"].push_back(std::move(r));
    }
    j["aggregates"] = nlohmann::json::array();
    for (const auto& agg : aggregates) {
        nlohmann::json a;
        a["problem"] = agg.problem;
        a["strategy"] = agg.strategy;
        a["metric"] = agg.metric;
        a["mean"] = finite_or_null(agg.mean);
        a["std"] = finite_or_null(agg.std_dev);
        j["aggregates"].push_back(std::move(a));
    }
    j["failed_count"] = failed_count;
    return j.dump(2) + "\n";
}

double BenchReport::aggregate_mean(Strategy s, const std::string& metric) const {
    for (const auto& agg : aggregates)
        if (agg.strategy == to_string(s) && agg.metric == metric) return agg.mean;
    return std::numeric_limits<double>::quiet_NaN();
}

std::pair<SampleSet, SampleSet> ingest_dataset(const std::string& lf_csv,
                                               const std::string& hf_csv, const Domain& domain,
                                               std::pair<int, int>* dropped) {
    const DatasetCsv lf = read_dataset_csv(lf_csv);
    const DatasetCsv hf = read_dataset_csv(hf_csv);
    if (lf.dimension() != hf.dimension())
        throw DataFormatError("LF and HF datasets disagree on dimension");
    if (lf.count() < 2 || hf.count() < 2)
        throw DataFormatError("need at least 2 finite rows per fidelity");
    if (dropped) *dropped = {lf.dropped_rows, hf.dropped_rows};
    return {SampleSet::from_raw(lf.points, lf.responses, domain, Fidelity::low),
            SampleSet::from_raw(hf.points, hf.responses, domain, Fidelity::high)};
}

}  // namespace mfk
