// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mfk/metrics.hpp"
#include "mfk/problems.hpp"
#include "mfk/tuning.hpp"

namespace mfk {

/// One benchmark request: which problem, which strategies, how many samples,
/// how many repeats.
///
/// When `record_time` is false the fit_time_s column is written as 0, which
/// makes the emitted report byte-reproducible for a fixed seed.
struct RunSpec {
    std::string problem;
    std::vector<Strategy> strategies = {Strategy::conventional, Strategy::hd};
    int n_lf = 0;      ///< 0 means 10 d
    int n_hf = 0;      ///< 0 means 5 d
    int repeats = 10;
    std::uint64_t seed = 0;
    int validation_count = 0;  ///< 0 means min(200 d, 5000)
    bool record_time = true;
    bool parallel = false;  ///< run repeats concurrently (never for timing runs)

    /// Optional fixed designs in original coordinates (empty: draw by LHS).
    Eigen::MatrixXd lf_sites;
    Eigen::MatrixXd hf_sites;

    TuningConfig tuning;  ///< budgets; strategy/seed fields are overridden per run

    void validate(const BiFidelityProblem& problem) const;
    int effective_n_lf(int d) const;
    int effective_n_hf(int d) const;
};

/// One fitted-and-scored repeat for one strategy.
struct BenchRow {
    std::string problem;
    Strategy strategy = Strategy::hd;
    int repeat = 0;  ///< 1-based
    std::uint64_t seed = 0;
    double fit_time_s = 0.0;
    MetricSet metrics;
    double beta_star = 0.0;
    long evals_lf = 0;
    long evals_hf = 0;
    bool failed = false;
    std::string error;

    // Extra detail carried into the JSON report.
    double lambda_star = std::numeric_limits<double>::quiet_NaN();
    double chi_star = std::numeric_limits<double>::quiet_NaN();
    Eigen::VectorXd omega;
    std::vector<StageRecord> lf_stages;
    std::vector<StageRecord> hf_stages;
};

/// Mean/STD of one metric over the non-failed rows of one strategy.
struct AggregateRow {
    std::string problem;
    std::string strategy;
    std::string metric;
    double mean = 0.0;
    double std_dev = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<AggregateRow> aggregates;
    int failed_count = 0;

    /// Fixed-header CSV; aggregate lines reuse the row columns with the
    /// repeat field set to "mean" / "std" and an empty seed field.
    std::string to_csv() const;

    /// Full detail including per-stage tuning logs.
    std::string to_json() const;

    /// Mean of one metric for one strategy (NaN if absent).
    double aggregate_mean(Strategy s, const std::string& metric) const;
};

/// Run the full protocol: per repeat draw paired LF/HF designs and a fresh
/// validation set, tune every requested strategy on the identical data, and
/// score the high-fidelity predictions.
BenchReport run_benchmark(const RunSpec& spec);

/// Load an external bi-fidelity dataset. Rows with non-finite entries are
/// dropped before normalization; `dropped` (if non-null) reports how many,
/// LF first.
std::pair<SampleSet, SampleSet> ingest_dataset(const std::string& lf_csv,
                                               const std::string& hf_csv, const Domain& domain,
                                               std::pair<int, int>* dropped = nullptr);

}  // namespace mfk
