// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <Eigen/Dense>

#include "mfk/hier_kriging.hpp"
#include "mfk/kriging.hpp"
#include "mfk/optim.hpp"
#include "mfk/sample_set.hpp"

namespace mfk {

/// Which hyperparameter tuning strategy to run.
enum class Strategy { conventional, hd };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

/// Budgets and search bounds for both strategies.
///
/// Defaults follow the benchmark protocol: GA population 4d with 125
/// generations (500d likelihood calls per fidelity level), and 500-call
/// budgets for the scalar search and the local refinement.
struct TuningConfig {
    Strategy strategy = Strategy::hd;
    double theta_lo = kThetaMin;
    double theta_hi = kThetaMax;
    double scale_lo = 1e-4;
    double scale_hi = 1e2;
    int ga_population = 0;  ///< 0 means 4 * dimension
    int ga_generations = 125;
    int oned_budget = 500;
    int local_budget = 500;
    double ga_crossover_fraction = 0.8;
    double ga_migration_fraction = 0.2;
    std::uint64_t seed = 0;

    void validate() const;
};

/// A fitted model together with the tuning diagnostics the harness reports.
struct TuneResult {
    HkModel model;
    TuneTrace lf_trace;   ///< likelihood stages for the low-fidelity model
    TuneTrace hf_trace;   ///< likelihood stages for the high-fidelity layer
    double fit_time_s = 0.0;
    double lambda_star = std::numeric_limits<double>::quiet_NaN();
    double chi_star = std::numeric_limits<double>::quiet_NaN();
    Eigen::VectorXd omega;  ///< MIC screen result (hd strategy only)

    long evals_lf() const { return lf_trace.evaluations_used; }
    long evals_hf() const { return hf_trace.evaluations_used; }
    long likelihood_evals() const { return evals_lf() + evals_hf(); }
};

/// Conventional tuning: GA maximization of the concentrated log-likelihood
/// over the full hyperparameter space, once per fidelity level.
TuneResult tune_hkc(const SampleSet& lf_samples, const SampleSet& hf_samples,
                    const TuningConfig& config);

/// Scale-factor tuning: an MIC screen of the low-fidelity data seeds the
/// relationship theta_LF = lambda * omega; a scalar search over lambda
/// followed by a bounded local refinement replaces the full-dimensional
/// search. The high-fidelity layer reuses the pattern with
/// theta_HF = chi * theta_LF.
TuneResult tune_hkhd(const SampleSet& lf_samples, const SampleSet& hf_samples,
                     const TuningConfig& config);

/// Dispatch on config.strategy.
TuneResult tune(const SampleSet& lf_samples, const SampleSet& hf_samples,
                const TuningConfig& config);

}  // namespace mfk
