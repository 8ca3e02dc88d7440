// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mfk {

using Objective = std::function<double(const Eigen::VectorXd&)>;
using ScalarObjective = std::function<double(double)>;

/// One optimization stage of a tuning run, for observability.
struct StageRecord {
    std::string stage;
    long evals = 0;
    double objective_before = 0.0;
    double objective_after = 0.0;
    Eigen::VectorXd theta;
};

struct TuneTrace {
    long evaluations_used = 0;
    double best_objective = 0.0;
    std::vector<StageRecord> stage_log;
};

struct GaOptions {
    int population = 0;   // 4d when driven by the tuner
    int generations = 125;
    double crossover_fraction = 0.8;
    double migration_fraction = 0.2;
    double mutation_sigma = 0.1;  // in box units (decades for log10-theta)
};

/// Genetic-algorithm maximization over the box [lo, hi]^d.
///
/// Tournament selection (size 2), per-gene blend crossover, Gaussian mutation,
/// one elite, and random-immigrant migration. Every generation evaluates the
/// whole population, so the budget is exactly population x generations calls.
/// Deterministic for a fixed seed. Evaluations may return -inf (infeasible);
/// if nothing finite is ever seen a TuningFailedError is thrown.
std::pair<Eigen::VectorXd, TuneTrace> ga_maximize(const Objective& objective,
                                                  const Eigen::VectorXd& lo,
                                                  const Eigen::VectorXd& hi,
                                                  const GaOptions& options, std::uint64_t seed);

struct OnedResult {
    double s_star = 0.0;
    double objective = 0.0;
    long evals = 0;
};

/// Bounded scalar maximization of objective(s) over [lo, hi], searched in
/// log10 space. The log-interval is split into three equal parts and a
/// golden-section/parabolic (Brent) search runs on each with a third of the
/// budget; the best point wins. Never exceeds `budget` evaluations.
OnedResult oned_maximize(const ScalarObjective& objective, double lo, double hi, int budget);

/// Bound-clipped Nelder-Mead ascent from `start`. Returns the best point
/// ever evaluated, so the result never scores below the start. Coordinates
/// move independently. At most `budget` evaluations.
std::pair<Eigen::VectorXd, TuneTrace> local_refine(const Objective& objective,
                                                   const Eigen::VectorXd& start,
                                                   const Eigen::VectorXd& lo,
                                                   const Eigen::VectorXd& hi, int budget);

}  // namespace mfk
