// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "mfk/problems.hpp"
#include "mfk/sampling.hpp"

namespace mfk {

/// Accuracy metrics over a validation set, in original response units.
/// mae is the MAXIMUM absolute error (a local accuracy measure), not the
/// mean absolute error.
struct MetricSet {
    double r2 = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    int n_validation = 0;
};

/// R^2, RMSE, and maximum absolute error of predictions against truth.
/// Throws InputError on length mismatch or fewer than 2 points; a constant
/// y_true leaves r2 as NaN (RMSE and MAE are still meaningful).
MetricSet evaluate_metrics(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Default validation size: 200 d capped at 5000.
int default_validation_count(int d);

/// An LHS validation design plus exact high-fidelity responses.
std::pair<Design, Eigen::VectorXd> make_validation_set(const BiFidelityProblem& problem, int count,
                                                       std::uint64_t seed);

}  // namespace mfk
