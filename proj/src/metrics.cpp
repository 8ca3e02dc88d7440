// SPDX-License-Identifier: MIT
#include "mfk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfk/errors.hpp"

namespace mfk {

MetricSet evaluate_metrics(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
    if (y_true.size() != y_pred.size())
        throw InputError("evaluate_metrics: length mismatch");
    const auto n = y_true.size();
    if (n < 2) throw InputError("evaluate_metrics: need at least 2 points");
    if (!y_true.allFinite() || !y_pred.allFinite())
        throw InputError("evaluate_metrics: non-finite values");

    const Eigen::VectorXd err = y_true - y_pred;
    MetricSet out;
    out.n_validation = static_cast<int>(n);
    out.rmse = std::sqrt(err.squaredNorm() / static_cast<double>(n));
    out.mae = err.cwiseAbs().maxCoeff();

    const double mean = y_true.mean();
    const double total = (y_true.array() - mean).matrix().squaredNorm();
    out.r2 = total > 0.0 ? 1.0 - err.squaredNorm() / total
                         : std::numeric_limits<double>::quiet_NaN();
    return out;
}

int default_validation_count(int d) { return std::min(200 * d, 5000); }

std::pair<Design, Eigen::VectorXd> make_validation_set(const BiFidelityProblem& problem, int count,
                                                       std::uint64_t seed) {
    Design design = lhs(count, problem.domain, seed);
    Eigen::VectorXd y(count);
    for (int i = 0; i < count; ++i) y[i] = problem.f_hf(design.points.row(i).transpose());
    return {std::move(design), std::move(y)};
}

}  // namespace mfk
