// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "mfk/errors.hpp"

namespace mfk {

inline constexpr double kSqrt5 = 2.2360679774997896964091736687313;

/// Matérn 5/2 correlation between two sites,
///   (1 + sqrt(5) a + 5 a^2 / 3) exp(-sqrt(5) a),
/// with a = sqrt(sum_i theta_i (x_i - x'_i)^2). theta holds one positive
/// activity parameter per coordinate; sites are expected on the unit cube.
inline double matern52(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                       const Eigen::VectorXd& theta) {
    if (x.size() != theta.size() || x2.size() != theta.size())
        throw InputError("matern52: site/theta length mismatch");
    double a2 = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double dx = x[i] - x2[i];
        a2 += theta[i] * dx * dx;
    }
    if (!std::isfinite(a2)) throw InputError("matern52: non-finite input");
    const double a = std::sqrt(a2);
    return (1.0 + kSqrt5 * a + (5.0 / 3.0) * a2) * std::exp(-kSqrt5 * a);
}

/// m x m Matérn 5/2 correlation matrix of a site set (rows = sites).
inline Eigen::MatrixXd corr_matrix(const Eigen::MatrixXd& sites, const Eigen::VectorXd& theta) {
    const Eigen::Index m = sites.rows();
    Eigen::MatrixXd r(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        r(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < m; ++j) {
            double a2 = 0.0;
            for (Eigen::Index k = 0; k < sites.cols(); ++k) {
                const double dx = sites(i, k) - sites(j, k);
                a2 += theta[k] * dx * dx;
            }
            const double a = std::sqrt(a2);
            const double v = (1.0 + kSqrt5 * a + (5.0 / 3.0) * a2) * std::exp(-kSqrt5 * a);
            r(i, j) = v;
            r(j, i) = v;
        }
    }
    return r;
}

/// Correlation vector between one query site and every row of `sites`.
inline Eigen::VectorXd corr_vector(const Eigen::MatrixXd& sites, const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& x) {
    if (x.size() != sites.cols()) throw InputError("corr_vector: dimension mismatch");
    Eigen::VectorXd r(sites.rows());
    for (Eigen::Index i = 0; i < sites.rows(); ++i) {
        double a2 = 0.0;
        for (Eigen::Index k = 0; k < sites.cols(); ++k) {
            const double dx = sites(i, k) - x[k];
            a2 += theta[k] * dx * dx;
        }
        const double a = std::sqrt(a2);
        r[i] = (1.0 + kSqrt5 * a + (5.0 / 3.0) * a2) * std::exp(-kSqrt5 * a);
    }
    return r;
}

}  // namespace mfk
