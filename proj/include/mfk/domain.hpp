// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>

#include "mfk/errors.hpp"

namespace mfk {

/// Box-bounded design space [lower_i, upper_i] for i = 1..d.
struct Domain {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Domain() = default;
    Domain(Eigen::VectorXd lo, Eigen::VectorXd hi)
        : lower(std::move(lo)), upper(std::move(hi)) {
        validate();
    }

    /// Hypercube [lo, hi]^d.
    static Domain cube(int d, double lo, double hi) {
        return Domain(Eigen::VectorXd::Constant(d, lo), Eigen::VectorXd::Constant(d, hi));
    }

    int dimension() const { return static_cast<int>(lower.size()); }

    void validate() const {
        if (lower.size() != upper.size())
            throw InvalidDomainError("domain bound vectors differ in length");
        if (lower.size() < 1) throw InvalidDomainError("domain must have dimension >= 1");
        for (Eigen::Index i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
                throw InvalidDomainError("domain bounds must be finite");
            if (!(lower[i] < upper[i]))
                throw InvalidDomainError("domain requires lower < upper in every coordinate (coordinate " +
                                         std::to_string(i + 1) + ")");
        }
    }

    bool contains(const Eigen::VectorXd& x, double tol = 0.0) const {
        if (x.size() != lower.size()) return false;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
        return true;
    }

    /// Affine map onto the unit cube, (x - lower) / (upper - lower), rowwise.
    Eigen::MatrixXd to_unit(const Eigen::MatrixXd& points) const {
        Eigen::MatrixXd u = points;
        for (Eigen::Index j = 0; j < u.cols(); ++j)
            u.col(j) = (u.col(j).array() - lower[j]) / (upper[j] - lower[j]);
        return u;
    }

    /// Inverse of to_unit.
    Eigen::MatrixXd from_unit(const Eigen::MatrixXd& unit_points) const {
        Eigen::MatrixXd x = unit_points;
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            x.col(j) = lower[j] + x.col(j).array() * (upper[j] - lower[j]);
        return x;
    }
};

/// A set of sites in a domain, stored as an m x d matrix in original
/// (unnormalized) coordinates.
struct Design {
    Eigen::MatrixXd points;
    Domain domain;

    int count() const { return static_cast<int>(points.rows()); }
    int dimension() const { return static_cast<int>(points.cols()); }
};

}  // namespace mfk
