// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mfk/domain.hpp"

namespace mfk {

/// An analytic test function with two fidelity levels on a shared domain.
struct BiFidelityProblem {
    std::string id;
    int d = 0;
    Domain domain;
    std::function<double(const Eigen::VectorXd&)> f_hf;
    std::function<double(const Eigen::VectorXd&)> f_lf;

    double eval(const Eigen::VectorXd& x, bool high) const { return high ? f_hf(x) : f_lf(x); }
};

/// Look up a problem by id (no1 ... no9, forrester).
/// Throws InputError for an unknown id.
BiFidelityProblem get_problem(const std::string& id);

/// All registered problem ids in catalog order.
std::vector<std::string> problem_ids();

}  // namespace mfk
