// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

#include "mfk/domain.hpp"

namespace mfk {

/// Latin hypercube design of m points over `domain`.
///
/// Random-permutation LHS: per dimension the m strata are visited in a random
/// order and each point is jittered uniformly inside its stratum. No design
/// optimization is performed. Deterministic for a fixed seed.
Design lhs(int m, const Domain& domain, std::uint64_t seed);

/// Map design points onto the unit cube.
Eigen::MatrixXd scale_to_unit(const Design& design);

}  // namespace mfk
