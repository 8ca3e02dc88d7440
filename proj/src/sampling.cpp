// SPDX-License-Identifier: MIT
#include "mfk/sampling.hpp"

#include <numeric>
#include <vector>

#include "mfk/rng.hpp"

namespace mfk {

Design lhs(int m, const Domain& domain, std::uint64_t seed) {
    domain.validate();
    if (m < 1) throw InputError("lhs requires m >= 1");

    const int d = domain.dimension();
    Rng rng(seed);

    Eigen::MatrixXd unit(m, d);
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int j = 0; j < d; ++j) {
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        for (int i = 0; i < m; ++i) {
            // point i falls in stratum order[i]: [k/m, (k+1)/m)
            unit(i, j) = (static_cast<double>(order[static_cast<std::size_t>(i)]) + rng.uniform01()) /
                         static_cast<double>(m);
        }
    }

    Design design;
    design.points = domain.from_unit(unit);
    design.domain = domain;
    return design;
}

Eigen::MatrixXd scale_to_unit(const Design& design) {
    design.domain.validate();
    return design.domain.to_unit(design.points);
}

}  // namespace mfk
