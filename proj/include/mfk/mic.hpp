// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "mfk/sample_set.hpp"

namespace mfk {

/// Smallest accepted sample count for a MIC estimate.
inline constexpr int kMicMinSamples = 10;

/// Clump limit factor of the grid search (candidate cut points on the
/// optimized axis are capped at c times the column budget).
inline constexpr int kMicClumpFactor = 15;

/// Grid-size budget for n samples: a*b <= B with B = ceil(n^0.6).
int mic_grid_bound(int n);

/// Equal-frequency assignment into at most q bins along one axis: tied
/// values share a bin, bin sizes follow the running target of
/// remaining/bins-left. Returns a bin index per entry. This is the fixed-axis
/// binning of the grid search, exposed so an exhaustive check can replay it.
std::vector<int> mic_equipartition(const Eigen::VectorXd& values, int q);

/// Maximal information coefficient of two equally long vectors, in [0, 1].
///
/// Grid search over shapes a x b with 2 <= a,b and a*b <= B: one axis is cut
/// into equal-frequency bins, the other is partitioned by a dynamic program
/// over clump boundaries maximizing mutual information; both orientations are
/// tried and the largest MI / log2(min(a,b)) wins. Depends on the data only
/// through orderings, so it is invariant under strictly monotone transforms
/// of either axis.
///
/// Returns 0 for a constant x or y. Throws InsufficientDataError for n < 10.
double mic_pairwise(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// As mic_pairwise, with an explicit grid budget (used by tests to compare
/// against an exhaustive oracle at small n).
double mic_pairwise_with_bound(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int grid_bound,
                               std::pair<int, int>* argmax_shape = nullptr);

/// Per-variable MIC screen of a low-fidelity sample set.
struct MicResult {
    Eigen::VectorXd omega;                          // one MIC per input variable
    int grid_bound = 0;                             // the B actually used
    std::vector<std::pair<int, int>> argmax_shape;  // best (a, b) per variable
};

/// MIC of every input column against the responses, with a floor applied:
/// omega_l >= 0.01 * max_j omega_j, so no variable is frozen out entirely
/// before the local search can act.
MicResult mic_screen(const SampleSet& lf_samples);

}  // namespace mfk
