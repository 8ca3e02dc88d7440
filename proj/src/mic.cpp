// SPDX-License-Identifier: MIT
#include "mfk/mic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mfk {

namespace {

// x log x with the 0 log 0 = 0 convention, natural log.
double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

std::vector<int> sort_order(const Eigen::VectorXd& v) {
    std::vector<int> idx(static_cast<std::size_t>(v.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    return idx;
}

}  // namespace

std::vector<int> mic_equipartition(const Eigen::VectorXd& v, int q) {
    const int n = static_cast<int>(v.size());
    const std::vector<int> idx = sort_order(v);
    std::vector<int> bin(static_cast<std::size_t>(n), 0);

    int current = 0;
    int current_size = 0;
    int assigned = 0;
    double desired = static_cast<double>(n) / q;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && v[idx[static_cast<std::size_t>(j)]] == v[idx[static_cast<std::size_t>(i)]]) ++j;
        const int s = j - i;
        if (current_size != 0 && current < q - 1 &&
            std::fabs(current_size + s - desired) >= std::fabs(current_size - desired)) {
            ++current;
            current_size = 0;
            desired = static_cast<double>(n - assigned) / (q - current);
        }
        for (int t = i; t < j; ++t) bin[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])] = current;
        current_size += s;
        assigned += s;
        i = j;
    }
    return bin;
}

namespace {

// Clump sizes along axis u given a fixed bin assignment on the other axis.
// Points with equal u-values are inseparable; beyond that, consecutive points
// sharing a bin merge, since an optimal partition never cuts inside such a
// run. Returns clump sizes in u order.
std::vector<int> clump_sizes(const Eigen::VectorXd& u, const std::vector<int>& row,
                             const std::vector<int>& u_order) {
    const int n = static_cast<int>(u.size());
    std::vector<int> sizes;
    int i = 0;
    int last_row = -2;  // -2: no open clump; -1: open clump with mixed rows
    while (i < n) {
        int j = i;
        while (j < n && u[u_order[static_cast<std::size_t>(j)]] == u[u_order[static_cast<std::size_t>(i)]]) ++j;
        const int s = j - i;
        bool pure = true;
        const int r0 = row[static_cast<std::size_t>(u_order[static_cast<std::size_t>(i)])];
        for (int t = i + 1; t < j; ++t)
            if (row[static_cast<std::size_t>(u_order[static_cast<std::size_t>(t)])] != r0) {
                pure = false;
                break;
            }
        if (!sizes.empty() && pure && last_row == r0) {
            sizes.back() += s;
        } else {
            sizes.push_back(s);
        }
        last_row = pure ? r0 : -2;  // a mixed tie group never merges with neighbours
        i = j;
    }
    return sizes;
}

// Merge clumps into at most limit superclumps of near-equal point counts.
std::vector<int> superclump_sizes(const std::vector<int>& sizes, int limit) {
    if (static_cast<int>(sizes.size()) <= limit) return sizes;
    const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    std::vector<int> merged;
    int current_size = 0;
    int assigned = 0;
    double desired = static_cast<double>(n) / limit;
    for (int s : sizes) {
        if (current_size != 0 && static_cast<int>(merged.size()) < limit - 1 &&
            std::fabs(current_size + s - desired) >= std::fabs(current_size - desired)) {
            merged.push_back(current_size);
            assigned += current_size;
            current_size = 0;
            desired = static_cast<double>(n - assigned) / (limit - static_cast<int>(merged.size()));
        }
        current_size += s;
    }
    if (current_size > 0) merged.push_back(current_size);
    return merged;
}

// Best mutual information (natural log) over partitions of the u axis into
// exactly l columns, for every l in [2, kmax], with the other axis fixed to
// `row`. Column cuts are restricted to clump boundaries.
std::vector<double> optimize_axis(const Eigen::VectorXd& u, const std::vector<int>& row,
                                  int n_rows, int kmax) {
    const int n = static_cast<int>(u.size());
    const std::vector<int> order = sort_order(u);
    std::vector<int> sizes = clump_sizes(u, row, order);
    sizes = superclump_sizes(sizes, std::max(1, kMicClumpFactor * kmax));
    const int t_total = static_cast<int>(sizes.size());

    // cumulative point and per-row counts at clump boundaries
    std::vector<int> cum(static_cast<std::size_t>(t_total) + 1, 0);
    std::vector<std::vector<int>> cum_row(static_cast<std::size_t>(t_total) + 1,
                                          std::vector<int>(static_cast<std::size_t>(n_rows), 0));
    {
        int pos = 0;
        for (int t = 0; t < t_total; ++t) {
            cum[static_cast<std::size_t>(t) + 1] = cum[static_cast<std::size_t>(t)] + sizes[static_cast<std::size_t>(t)];
            cum_row[static_cast<std::size_t>(t) + 1] = cum_row[static_cast<std::size_t>(t)];
            for (int p = 0; p < sizes[static_cast<std::size_t>(t)]; ++p, ++pos)
                ++cum_row[static_cast<std::size_t>(t) + 1][static_cast<std::size_t>(
                    row[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])])];
        }
    }

    const double nd = static_cast<double>(n);
    // column score, additive over columns: sum_r (c_r/n) ln(c_r/n) - (c/n) ln(c/n)
    auto col_score = [&](int s, int t) {
        double g = 0.0;
        for (int r = 0; r < n_rows; ++r) {
            const int c_r = cum_row[static_cast<std::size_t>(t)][static_cast<std::size_t>(r)] -
                            cum_row[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)];
            g += xlogx(c_r / nd);
        }
        g -= xlogx((cum[static_cast<std::size_t>(t)] - cum[static_cast<std::size_t>(s)]) / nd);
        return g;
    };

    // row entropy H(Q); MI(l) = H(Q) + best additive score over l columns
    double h_rows = 0.0;
    for (int r = 0; r < n_rows; ++r)
        h_rows -= xlogx(cum_row[static_cast<std::size_t>(t_total)][static_cast<std::size_t>(r)] / nd);

    const int l_max = std::min(kmax, t_total);
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> mi(static_cast<std::size_t>(kmax) + 1, neg_inf);
    if (l_max < 2) return mi;

    // dp[t]: best score over partitions of the first t clumps into l columns
    std::vector<double> prev(static_cast<std::size_t>(t_total) + 1, neg_inf);
    for (int t = 1; t <= t_total; ++t) prev[static_cast<std::size_t>(t)] = col_score(0, t);
    for (int l = 2; l <= l_max; ++l) {
        std::vector<double> cur(static_cast<std::size_t>(t_total) + 1, neg_inf);
        for (int t = l; t <= t_total; ++t) {
            double best = neg_inf;
            for (int s = l - 1; s < t; ++s) {
                const double v = prev[static_cast<std::size_t>(s)] + col_score(s, t);
                if (v > best) best = v;
            }
            cur[static_cast<std::size_t>(t)] = best;
        }
        mi[static_cast<std::size_t>(l)] = h_rows + cur[static_cast<std::size_t>(t_total)];
        prev = std::move(cur);
    }
    return mi;
}

bool is_constant(const Eigen::VectorXd& v) {
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (v[i] != v[0]) return false;
    return true;
}

}  // namespace

int mic_grid_bound(int n) {
    return static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 0.6)));
}

double mic_pairwise_with_bound(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int grid_bound,
                               std::pair<int, int>* argmax_shape) {
    if (x.size() != y.size()) throw InputError("mic: vectors differ in length");
    const int n = static_cast<int>(x.size());
    if (n < kMicMinSamples) throw InsufficientDataError("mic requires at least 10 samples");
    if (!x.allFinite() || !y.allFinite()) throw InputError("mic: non-finite values");
    if (argmax_shape) *argmax_shape = {0, 0};
    if (is_constant(x) || is_constant(y)) return 0.0;

    double best = 0.0;
    // orientation 0: fixed equal-frequency bins on y, DP partition on x
    // orientation 1: the transpose
    for (int orient = 0; orient < 2; ++orient) {
        const Eigen::VectorXd& fixed_axis = orient == 0 ? y : x;
        const Eigen::VectorXd& dp_axis = orient == 0 ? x : y;
        for (int q = 2; 2 * q <= grid_bound; ++q) {
            const int kmax = grid_bound / q;
            if (kmax < 2) break;
            const std::vector<int> bins = mic_equipartition(fixed_axis, q);
            const int n_bins = *std::max_element(bins.begin(), bins.end()) + 1;
            if (n_bins < 2) continue;  // ties collapsed everything
            const std::vector<double> mi = optimize_axis(dp_axis, bins, n_bins, kmax);
            for (int l = 2; l <= kmax; ++l) {
                if (!std::isfinite(mi[static_cast<std::size_t>(l)])) continue;
                const double val = mi[static_cast<std::size_t>(l)] / std::log(std::min(l, q));
                if (val > best) {
                    best = val;
                    if (argmax_shape)
                        *argmax_shape = orient == 0 ? std::make_pair(l, q) : std::make_pair(q, l);
                }
            }
        }
    }
    return std::clamp(best, 0.0, 1.0);
}

double mic_pairwise(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return mic_pairwise_with_bound(x, y, mic_grid_bound(static_cast<int>(x.size())));
}

MicResult mic_screen(const SampleSet& lf_samples) {
    const int n = lf_samples.count();
    const int d = lf_samples.dimension();
    if (n < kMicMinSamples) throw InsufficientDataError("mic_screen requires at least 10 samples");

    MicResult result;
    result.grid_bound = mic_grid_bound(n);
    result.omega.resize(d);
    result.argmax_shape.resize(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) {
        result.omega[l] = mic_pairwise_with_bound(lf_samples.sites.col(l), lf_samples.responses,
                                                  result.grid_bound,
                                                  &result.argmax_shape[static_cast<std::size_t>(l)]);
    }
    const double top = result.omega.maxCoeff();
    result.omega = result.omega.array().max(0.01 * top);
    return result;
}

}  // namespace mfk
