// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include <Eigen/Dense>

namespace mfk {

/// A parsed dataset file: points, responses, and how many rows were dropped
/// for containing non-finite values (failed simulations).
struct DatasetCsv {
    Eigen::MatrixXd points;
    Eigen::VectorXd responses;
    int dropped_rows = 0;

    int count() const { return static_cast<int>(points.rows()); }
    int dimension() const { return static_cast<int>(points.cols()); }
};

/// Read a dataset CSV with header x1,...,xd,y. Rows with any NaN/inf entry
/// are dropped (their count is reported). Throws DataFormatError on a bad
/// header, ragged rows, or unparsable numbers.
DatasetCsv read_dataset_csv(const std::string& path);

/// Write a dataset CSV (header x1,...,xd,y, %.17g values, LF line endings).
void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& points,
                       const Eigen::VectorXd& responses);

/// Render one double with %.17g (shortest exact round-trip not required; 17
/// significant digits always round-trip).
std::string format_g17(double v);

}  // namespace mfk
