// SPDX-License-Identifier: MIT
#include "mfk/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "mfk/errors.hpp"

namespace mfk {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string expected_header(int d) {
    std::string h;
    for (int j = 1; j <= d; ++j) h += "x" + std::to_string(j) + ",";
    return h + "y";
}

double parse_double(const std::string& field, const std::string& path, std::size_t line_no) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw DataFormatError(path + ":" + std::to_string(line_no) + ": unparsable number '" +
                              field + "'");
    }
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\r' || field[pos] == '\t'))
        ++pos;
    if (pos != field.size())
        throw DataFormatError(path + ":" + std::to_string(line_no) + ": trailing junk in '" +
                              field + "'");
    return v;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

DatasetCsv read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataFormatError(path + ": empty file");
    line = strip_cr(line);

    const auto header = split_fields(line);
    const int d = static_cast<int>(header.size()) - 1;
    if (d < 1 || line != expected_header(d))
        throw DataFormatError(path + ": header must be " + expected_header(std::max(d, 1)));

    std::vector<std::vector<double>> rows;
    int dropped = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (static_cast<int>(fields.size()) != d + 1)
            throw DataFormatError(path + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(d + 1) + " fields, found " +
                                  std::to_string(fields.size()));
        std::vector<double> row(fields.size());
        bool finite = true;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            row[j] = parse_double(fields[j], path, line_no);
            finite = finite && std::isfinite(row[j]);
        }
        if (!finite) {
            ++dropped;
            continue;
        }
        rows.push_back(std::move(row));
    }

    DatasetCsv out;
    out.dropped_rows = dropped;
    out.points.resize(static_cast<Eigen::Index>(rows.size()), d);
    out.responses.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < d; ++j) out.points(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
        out.responses[static_cast<Eigen::Index>(i)] = rows[i][static_cast<std::size_t>(d)];
    }
    return out;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& points,
                       const Eigen::VectorXd& responses) {
    if (points.rows() != responses.size())
        throw InputError("write_dataset_csv: points/responses row mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);

    out << expected_header(static_cast<int>(points.cols())) << "\n";
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index j = 0; j < points.cols(); ++j)
            out << format_g17(points(i, j)) << ",";
        out << format_g17(responses[i]) << "\n";
    }
}

}  // namespace mfk
