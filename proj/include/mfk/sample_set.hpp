// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include <Eigen/Dense>

#include "mfk/domain.hpp"
#include "mfk/errors.hpp"

namespace mfk {

enum class Fidelity { low, high };

inline const char* to_string(Fidelity f) { return f == Fidelity::low ? "low" : "high"; }

inline Fidelity parse_fidelity(const std::string& name) {
    if (name == "low") return Fidelity::low;
    if (name == "high") return Fidelity::high;
    throw InputError("unknown fidelity '" + name + "'");
}

/// A fidelity-tagged training set.
///
/// Sites live on the unit cube (the domain keeps the original bounds for
/// mapping queries). Responses are stored centered; `response_mean` holds the
/// offset that was removed so predictions can be reported in original units.
struct SampleSet {
    Eigen::MatrixXd sites;      // m x d, normalized to [0,1]^d
    Eigen::VectorXd responses;  // length m, centered
    double response_mean = 0.0;
    Fidelity fidelity = Fidelity::low;
    Domain domain;

    int count() const { return static_cast<int>(sites.rows()); }
    int dimension() const { return static_cast<int>(sites.cols()); }

    Eigen::VectorXd raw_responses() const {
        return responses.array() + response_mean;
    }

    /// Build from raw data: normalizes the sites into the unit cube and
    /// centers the responses.
    static SampleSet from_raw(const Eigen::MatrixXd& points, const Eigen::VectorXd& raw_responses,
                              const Domain& domain, Fidelity fidelity) {
        domain.validate();
        if (points.rows() != raw_responses.size())
            throw InputError("sample set: site/response count mismatch");
        if (points.cols() != domain.dimension())
            throw InputError("sample set: site/domain dimension mismatch");
        if (points.rows() < 1) throw InputError("sample set: needs at least one sample");
        if (!points.allFinite() || !raw_responses.allFinite())
            throw InputError("sample set: non-finite entries");

        SampleSet s;
        s.sites = domain.to_unit(points);
        // clamp floating-point overshoot from the affine map
        s.sites = s.sites.array().max(0.0).min(1.0);
        s.response_mean = raw_responses.mean();
        s.responses = raw_responses.array() - s.response_mean;
        s.fidelity = fidelity;
        s.domain = domain;
        return s;
    }

    /// Build from a Design plus responses evaluated at its points.
    static SampleSet from_design(const Design& design, const Eigen::VectorXd& raw_responses,
                                 Fidelity fidelity) {
        return from_raw(design.points, raw_responses, design.domain, fidelity);
    }
};

}  // namespace mfk
