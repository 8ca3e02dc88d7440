// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include "mfk/kriging.hpp"

namespace mfk {

/// Hierarchical Kriging: the scaled low-fidelity prediction beta* y_lf(x)
/// serves as the trend of the high-fidelity layer,
///   y(x) = beta* y_lf(x) + r' R^-1 (y_s - beta* F),
/// with beta* = (F' R^-1 F)^-1 F' R^-1 y_s and F the vector of low-fidelity
/// predictions at the high-fidelity sites.
///
/// Centering convention: the LF layer centers by the LF mean, the HF layer by
/// the HF mean, and F holds the LF prediction in original units minus the HF
/// mean so that beta* relates comparable centered quantities.
class HkModel {
public:
    HkModel() = default;

    static HkModel fit(const KrigingModel& lf_model, const SampleSet& hf_samples,
                       const Eigen::VectorXd& theta_hf);

    /// Rebuild from stored fields, reusing the recorded nugget instead of
    /// climbing the ladder.
    static HkModel restore(const KrigingModel& lf_model, const SampleSet& hf_samples,
                           const Eigen::VectorXd& theta_hf, double nugget_hf);

    double predict_unit(const Eigen::VectorXd& x_unit) const;
    double predict(const Eigen::VectorXd& x) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;

    const KrigingModel& lf_model() const { return lf_model_; }
    const SampleSet& hf_samples() const { return hf_samples_; }
    const Eigen::VectorXd& theta_hf() const { return theta_hf_; }
    double beta_star() const { return beta_star_; }
    double sigma2_hf() const { return sigma2_hf_; }
    double nugget_hf() const { return chol_hf_.nugget; }
    const Eigen::VectorXd& lf_at_hf_sites() const { return f_; }
    double hf_response_mean() const { return hf_samples_.response_mean; }
    int dimension() const { return hf_samples_.dimension(); }

private:
    static HkModel from_parts(const KrigingModel& lf_model, const SampleSet& hf_samples,
                              const Eigen::VectorXd& theta_hf, double beta_star, double sigma2,
                              Eigen::VectorXd f, CholFactor chol);

    KrigingModel lf_model_;
    SampleSet hf_samples_;
    Eigen::VectorXd theta_hf_;
    double beta_star_ = 0.0;
    double sigma2_hf_ = 0.0;
    Eigen::VectorXd f_;  // LF predictions at HF sites, centered by the HF mean
    CholFactor chol_hf_;
    Eigen::VectorXd alpha_hf_;
};

/// HF-layer concentrated log-likelihood,
///   -(k/2) ln sigma2_hf - (1/2) ln|R_hf|,
/// with sigma2_hf = (y_s - beta* F)' R^-1 (y_s - beta* F) / k and beta*
/// profiled out by GLS.
double hk_log_likelihood(const KrigingModel& lf_model, const SampleSet& hf_samples,
                         const Eigen::VectorXd& theta_hf);

inline HkModel hk_fit(const KrigingModel& lf_model, const SampleSet& hf_samples,
                      const Eigen::VectorXd& theta_hf) {
    return HkModel::fit(lf_model, hf_samples, theta_hf);
}

}  // namespace mfk
