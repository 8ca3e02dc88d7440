// SPDX-License-Identifier: MIT
#include "mfk/hier_kriging.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "mfk/matern.hpp"

namespace mfk {

namespace {

struct HfLayer {
    CholFactor chol;
    Eigen::VectorXd f;  // LF predictions at HF sites minus the HF mean
    double beta_star = 0.0;
    double sigma2 = 0.0;
    double objective = 0.0;
};

HfLayer build_hf_layer(const KrigingModel& lf_model, const SampleSet& hf_samples,
                       const Eigen::VectorXd& theta_hf,
                       std::optional<double> fixed_nugget = std::nullopt) {
    if (hf_samples.count() < 2) throw InputError("hierarchical fit requires k >= 2 HF samples");
    if (lf_model.dimension() != hf_samples.dimension())
        throw InputError("hierarchical fit: LF/HF dimension mismatch");
    if (theta_hf.size() != hf_samples.dimension())
        throw InputError("hierarchical fit: theta_hf dimension mismatch");

    HfLayer layer;
    const int k = hf_samples.count();
    layer.f.resize(k);
    for (int i = 0; i < k; ++i)
        layer.f[i] = lf_model.predict_unit(hf_samples.sites.row(i).transpose()) -
                     hf_samples.response_mean;

    layer.chol = fixed_nugget
                     ? factorize_with_nugget(corr_matrix(hf_samples.sites, theta_hf), *fixed_nugget)
                     : factorize(corr_matrix(hf_samples.sites, theta_hf));

    const Eigen::VectorXd u = layer.chol.half_solve(layer.f);
    const Eigen::VectorXd v = layer.chol.half_solve(hf_samples.responses);
    const double utu = u.squaredNorm();
    if (!(utu > 0.0) || !std::isfinite(utu))
        throw DegenerateTrendError("F' R^-1 F is numerically non-positive");

    layer.beta_star = u.dot(v) / utu;
    layer.sigma2 = (v - layer.beta_star * u).squaredNorm() / static_cast<double>(k);
    const double sigma2_clamped = std::max(layer.sigma2, kSigma2Floor);
    layer.objective =
        -0.5 * static_cast<double>(k) * std::log(sigma2_clamped) - 0.5 * layer.chol.log_det;
    return layer;
}

}  // namespace

HkModel HkModel::fit(const KrigingModel& lf_model, const SampleSet& hf_samples,
                     const Eigen::VectorXd& theta_hf) {
    HfLayer layer = build_hf_layer(lf_model, hf_samples, theta_hf);
    return from_parts(lf_model, hf_samples, theta_hf, layer.beta_star, layer.sigma2,
                      std::move(layer.f), std::move(layer.chol));
}

HkModel HkModel::restore(const KrigingModel& lf_model, const SampleSet& hf_samples,
                         const Eigen::VectorXd& theta_hf, double nugget_hf) {
    HfLayer layer = build_hf_layer(lf_model, hf_samples, theta_hf, nugget_hf);
    return from_parts(lf_model, hf_samples, theta_hf, layer.beta_star, layer.sigma2,
                      std::move(layer.f), std::move(layer.chol));
}

HkModel HkModel::from_parts(const KrigingModel& lf_model, const SampleSet& hf_samples,
                            const Eigen::VectorXd& theta_hf, double beta_star, double sigma2,
                            Eigen::VectorXd f, CholFactor chol) {
    HkModel model;
    model.lf_model_ = lf_model;
    model.hf_samples_ = hf_samples;
    model.theta_hf_ = theta_hf;
    model.beta_star_ = beta_star;
    model.sigma2_hf_ = std::max(sigma2, 0.0);
    model.f_ = std::move(f);
    model.chol_hf_ = std::move(chol);
    model.alpha_hf_ = model.chol_hf_.solve(hf_samples.responses - model.beta_star_ * model.f_);
    return model;
}

double hk_log_likelihood(const KrigingModel& lf_model, const SampleSet& hf_samples,
                         const Eigen::VectorXd& theta_hf) {
    return build_hf_layer(lf_model, hf_samples, theta_hf).objective;
}

double HkModel::predict_unit(const Eigen::VectorXd& x_unit) const {
    if (x_unit.size() != hf_samples_.dimension())
        throw InputError("predict: query dimension mismatch");
    const double lf_centered = lf_model_.predict_unit(x_unit) - hf_samples_.response_mean;
    const Eigen::VectorXd r = corr_vector(hf_samples_.sites, theta_hf_, x_unit);
    return beta_star_ * lf_centered + r.dot(alpha_hf_) + hf_samples_.response_mean;
}

double HkModel::predict(const Eigen::VectorXd& x) const {
    if (x.size() != hf_samples_.dimension()) throw InputError("predict: query dimension mismatch");
    Eigen::MatrixXd row = x.transpose();
    return predict_unit(hf_samples_.domain.to_unit(row).row(0).transpose());
}

Eigen::VectorXd HkModel::predict(const Eigen::MatrixXd& x) const {
    if (x.cols() != hf_samples_.dimension()) throw InputError("predict: query dimension mismatch");
    const Eigen::MatrixXd unit = hf_samples_.domain.to_unit(x);
    Eigen::VectorXd out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = predict_unit(unit.row(i).transpose());
    return out;
}

}  // namespace mfk
