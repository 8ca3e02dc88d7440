// SPDX-License-Identifier: MIT
#include "mfk/kriging.hpp"

#include <Eigen/Cholesky>

#include <array>
#include <cmath>

#include "mfk/matern.hpp"

namespace mfk {

namespace {

bool try_factorize(const Eigen::MatrixXd& r, double nugget, CholFactor& out) {
    Eigen::MatrixXd reg = r;
    reg.diagonal().array() += nugget;
    Eigen::LLT<Eigen::MatrixXd> llt(reg);
    if (llt.info() != Eigen::Success) return false;
    out.lower = llt.matrixL();
    out.nugget = nugget;
    out.log_det = 2.0 * out.lower.diagonal().array().log().sum();
    // Eigen's LLT can succeed on a barely indefinite matrix; a non-finite
    // log-determinant means the factor is unusable.
    return std::isfinite(out.log_det);
}

}  // namespace

CholFactor factorize(const Eigen::MatrixXd& r) {
    static constexpr std::array<double, 8> ladder = {0.0,  1e-12, 1e-11, 1e-10,
                                                     1e-9, 1e-8,  1e-7,  1e-6};
    CholFactor f;
    for (double nugget : ladder)
        if (try_factorize(r, nugget, f)) return f;
    throw SingularCorrelationError(
        "correlation matrix not positive definite at nugget 1e-6 (degenerate design?)");
}

CholFactor factorize_with_nugget(const Eigen::MatrixXd& r, double nugget) {
    CholFactor f;
    if (!try_factorize(r, nugget, f))
        throw SingularCorrelationError("correlation matrix not positive definite at stored nugget");
    return f;
}

LikelihoodParts concentrated_parts(const CholFactor& chol, const Eigen::VectorXd& y) {
    const auto m = y.size();
    const Eigen::VectorXd z = chol.half_solve(y);
    const Eigen::VectorXd w = chol.half_solve(Eigen::VectorXd::Ones(m));

    LikelihoodParts parts;
    const double wtw = w.squaredNorm();
    parts.mu = w.dot(z) / wtw;
    parts.sigma2 = (z - parts.mu * w).squaredNorm() / static_cast<double>(m);
    const double sigma2_clamped = std::max(parts.sigma2, kSigma2Floor);
    parts.objective = -0.5 * static_cast<double>(m) * std::log(sigma2_clamped) - 0.5 * chol.log_det;
    return parts;
}

double concentrated_log_likelihood(const SampleSet& samples, const Eigen::VectorXd& theta) {
    if (samples.count() < 2) throw InputError("likelihood requires m >= 2 samples");
    if (theta.size() != samples.dimension())
        throw InputError("likelihood: theta/sample dimension mismatch");
    const CholFactor chol = factorize(corr_matrix(samples.sites, theta));
    return concentrated_parts(chol, samples.responses).objective;
}

namespace {

void check_fit_args(const SampleSet& samples, const Eigen::VectorXd& theta) {
    if (samples.count() < 2) throw InputError("fit requires m >= 2 samples");
    if (theta.size() != samples.dimension())
        throw InputError("fit: theta/sample dimension mismatch");
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        if (!(theta[i] >= kThetaMin && theta[i] <= kThetaMax))
            throw InputError("fit: theta outside [1e-4, 1e2]");
    }
}

}  // namespace

KrigingModel KrigingModel::fit(const SampleSet& samples, const Eigen::VectorXd& theta) {
    check_fit_args(samples, theta);
    return from_factor(samples, theta, factorize(corr_matrix(samples.sites, theta)));
}

KrigingModel KrigingModel::restore(const SampleSet& samples, const Eigen::VectorXd& theta,
                                   double nugget) {
    check_fit_args(samples, theta);
    return from_factor(samples, theta,
                       factorize_with_nugget(corr_matrix(samples.sites, theta), nugget));
}

KrigingModel KrigingModel::from_factor(const SampleSet& samples, const Eigen::VectorXd& theta,
                                       CholFactor chol) {
    KrigingModel model;
    model.samples_ = samples;
    model.theta_ = theta;
    model.chol_ = std::move(chol);

    const LikelihoodParts parts = concentrated_parts(model.chol_, samples.responses);
    model.mu_star_ = parts.mu;
    model.sigma2_ = std::max(parts.sigma2, 0.0);
    model.alpha_ = model.chol_.solve((samples.responses.array() - model.mu_star_).matrix());
    return model;
}

double KrigingModel::predict_unit(const Eigen::VectorXd& x_unit) const {
    if (x_unit.size() != samples_.dimension())
        throw InputError("predict: query dimension mismatch");
    const Eigen::VectorXd r = corr_vector(samples_.sites, theta_, x_unit);
    return mu_star_ + r.dot(alpha_) + samples_.response_mean;
}

double KrigingModel::predict(const Eigen::VectorXd& x) const {
    if (x.size() != samples_.dimension())
        throw InputError("predict: query dimension mismatch");
    Eigen::MatrixXd row = x.transpose();
    return predict_unit(samples_.domain.to_unit(row).row(0).transpose());
}

Eigen::VectorXd KrigingModel::predict(const Eigen::MatrixXd& x) const {
    if (x.cols() != samples_.dimension())
        throw InputError("predict: query dimension mismatch");
    const Eigen::MatrixXd unit = samples_.domain.to_unit(x);
    Eigen::VectorXd out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = predict_unit(unit.row(i).transpose());
    return out;
}

}  // namespace mfk
