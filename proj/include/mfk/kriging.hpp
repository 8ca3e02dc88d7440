// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <utility>

#include "mfk/sample_set.hpp"

namespace mfk {

/// Hyperparameter search box, interpreted on unit-cube-normalized inputs.
inline constexpr double kThetaMin = 1e-4;
inline constexpr double kThetaMax = 1e2;

/// Floor applied to the concentrated variance estimate before taking its log.
inline constexpr double kSigma2Floor = 1e-30;

/// Cholesky factor of a regularized correlation matrix. `nugget` is the
/// diagonal shift that was actually needed; `log_det` is ln|R + nugget I|.
struct CholFactor {
    Eigen::MatrixXd lower;
    double nugget = 0.0;
    double log_det = 0.0;

    /// Solve (R + nugget I) x = b via the stored factor.
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        Eigen::VectorXd x = lower.triangularView<Eigen::Lower>().solve(b);
        lower.triangularView<Eigen::Lower>().transpose().solveInPlace(x);
        return x;
    }

    /// Forward substitution only: L^-1 b.
    Eigen::VectorXd half_solve(const Eigen::VectorXd& b) const {
        return lower.triangularView<Eigen::Lower>().solve(b);
    }
};

/// Factor R + nugget I, climbing the nugget ladder
/// {0, 1e-12, 1e-11, ..., 1e-6} until the Cholesky succeeds.
/// Throws SingularCorrelationError if 1e-6 still fails.
CholFactor factorize(const Eigen::MatrixXd& r);

/// Factor R + nugget I with a caller-supplied nugget, for restoring a stored
/// model exactly as it was fitted. Throws SingularCorrelationError on failure.
CholFactor factorize_with_nugget(const Eigen::MatrixXd& r, double nugget);

/// Concentrated (profile) log-likelihood pieces for a given correlation
/// factor and centered response vector: the GLS trend estimate, the
/// concentrated process variance, and the objective
///   -(m/2) ln sigma2 - (1/2) ln|R|.
struct LikelihoodParts {
    double mu = 0.0;
    double sigma2 = 0.0;
    double objective = 0.0;
};

LikelihoodParts concentrated_parts(const CholFactor& chol, const Eigen::VectorXd& y);

/// The MLE objective of ordinary Kriging as a function of theta.
double concentrated_log_likelihood(const SampleSet& samples, const Eigen::VectorXd& theta);

/// Fitted ordinary Kriging model. Immutable after fit; predictions are O(m d)
/// per query against the precomputed alpha = R^-1 (y - mu* 1).
class KrigingModel {
public:
    KrigingModel() = default;

    static KrigingModel fit(const SampleSet& samples, const Eigen::VectorXd& theta);

    /// Rebuild a model from stored fields, reusing the recorded nugget
    /// instead of climbing the ladder.
    static KrigingModel restore(const SampleSet& samples, const Eigen::VectorXd& theta,
                                double nugget);

    /// Prediction at one normalized (unit-cube) query, in original response
    /// units: mu* + r' alpha + response_mean.
    double predict_unit(const Eigen::VectorXd& x_unit) const;

    /// Prediction at one query in original domain coordinates.
    double predict(const Eigen::VectorXd& x) const;

    /// Vectorized prediction over rows of a query matrix (original coords).
    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;

    const SampleSet& samples() const { return samples_; }
    const Eigen::VectorXd& theta() const { return theta_; }
    double mu_star() const { return mu_star_; }
    double sigma2() const { return sigma2_; }
    double nugget() const { return chol_.nugget; }
    const CholFactor& factor() const { return chol_; }
    const Eigen::VectorXd& alpha() const { return alpha_; }
    int dimension() const { return samples_.dimension(); }

private:
    static KrigingModel from_factor(const SampleSet& samples, const Eigen::VectorXd& theta,
                                    CholFactor chol);

    SampleSet samples_;
    Eigen::VectorXd theta_;
    double mu_star_ = 0.0;
    double sigma2_ = 0.0;
    CholFactor chol_;
    Eigen::VectorXd alpha_;
};

}  // namespace mfk
