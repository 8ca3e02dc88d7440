// SPDX-License-Identifier: MIT
#include "mfk/tuning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mfk/errors.hpp"
#include "mfk/mic.hpp"
#include "mfk/rng.hpp"

namespace mfk {

std::string to_string(Strategy s) {
    return s == Strategy::conventional ? "conventional" : "hd";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "conventional") return Strategy::conventional;
    if (name == "hd") return Strategy::hd;
    throw InputError("unknown strategy '" + name + "' (expected conventional or hd)");
}

void TuningConfig::validate() const {
    if (!(theta_lo > 0.0 && theta_hi > theta_lo))
        throw InputError("theta bounds must satisfy 0 < lo < hi");
    if (!(scale_lo > 0.0 && scale_hi > scale_lo))
        throw InputError("scale bounds must satisfy 0 < lo < hi");
    if (ga_population < 0 || ga_generations < 1 || oned_budget < 1 || local_budget < 1)
        throw InputError("tuning budgets must be positive");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_eval(const std::function<double(const Eigen::VectorXd&)>& ll,
                 const Eigen::VectorXd& theta) {
    try {
        const double v = ll(theta);
        return std::isfinite(v) ? v : kNegInf;
    } catch (const SingularCorrelationError&) {
        return kNegInf;
    } catch (const DegenerateTrendError&) {
        return kNegInf;
    }
}

Eigen::VectorXd clip_theta(Eigen::VectorXd theta, const TuningConfig& cfg) {
    for (Eigen::Index i = 0; i < theta.size(); ++i)
        theta[i] = std::clamp(theta[i], cfg.theta_lo, cfg.theta_hi);
    return theta;
}

Eigen::VectorXd pow10(const Eigen::VectorXd& t) {
    return t.unaryExpr([](double v) { return std::pow(10.0, v); });
}

// GA over log10-theta; returns theta in linear space plus the trace.
std::pair<Eigen::VectorXd, TuneTrace> ga_stage(
    const std::function<double(const Eigen::VectorXd&)>& ll, int d, const TuningConfig& cfg,
    std::uint64_t seed) {
    const Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, std::log10(cfg.theta_lo));
    const Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, std::log10(cfg.theta_hi));
    GaOptions opts;
    opts.population = cfg.ga_population > 0 ? cfg.ga_population : 4 * d;
    opts.generations = cfg.ga_generations;
    opts.crossover_fraction = cfg.ga_crossover_fraction;
    opts.migration_fraction = cfg.ga_migration_fraction;
    auto objective = [&](const Eigen::VectorXd& t) { return safe_eval(ll, pow10(t)); };
    auto [t_star, trace] = ga_maximize(objective, lo, hi, opts, seed);
    return {pow10(t_star), std::move(trace)};
}

// Scalar search for a scale factor followed by local refinement, the shared
// shape of both hd stages. Appends records to trace and returns theta.
Eigen::VectorXd scaled_stage(const std::function<double(const Eigen::VectorXd&)>& ll,
                             const Eigen::VectorXd& direction, const TuningConfig& cfg,
                             const char* scale_name, double* scale_out, TuneTrace& trace) {
    auto scale_objective = [&](double s) {
        return safe_eval(ll, clip_theta(s * direction, cfg));
    };
    const OnedResult oned =
        oned_maximize(scale_objective, cfg.scale_lo, cfg.scale_hi, cfg.oned_budget);
    *scale_out = oned.s_star;
    const Eigen::VectorXd theta_seed = clip_theta(oned.s_star * direction, cfg);

    StageRecord seed_rec;
    seed_rec.stage = scale_name;
    seed_rec.evals = oned.evals;
    seed_rec.objective_before = kNegInf;
    seed_rec.objective_after = oned.objective;
    seed_rec.theta = theta_seed;
    trace.evaluations_used += oned.evals;
    trace.stage_log.push_back(std::move(seed_rec));

    const Eigen::VectorXd lo = Eigen::VectorXd::Constant(direction.size(), std::log10(cfg.theta_lo));
    const Eigen::VectorXd hi = Eigen::VectorXd::Constant(direction.size(), std::log10(cfg.theta_hi));
    auto refine_objective = [&](const Eigen::VectorXd& t) { return safe_eval(ll, pow10(t)); };
    auto [t_star, refine_trace] = local_refine(
        refine_objective, theta_seed.array().log10().matrix(), lo, hi, cfg.local_budget);

    trace.evaluations_used += refine_trace.evaluations_used;
    trace.best_objective = refine_trace.best_objective;
    for (auto& rec : refine_trace.stage_log) {
        rec.theta = pow10(rec.theta);
        trace.stage_log.push_back(std::move(rec));
    }
    return pow10(t_star);
}

}  // namespace

TuneResult tune_hkc(const SampleSet& lf_samples, const SampleSet& hf_samples,
                    const TuningConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int d = lf_samples.dimension();

    auto lf_ll = [&](const Eigen::VectorXd& theta) {
        return concentrated_log_likelihood(lf_samples, theta);
    };
    TuneResult result;
    auto [theta_lf, lf_trace] = ga_stage(lf_ll, d, config, sub_seed(config.seed, 1));
    result.lf_trace = std::move(lf_trace);
    const KrigingModel lf_model = KrigingModel::fit(lf_samples, theta_lf);

    auto hf_ll = [&](const Eigen::VectorXd& theta) {
        return hk_log_likelihood(lf_model, hf_samples, theta);
    };
    auto [theta_hf, hf_trace] = ga_stage(hf_ll, d, config, sub_seed(config.seed, 2));
    result.hf_trace = std::move(hf_trace);
    result.model = HkModel::fit(lf_model, hf_samples, theta_hf);

    const auto t1 = std::chrono::steady_clock::now();
    result.fit_time_s = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

TuneResult tune_hkhd(const SampleSet& lf_samples, const SampleSet& hf_samples,
                     const TuningConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int d = lf_samples.dimension();

    TuneResult result;
    // A single input admits no relative importance ranking, and the scalar
    // search absorbs the overall magnitude anyway.
    if (d == 1) {
        result.omega = Eigen::VectorXd::Ones(1);
    } else {
        result.omega = mic_screen(lf_samples).omega;
    }

    auto lf_ll = [&](const Eigen::VectorXd& theta) {
        return concentrated_log_likelihood(lf_samples, theta);
    };
    const Eigen::VectorXd theta_lf = scaled_stage(lf_ll, result.omega, config, "oned_lambda",
                                                  &result.lambda_star, result.lf_trace);
    const KrigingModel lf_model = KrigingModel::fit(lf_samples, theta_lf);

    auto hf_ll = [&](const Eigen::VectorXd& theta) {
        return hk_log_likelihood(lf_model, hf_samples, theta);
    };
    const Eigen::VectorXd theta_hf = scaled_stage(hf_ll, theta_lf, config, "oned_chi",
                                                  &result.chi_star, result.hf_trace);
    result.model = HkModel::fit(lf_model, hf_samples, theta_hf);

    const auto t1 = std::chrono::steady_clock::now();
    result.fit_time_s = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

TuneResult tune(const SampleSet& lf_samples, const SampleSet& hf_samples,
                const TuningConfig& config) {
    return config.strategy == Strategy::conventional ? tune_hkc(lf_samples, hf_samples, config)
                                                     : tune_hkhd(lf_samples, hf_samples, config);
}

}  // namespace mfk
