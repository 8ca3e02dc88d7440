// SPDX-License-Identifier: MIT
//
// Acceptance gate for the library and benchmark harness. Each criterion
// prints exactly one PASS/FAIL line; the process exits nonzero if any fails.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "mfk/harness.hpp"
#include "mfk/hier_kriging.hpp"
#include "mfk/kriging.hpp"
#include "mfk/matern.hpp"
#include "mfk/metrics.hpp"
#include "mfk/mic.hpp"
#include "mfk/model_io.hpp"
#include "mfk/problems.hpp"
#include "mfk/rng.hpp"
#include "mfk/sample_set.hpp"
#include "mfk/sampling.hpp"
#include "mfk/tuning.hpp"
#include "oracles.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;
using mfk::Fidelity;
using mfk::SampleSet;
using mfk::Strategy;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct DataPair {
    SampleSet lf;
    SampleSet hf;
};

DataPair sample_problem(const std::string& id, int n_lf, int n_hf, std::uint64_t seed) {
    const mfk::BiFidelityProblem prob = mfk::get_problem(id);
    const mfk::Design lf_design = mfk::lhs(n_lf, prob.domain, mfk::sub_seed(seed, 1));
    const mfk::Design hf_design = mfk::lhs(n_hf, prob.domain, mfk::sub_seed(seed, 2));
    VectorXd y_lf(n_lf), y_hf(n_hf);
    for (int i = 0; i < n_lf; ++i) y_lf[i] = prob.f_lf(lf_design.points.row(i).transpose());
    for (int i = 0; i < n_hf; ++i) y_hf[i] = prob.f_hf(hf_design.points.row(i).transpose());
    return {SampleSet::from_design(lf_design, y_lf, Fidelity::low),
            SampleSet::from_design(hf_design, y_hf, Fidelity::high)};
}

const mfk::StageRecord* find_stage(const mfk::TuneTrace& trace, const std::string& name) {
    for (const auto& rec : trace.stage_log)
        if (rec.stage == name) return &rec;
    return nullptr;
}

/// Criterion 1: with 4 fixed high-fidelity sites {0, 0.4, 0.6, 1} and 8
/// equispaced low-fidelity sites on the one-dimensional problem, both
/// strategies recover a fidelity scaling close to the known value 2.
bool criterion_forrester_beta(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const mfk::BiFidelityProblem prob = mfk::get_problem("forrester");

    MatrixXd hf_pts(4, 1);
    hf_pts << 0.0, 0.4, 0.6, 1.0;
    MatrixXd lf_pts(8, 1);
    for (int i = 0; i < 8; ++i) lf_pts(i, 0) = static_cast<double>(i) / 7.0;
    VectorXd y_lf(8), y_hf(4);
    for (int i = 0; i < 8; ++i) y_lf[i] = prob.f_lf(lf_pts.row(i).transpose());
    for (int i = 0; i < 4; ++i) y_hf[i] = prob.f_hf(hf_pts.row(i).transpose());
    const SampleSet lf = SampleSet::from_raw(lf_pts, y_lf, prob.domain, Fidelity::low);
    const SampleSet hf = SampleSet::from_raw(hf_pts, y_hf, prob.domain, Fidelity::high);

    mfk::TuningConfig cfg;
    cfg.seed = 11;
    cfg.strategy = Strategy::hd;
    const double beta_hd = mfk::tune(lf, hf, cfg).model.beta_star();
    cfg.strategy = Strategy::conventional;
    const double beta_conv = mfk::tune(lf, hf, cfg).model.beta_star();
    const double elapsed = seconds_since(t0);

    std::ostringstream os;
    os << "beta_hd=" << beta_hd << " beta_conv=" << beta_conv << " elapsed=" << elapsed << "s";
    detail = os.str();
    const auto in_range = [](double b) { return b >= 1.80 && b <= 1.95; };
    return in_range(beta_hd) && in_range(beta_conv) && elapsed < 1.0;
}

/// Criterion 2: on problem no6 with 100 LF / 50 HF samples and 10 repeats,
/// the hd strategy reaches mean R^2 >= 0.95 and beats the conventional
/// strategy's mean RMSE on paired sample sets, within two minutes.
bool criterion_no6_accuracy(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    mfk::RunSpec spec;
    spec.problem = "no6";
    spec.n_lf = 100;
    spec.n_hf = 50;
    spec.repeats = 10;
    spec.seed = 2026;
    spec.record_time = false;
    const mfk::BenchReport report = mfk::run_benchmark(spec);
    const double elapsed = seconds_since(t0);

    const double r2_hd = report.aggregate_mean(Strategy::hd, "r2");
    const double rmse_hd = report.aggregate_mean(Strategy::hd, "rmse");
    const double rmse_conv = report.aggregate_mean(Strategy::conventional, "rmse");

    std::ostringstream os;
    os << "r2_hd=" << r2_hd << " rmse_hd=" << rmse_hd << " rmse_conv=" << rmse_conv
       << " failed=" << report.failed_count << " elapsed=" << elapsed << "s";
    detail = os.str();
    return report.failed_count == 0 && r2_hd >= 0.95 && rmse_hd < rmse_conv && elapsed < 120.0;
}

/// Criterion 3: on no6 (d=10) and no7 (d=16) at 10d+5d samples with serial
/// timing, the hd strategy's mean fit time is at most one third of the
/// conventional strategy's, its likelihood-evaluation total never exceeds
/// 2000, and the conventional strategy spends exactly 1000 d evaluations.
bool criterion_speedup(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (const std::string id : {"no6", "no7"}) {
        const int d = mfk::get_problem(id).d;
        mfk::RunSpec spec;
        spec.problem = id;
        spec.repeats = 3;
        spec.seed = 7;
        spec.record_time = true;
        spec.parallel = false;
        const mfk::BenchReport report = mfk::run_benchmark(spec);

        const double t_hd = report.aggregate_mean(Strategy::hd, "fit_time_s");
        const double t_conv = report.aggregate_mean(Strategy::conventional, "fit_time_s");
        if (!(t_hd <= t_conv / 3.0)) ok = false;
        if (report.failed_count != 0) ok = false;
        for (const auto& row : report.rows) {
            const long evals = row.evals_lf + row.evals_hf;
            if (row.strategy == Strategy::hd && evals > 2000) ok = false;
            if (row.strategy == Strategy::conventional && evals != 1000L * d) ok = false;
        }
        os << id << ": t_hd=" << t_hd << "s t_conv=" << t_conv << "s ratio=" << t_hd / t_conv
           << "  ";
    }
    detail = os.str();
    return ok;
}

/// Criterion 4: the MIC screen of the no6 low-fidelity function at n=100
/// ranks x8 as the most active variable in at least 7 of 10 seeds, and never
/// ranks x1..x3 on top.
bool criterion_mic_ranking(std::string& detail) {
    const mfk::BiFidelityProblem prob = mfk::get_problem("no6");
    int x8_top = 0;
    bool low_vars_never_top = true;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const mfk::Design design = mfk::lhs(100, prob.domain, mfk::sub_seed(404, s));
        VectorXd y(100);
        for (int i = 0; i < 100; ++i) y[i] = prob.f_lf(design.points.row(i).transpose());
        const SampleSet lf = SampleSet::from_design(design, y, Fidelity::low);
        const mfk::MicResult mic = mfk::mic_screen(lf);
        Eigen::Index top = 0;
        mic.omega.maxCoeff(&top);
        if (top == 7) ++x8_top;
        if (top <= 2) low_vars_never_top = false;
    }
    std::ostringstream os;
    os << "x8_top=" << x8_top << "/10 x1..x3_top=" << (low_vars_never_top ? "never" : "yes");
    detail = os.str();
    return x8_top >= 7 && low_vars_never_top;
}

/// Criterion 5: 50 random fitted models (alternating ordinary Kriging and
/// hierarchical) on problems no1..no3 with nugget <= 1e-10 reproduce their
/// training responses to within 1e-6 of the response range.
bool criterion_interpolation(std::string& detail) {
    mfk::Rng rng(505);
    double worst_ratio = 0.0;
    double worst_nugget = 0.0;
    const std::vector<std::string> ids = {"no1", "no2", "no3"};
    for (int t = 0; t < 50; ++t) {
        const mfk::BiFidelityProblem prob = mfk::get_problem(ids[t % 3]);
        const int m = 8 + static_cast<int>(rng.below(13));
        VectorXd theta(prob.d), theta_lf(prob.d);
        for (int j = 0; j < prob.d; ++j) {
            theta[j] = std::pow(10.0, rng.uniform(0.0, 1.2));
            theta_lf[j] = std::pow(10.0, rng.uniform(0.0, 1.2));
        }

        const mfk::Design hf_design = mfk::lhs(m, prob.domain, rng.next_u64());
        VectorXd y_hf(m);
        for (int i = 0; i < m; ++i) y_hf[i] = prob.f_hf(hf_design.points.row(i).transpose());
        const SampleSet hf = SampleSet::from_design(hf_design, y_hf, Fidelity::high);
        const double range = y_hf.maxCoeff() - y_hf.minCoeff();

        VectorXd pred(m);
        double nugget = 0.0;
        if (t % 2 == 0) {
            const mfk::KrigingModel model = mfk::KrigingModel::fit(hf, theta);
            nugget = model.nugget();
            pred = model.predict(hf_design.points);
        } else {
            const mfk::Design lf_design = mfk::lhs(2 * m, prob.domain, rng.next_u64());
            VectorXd y_lf(2 * m);
            for (int i = 0; i < 2 * m; ++i)
                y_lf[i] = prob.f_lf(lf_design.points.row(i).transpose());
            const SampleSet lf = SampleSet::from_design(lf_design, y_lf, Fidelity::low);
            const mfk::HkModel model =
                mfk::HkModel::fit(mfk::KrigingModel::fit(lf, theta_lf), hf, theta);
            nugget = model.nugget_hf();
            pred = model.predict(hf_design.points);
        }
        worst_nugget = std::max(worst_nugget, nugget);
        worst_ratio = std::max(worst_ratio, (pred - y_hf).cwiseAbs().maxCoeff() / range);
    }
    std::ostringstream os;
    os << "worst_error/range=" << worst_ratio << " worst_nugget=" << worst_nugget;
    detail = os.str();
    return worst_nugget <= 1e-10 && worst_ratio <= 1e-6;
}

double condition_number(const MatrixXd& r) {
    const Eigen::JacobiSVD<MatrixXd> svd(r);
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
}

/// Criterion 6: the concentrated and hierarchical log-likelihoods match a
/// dense explicit-inverse-and-determinant oracle within 1e-8 on 100 random
/// instances with at most 20 samples per level. Instances whose regularized
/// correlation matrix has a condition number above 1e7 are redrawn: beyond
/// that the explicit-inverse reference itself loses more digits than the
/// comparison tolerance, so the check would measure conditioning rather than
/// equivalence.
bool criterion_likelihood_oracle(std::string& detail) {
    constexpr double kCondLimit = 1e7;
    mfk::Rng rng(606);
    double worst = 0.0;
    int accepted = 0;
    int redrawn = 0;
    while (accepted < 100) {
        const int d = 1 + static_cast<int>(rng.below(5));
        const int m = 5 + static_cast<int>(rng.below(16));
        const int k = 3 + static_cast<int>(rng.below(10));
        const mfk::Domain domain = mfk::Domain::cube(d, 0.0, 1.0);

        MatrixXd lf_pts(m, d), hf_pts(k, d);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < d; ++j) lf_pts(i, j) = rng.uniform01();
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < d; ++j) hf_pts(i, j) = rng.uniform01();
        VectorXd y_lf(m), y_hf(k);
        for (int i = 0; i < m; ++i) y_lf[i] = 5.0 * rng.normal();
        for (int i = 0; i < k; ++i) y_hf[i] = 5.0 * rng.normal();
        VectorXd theta_lf(d), theta_hf(d);
        for (int j = 0; j < d; ++j) {
            theta_lf[j] = std::pow(10.0, rng.uniform(-1.0, 1.5));
            theta_hf[j] = std::pow(10.0, rng.uniform(-1.0, 1.5));
        }

        const SampleSet lf = SampleSet::from_raw(lf_pts, y_lf, domain, Fidelity::low);
        const SampleSet hf = SampleSet::from_raw(hf_pts, y_hf, domain, Fidelity::high);

        const mfk::KrigingModel lf_model = mfk::KrigingModel::fit(lf, theta_lf);
        MatrixXd r_lf = mfk::corr_matrix(lf.sites, theta_lf);
        r_lf.diagonal().array() += lf_model.nugget();
        const mfk::HkModel hk = mfk::HkModel::fit(lf_model, hf, theta_hf);
        MatrixXd r_hf = mfk::corr_matrix(hf.sites, theta_hf);
        r_hf.diagonal().array() += hk.nugget_hf();
        if (condition_number(r_lf) > kCondLimit || condition_number(r_hf) > kCondLimit) {
            ++redrawn;
            continue;
        }
        ++accepted;

        const double lib_ok = mfk::concentrated_log_likelihood(lf, theta_lf);
        const double oracle_ok =
            oracles::dense_kriging_objective(lf.sites, theta_lf, lf.responses, lf_model.nugget());
        worst = std::max(worst, std::abs(lib_ok - oracle_ok));

        const double lib_hk = mfk::hk_log_likelihood(lf_model, hf, theta_hf);
        const double oracle_hk = oracles::dense_hk_objective(
            hf.sites, theta_hf, hk.lf_at_hf_sites(), hf.responses, hk.nugget_hf());
        worst = std::max(worst, std::abs(lib_hk - oracle_hk));
    }
    std::ostringstream os;
    os << "worst |lib - oracle| = " << worst << " (redrawn " << redrawn
       << " ill-conditioned instances)";
    detail = os.str();
    return worst <= 1e-8;
}

/// Criterion 7: on no2 and no6 across 10 seeds, local refinement never ends
/// below its scalar-seeded start on either fidelity level.
bool criterion_stage_monotonicity(std::string& detail) {
    int runs = 0, monotone = 0;
    for (const std::string id : {"no2", "no6"}) {
        const int n_hf = id == "no2" ? 10 : 30;
        for (std::uint64_t s = 1; s <= 10; ++s) {
            const DataPair data = sample_problem(id, 2 * n_hf, n_hf, mfk::sub_seed(707, s));
            mfk::TuningConfig cfg;
            cfg.strategy = Strategy::hd;
            cfg.seed = mfk::sub_seed(708, s);
            const mfk::TuneResult result = mfk::tune(data.lf, data.hf, cfg);
            ++runs;

            const auto* lf_oned = find_stage(result.lf_trace, "oned_lambda");
            const auto* lf_refine = find_stage(result.lf_trace, "local_refine");
            const auto* hf_oned = find_stage(result.hf_trace, "oned_chi");
            const auto* hf_refine = find_stage(result.hf_trace, "local_refine");
            if (lf_oned && lf_refine && hf_oned && hf_refine &&
                lf_refine->objective_after >= lf_oned->objective_after &&
                hf_refine->objective_after >= hf_oned->objective_after)
                ++monotone;
        }
    }
    std::ostringstream os;
    os << "monotone " << monotone << "/" << runs;
    detail = os.str();
    return monotone == runs;
}

/// Criterion 8: MIC reports a near-1 score for y=x at n=100, its empirical
/// null level over 50 independent-noise seeds stays at or below 0.35 (the
/// statistic has a nonzero sampling floor at finite n, so the level is the
/// mean over the seeds), and it is invariant under strictly monotone
/// transforms of both arguments.
bool criterion_mic_sanity(std::string& detail) {
    mfk::Rng rng(808);
    VectorXd x(100);
    for (int i = 0; i < 100; ++i) x[i] = rng.uniform01();
    const double mic_line = mfk::mic_pairwise(x, x);

    double mic_noise_sum = 0.0;
    double mic_noise_max = 0.0;
    for (std::uint64_t s = 1; s <= 50; ++s) {
        mfk::Rng noise(mfk::sub_seed(808, s));
        VectorXd u(100), v(100);
        for (int i = 0; i < 100; ++i) u[i] = noise.uniform01();
        for (int i = 0; i < 100; ++i) v[i] = noise.uniform01();
        const double mic = mfk::mic_pairwise(u, v);
        mic_noise_sum += mic;
        mic_noise_max = std::max(mic_noise_max, mic);
    }
    const double mic_noise_mean = mic_noise_sum / 50.0;

    VectorXd y(100);
    for (int i = 0; i < 100; ++i) y[i] = std::sin(8.0 * x[i]) + 0.3 * rng.normal();
    const double base = mfk::mic_pairwise(x, y);
    const double transformed =
        mfk::mic_pairwise(x.array().exp().matrix(), y.array().cube().matrix());
    const double invariance_gap = std::abs(base - transformed);

    std::ostringstream os;
    os << "mic(y=x)=" << mic_line << " noise_mean=" << mic_noise_mean
       << " noise_max=" << mic_noise_max << " invariance_gap=" << invariance_gap;
    detail = os.str();
    return mic_line >= 0.99 && mic_noise_mean <= 0.35 && invariance_gap <= 1e-9;
}

/// Criterion 9: on no6 the hd strategy's mean RMSE at 12d+6d samples is no
/// worse than at 8d+4d over 10 paired seeds.
bool criterion_sample_size_trend(std::string& detail) {
    mfk::RunSpec spec;
    spec.problem = "no6";
    spec.strategies = {Strategy::hd};
    spec.repeats = 10;
    spec.seed = 909;
    spec.record_time = false;

    spec.n_lf = 80;
    spec.n_hf = 40;
    const mfk::BenchReport small = mfk::run_benchmark(spec);
    spec.n_lf = 120;
    spec.n_hf = 60;
    const mfk::BenchReport large = mfk::run_benchmark(spec);

    const double rmse_small = small.aggregate_mean(Strategy::hd, "rmse");
    const double rmse_large = large.aggregate_mean(Strategy::hd, "rmse");
    std::ostringstream os;
    os << "rmse(8d+4d)=" << rmse_small << " rmse(12d+6d)=" << rmse_large;
    detail = os.str();
    return small.failed_count == 0 && large.failed_count == 0 && rmse_large <= rmse_small;
}

/// Criterion 10: a repeated run with the same seed emits a byte-identical
/// report CSV, and serialized models reproduce predictions within 1e-12 at
/// 100 random queries.
bool criterion_determinism(std::string& detail) {
    mfk::RunSpec spec;
    spec.problem = "no2";
    spec.n_lf = 20;
    spec.n_hf = 10;
    spec.repeats = 3;
    spec.seed = 1010;
    spec.record_time = false;
    const std::string csv_a = mfk::run_benchmark(spec).to_csv();
    const std::string csv_b = mfk::run_benchmark(spec).to_csv();
    const bool csv_identical = csv_a == csv_b;

    const DataPair data = sample_problem("no1", 30, 12, 1011);
    const VectorXd theta = VectorXd::Constant(2, 3.0);
    const mfk::KrigingModel krig = mfk::KrigingModel::fit(data.lf, theta);
    const mfk::HkModel hk = mfk::HkModel::fit(krig, data.hf, theta);
    const mfk::KrigingModel krig_back = mfk::kriging_from_json(mfk::to_json(krig));
    const mfk::HkModel hk_back = mfk::hk_from_json(mfk::to_json(hk));

    mfk::Rng rng(1012);
    const mfk::Domain& domain = data.lf.domain;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        VectorXd q(2);
        for (int j = 0; j < 2; ++j) q[j] = rng.uniform(domain.lower[j], domain.upper[j]);
        worst = std::max(worst, std::abs(krig.predict(q) - krig_back.predict(q)));
        worst = std::max(worst, std::abs(hk.predict(q) - hk_back.predict(q)));
    }

    std::ostringstream os;
    os << "csv_identical=" << (csv_identical ? "yes" : "no") << " worst_roundtrip_diff=" << worst;
    detail = os.str();
    return csv_identical && worst <= 1e-12;
}

struct Criterion {
    const char* label;
    bool (*run)(std::string&);
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"forrester fixed-site beta* in [1.80, 1.95], both strategies, < 1 s",
         criterion_forrester_beta},
        {"no6 accuracy: hd mean R2 >= 0.95 and hd RMSE < conventional RMSE",
         criterion_no6_accuracy},
        {"hd fit time <= 1/3 conventional on no6/no7; eval budgets hold", criterion_speedup},
        {"MIC screen ranks x8 top on no6 LF (>= 7/10 seeds, x1..x3 never)",
         criterion_mic_ranking},
        {"50 random models interpolate training data within 1e-6 of range",
         criterion_interpolation},
        {"likelihoods match dense oracle within 1e-8 on 100 instances",
         criterion_likelihood_oracle},
        {"hd stage monotonicity on no2/no6 across 10 seeds", criterion_stage_monotonicity},
        {"MIC sanity: line >= 0.99, noise <= 0.35, monotone invariance", criterion_mic_sanity},
        {"no6 hd mean RMSE at 12d+6d <= at 8d+4d over 10 paired seeds",
         criterion_sample_size_trend},
        {"byte-identical reports per seed; model round-trips within 1e-12",
         criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("%s criterion %2zu: %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
