// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "mfk/errors.hpp"
#include "mfk/kriging.hpp"
#include "mfk/matern.hpp"
#include "mfk/model_io.hpp"
#include "mfk/rng.hpp"
#include "mfk/sample_set.hpp"
#include "mfk/sampling.hpp"
#include "oracles.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;
using mfk::Domain;
using mfk::Fidelity;
using mfk::SampleSet;

namespace {

SampleSet sine_set(int m, std::uint64_t seed) {
    const Domain domain = Domain::cube(1, 0.0, 1.0);
    const mfk::Design design = mfk::lhs(m, domain, seed);
    VectorXd y(m);
    for (int i = 0; i < m; ++i) y[i] = std::sin(8.0 * design.points(i, 0));
    return SampleSet::from_design(design, y, Fidelity::high);
}

}  // namespace

TEST_CASE("matern52 value at unit scaled distance") {
    VectorXd x0 = VectorXd::Zero(1);
    VectorXd x1 = VectorXd::Ones(1);
    VectorXd theta = VectorXd::Ones(1);
    CHECK(mfk::matern52(x0, x1, theta) == doctest::Approx(0.52399410883182029).epsilon(1e-14));
    CHECK(mfk::matern52(x0, x0, theta) == 1.0);
}

TEST_CASE("matern52 is symmetric and decays monotonically") {
    VectorXd theta(2);
    theta << 1.5, 0.3;
    VectorXd a(2), b(2);
    a << 0.1, 0.9;
    b << 0.7, 0.2;
    CHECK(mfk::matern52(a, b, theta) == mfk::matern52(b, a, theta));

    VectorXd origin = VectorXd::Zero(1);
    VectorXd t = VectorXd::Ones(1);
    double prev = 1.0;
    for (double h = 0.05; h <= 3.0; h += 0.05) {
        VectorXd x = VectorXd::Constant(1, h);
        const double v = mfk::matern52(origin, x, t);
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
}

TEST_CASE("matern52 rejects non-finite input") {
    VectorXd theta = VectorXd::Ones(1);
    VectorXd x0 = VectorXd::Zero(1);
    VectorXd bad = VectorXd::Constant(1, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(mfk::matern52(x0, bad, theta), mfk::InputError);
    VectorXd inf = VectorXd::Constant(1, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(mfk::matern52(x0, inf, theta), mfk::InputError);
}

TEST_CASE("corr_matrix basics") {
    VectorXd theta = VectorXd::Ones(2);

    MatrixXd one_site(1, 2);
    one_site << 0.3, 0.4;
    const MatrixXd r1 = mfk::corr_matrix(one_site, theta);
    REQUIRE(r1.rows() == 1);
    CHECK(r1(0, 0) == 1.0);

    MatrixXd dup(2, 2);
    dup << 0.5, 0.5, 0.5, 0.5;
    const MatrixXd r2 = mfk::corr_matrix(dup, theta);
    CHECK(r2(0, 1) == 1.0);
    CHECK(r2(1, 0) == 1.0);
}

TEST_CASE("corr_matrix commutes with site permutation") {
    mfk::Rng rng(11);
    MatrixXd sites(6, 3);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) sites(i, j) = rng.uniform01();
    VectorXd theta(3);
    theta << 0.5, 2.0, 7.0;

    const MatrixXd r = mfk::corr_matrix(sites, theta);
    MatrixXd reversed = sites.colwise().reverse();
    const MatrixXd r_rev = mfk::corr_matrix(reversed, theta);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(r_rev(i, j) == doctest::Approx(r(5 - i, 5 - j)).epsilon(1e-15));
}

TEST_CASE("factorize nugget ladder") {
    const MatrixXd eye = MatrixXd::Identity(4, 4);
    CHECK(mfk::factorize(eye).nugget == 0.0);

    // two coincident sites make R exactly singular; the ladder must engage
    MatrixXd dup(2, 1);
    dup << 0.5, 0.5;
    const mfk::CholFactor f = mfk::factorize(mfk::corr_matrix(dup, VectorXd::Ones(1)));
    CHECK(f.nugget > 0.0);
    CHECK(f.nugget <= 1e-6);

    // a well-spread design needs no regularization
    const mfk::Design design = mfk::lhs(10, Domain::cube(2, 0.0, 1.0), 21);
    const mfk::CholFactor g =
        mfk::factorize(mfk::corr_matrix(design.domain.to_unit(design.points), VectorXd::Ones(2)));
    CHECK(g.nugget == 0.0);
}

TEST_CASE("factorize_with_nugget respects the stored shift") {
    MatrixXd dup(2, 1);
    dup << 0.5, 0.5;
    const MatrixXd r = mfk::corr_matrix(dup, VectorXd::Ones(1));
    CHECK_THROWS_AS(mfk::factorize_with_nugget(r, 0.0), mfk::SingularCorrelationError);
    const mfk::CholFactor f = mfk::factorize_with_nugget(r, 1e-8);
    CHECK(f.nugget == 1e-8);
}

TEST_CASE("uncorrelated limit recovers mean and population variance") {
    VectorXd y(5);
    y << 1.0, -2.0, 0.5, 3.0, -1.5;
    const double mean = y.mean();
    const VectorXd centered = y.array() - mean;
    const double pop_var = centered.squaredNorm() / 5.0;

    const mfk::CholFactor chol = mfk::factorize(MatrixXd::Identity(5, 5));
    const mfk::LikelihoodParts parts = mfk::concentrated_parts(chol, centered);
    CHECK(parts.mu == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(parts.sigma2 == doctest::Approx(pop_var).epsilon(1e-14));
    CHECK(parts.objective == doctest::Approx(-2.5 * std::log(pop_var)).epsilon(1e-12));
}

TEST_CASE("likelihood agrees with the dense-inverse oracle") {
    mfk::Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 3 + static_cast<int>(rng.below(18));
        const int d = 1 + static_cast<int>(rng.below(5));
        MatrixXd sites(m, d);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < d; ++j) sites(i, j) = rng.uniform01();
        VectorXd theta(d);
        for (int j = 0; j < d; ++j) theta[j] = std::pow(10.0, rng.uniform(-2.0, 1.5));
        VectorXd y(m);
        for (int i = 0; i < m; ++i) y[i] = rng.uniform(-3.0, 3.0);
        const VectorXd centered = y.array() - y.mean();

        const mfk::CholFactor chol = mfk::factorize(mfk::corr_matrix(sites, theta));
        const double lib = mfk::concentrated_parts(chol, centered).objective;
        const double ref = oracles::dense_kriging_objective(sites, theta, centered, chol.nugget);
        CAPTURE(m);
        CAPTURE(d);
        CHECK(lib == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("constant responses produce a finite objective") {
    const mfk::Design design = mfk::lhs(8, Domain::cube(2, 0.0, 1.0), 17);
    const SampleSet samples =
        SampleSet::from_design(design, VectorXd::Constant(8, 4.2), Fidelity::low);
    const double ll = mfk::concentrated_log_likelihood(samples, VectorXd::Ones(2));
    CHECK(std::isfinite(ll));
}

TEST_CASE("two-point likelihood matches the closed form") {
    MatrixXd sites(2, 1);
    sites << 0.0, 0.6;
    VectorXd theta = VectorXd::Constant(1, 3.0);
    VectorXd y(2);
    y << 1.4, -0.8;
    const VectorXd centered = y.array() - y.mean();

    const double r = mfk::matern52(sites.row(0).transpose(), sites.row(1).transpose(), theta);
    const oracles::DenseParts ref = oracles::two_point_parts(r, y[0], y[1]);

    const mfk::CholFactor chol = mfk::factorize(mfk::corr_matrix(sites, theta));
    REQUIRE(chol.nugget == 0.0);
    const mfk::LikelihoodParts parts = mfk::concentrated_parts(chol, centered);
    CHECK(parts.mu == doctest::Approx(ref.mu - y.mean()).epsilon(1e-12));
    CHECK(parts.sigma2 == doctest::Approx(ref.sigma2).epsilon(1e-12));
    CHECK(parts.objective == doctest::Approx(ref.objective).epsilon(1e-12));
}

TEST_CASE("fitted model interpolates its training data") {
    const SampleSet samples = sine_set(25, 5);
    const mfk::KrigingModel model = mfk::KrigingModel::fit(samples, VectorXd::Constant(1, 10.0));
    REQUIRE(model.nugget() <= 1e-10);

    const VectorXd raw = samples.raw_responses();
    const double range = raw.maxCoeff() - raw.minCoeff();
    for (int i = 0; i < samples.count(); ++i) {
        const double pred = model.predict_unit(samples.sites.row(i).transpose());
        CHECK(std::abs(pred - raw[i]) <= 1e-6 * range);
    }
}

TEST_CASE("response translation shifts predictions by the same constant") {
    const Domain domain = Domain::cube(2, -1.0, 1.0);
    const mfk::Design design = mfk::lhs(15, domain, 9);
    VectorXd y(15);
    for (int i = 0; i < 15; ++i)
        y[i] = design.points(i, 0) * design.points(i, 0) + 0.5 * design.points(i, 1);

    const VectorXd theta = VectorXd::Constant(2, 5.0);
    const mfk::KrigingModel base =
        mfk::KrigingModel::fit(SampleSet::from_design(design, y, Fidelity::high), theta);
    const double c = 123.75;
    const mfk::KrigingModel shifted = mfk::KrigingModel::fit(
        SampleSet::from_design(design, (y.array() + c).matrix(), Fidelity::high), theta);

    mfk::Rng rng(77);
    for (int q = 0; q < 30; ++q) {
        VectorXd x(2);
        x << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
        CHECK(shifted.predict(x) - base.predict(x) == doctest::Approx(c).epsilon(1e-10));
    }
}

TEST_CASE("far queries collapse to the estimated trend") {
    const SampleSet samples = sine_set(12, 13);
    const mfk::KrigingModel model = mfk::KrigingModel::fit(samples, VectorXd::Constant(1, 50.0));
    VectorXd far(1);
    far << 40.0;  // unit coordinate 40, every correlation is numerically zero
    CHECK(model.predict(far) ==
          doctest::Approx(model.mu_star() + model.samples().response_mean).epsilon(1e-12));
}

TEST_CASE("two-site model: equidistant queries return the GLS trend") {
    // 1' R^-1 (y - mu 1) = 0 at the GLS estimate, so wherever the query is
    // equally correlated with both sites the prediction is exactly mu + mean.
    const Domain domain = Domain::cube(1, 0.0, 1.0);
    MatrixXd pts(2, 1);
    pts << 0.0, 1.0;
    VectorXd y(2);
    y << 2.0, 5.0;
    const SampleSet samples = SampleSet::from_raw(pts, y, domain, Fidelity::high);
    const mfk::KrigingModel model = mfk::KrigingModel::fit(samples, VectorXd::Constant(1, 2.0));

    VectorXd mid(1);
    mid << 0.5;
    CHECK(model.predict(mid) ==
          doctest::Approx(model.mu_star() + samples.response_mean).epsilon(1e-12));
    // and the trend itself matches the symmetric closed form mu = (y1+y2)/2
    CHECK(model.mu_star() + samples.response_mean == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("alpha solves the correlation system") {
    const SampleSet samples = sine_set(14, 23);
    const VectorXd theta = VectorXd::Constant(1, 8.0);
    const mfk::KrigingModel model = mfk::KrigingModel::fit(samples, theta);

    MatrixXd r = mfk::corr_matrix(samples.sites, theta);
    r.diagonal().array() += model.nugget();
    const VectorXd rhs = (samples.responses.array() - model.mu_star()).matrix();
    const VectorXd alpha_ref = r.inverse() * rhs;
    CHECK((model.alpha() - alpha_ref).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("serialization round-trips predictions") {
    const SampleSet samples = sine_set(100, 41);
    const mfk::KrigingModel model = mfk::KrigingModel::fit(samples, VectorXd::Constant(1, 12.0));
    const mfk::KrigingModel loaded = mfk::kriging_from_json(mfk::to_json(model));

    mfk::Rng rng(57);
    for (int q = 0; q < 100; ++q) {
        VectorXd x(1);
        x << rng.uniform01();
        CHECK(std::abs(loaded.predict(x) - model.predict(x)) <= 1e-12);
    }
    CHECK(loaded.nugget() == model.nugget());
    CHECK(loaded.sigma2() == doctest::Approx(model.sigma2()).epsilon(1e-14));
}

TEST_CASE("fit argument validation") {
    const SampleSet samples = sine_set(10, 3);

    CHECK_THROWS_AS(mfk::KrigingModel::fit(samples, VectorXd::Constant(1, 1e-5)),
                    mfk::InputError);
    CHECK_THROWS_AS(mfk::KrigingModel::fit(samples, VectorXd::Constant(1, 1e3)),
                    mfk::InputError);
    CHECK_THROWS_AS(mfk::KrigingModel::fit(samples, VectorXd::Constant(2, 1.0)),
                    mfk::InputError);

    const Domain domain = Domain::cube(1, 0.0, 1.0);
    MatrixXd one(1, 1);
    one << 0.5;
    const SampleSet tiny =
        SampleSet::from_raw(one, VectorXd::Constant(1, 1.0), domain, Fidelity::low);
    CHECK_THROWS_AS(mfk::KrigingModel::fit(tiny, VectorXd::Ones(1)), mfk::InputError);

    const mfk::KrigingModel model = mfk::KrigingModel::fit(samples, VectorXd::Ones(1));
    const VectorXd wrong_dim = VectorXd::Ones(2);
    CHECK_THROWS_AS(model.predict(wrong_dim), mfk::InputError);
}
