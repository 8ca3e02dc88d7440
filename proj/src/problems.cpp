// SPDX-License-Identifier: MIT
#include "mfk/problems.hpp"

#include <cmath>
#include <numbers>

#include "mfk/errors.hpp"

// Several of the fidelity pairs below are deliberate variants of classic
// named test functions; docs/transcription_notes.md records where and how
// they differ from the classic forms.

namespace mfk {

namespace {

using Eigen::VectorXd;

double no1_hf(const VectorXd& x) {
    const double x1 = x[0], x2 = x[1];
    return 4.0 * x1 * x1 - 2.1 * std::pow(x1, 4) + std::pow(x1, 6) / 3.0 + x1 * x2 -
           4.0 * x2 * x2 + 4.0 * std::pow(x2, 4);
}

double no1_lf(const VectorXd& x) {
    return no1_hf(0.7 * x) + x[0] * x[1] - 65.0;
}

double no2_hf(const VectorXd& x) {
    const double x1 = x[0], x2 = x[1];
    const double t = x2 - 1.275 * std::pow(x1 / std::numbers::pi, 2) - 5.0 * x1 / std::numbers::pi - 6.0;
    return t * t + 10.0 * (1.0 - 0.125 / std::numbers::pi) * std::cos(x1);
}

double no2_lf(const VectorXd& x) {
    return 0.8 * no2_hf(x) - 2.5 * x[1] - 30.0;
}

double no3_hf(const VectorXd& x) {
    const double a1 = x[0] - 1.0, a2 = x[1] - 1.0, a3 = x[2] - 1.0, a4 = x[3] - 1.0;
    return 100.0 * std::pow(x[0] * x[0] - x[1], 2) + a1 * a1 + a3 * a3 +
           90.0 * (x[2] * x[2] - x[3]) + 10.1 * (a2 * a2 + a4 * a4) + 19.8 * a2 * a4;
}

double no3_lf(const VectorXd& x) {
    const double a1 = 0.9 * x[0] - 1.0, a3 = 0.9 * x[2] - 1.0;
    const double a2 = 0.5 * x[1] - 1.0, a4 = 0.5 * x[3] - 1.0;
    return 90.0 * std::pow(x[0] * x[0] - x[1], 2) + a1 * a1 + a3 * a3 +
           50.0 * (x[2] * x[2] - x[3]) + 5.0 * (a2 * a2 + a4 * a4) + 10.0 * a2 * a4;
}

double no4_sum(const VectorXd& x, const double (&coeff)[10]) {
    double lse = 0.0;
    for (int k = 0; k < 10; ++k) lse += std::exp(x[k]);
    lse = std::log(lse);
    double total = 0.0;
    for (int i = 0; i < 10; ++i) total += std::exp(x[i]) * (coeff[i] + x[i] - lse);
    return total;
}

double no4_hf(const VectorXd& x) {
    static constexpr double a[10] = {-6.089,  -17.164, -34.054, -5.914,  -24.721,
                                     -14.986, -24.100, -10.708, -26.662, -22.179};
    return no4_sum(x, a);
}

double no4_lf(const VectorXd& x) {
    static constexpr double b[10] = {-5.0, -10.0, -30.0, -5.0, -25.0, -15.0, -20.0, -10.0, -25.0, -20.0};
    return no4_sum(x, b);
}

double no5_hf(const VectorXd& x) {
    double total = 0.0;
    for (int i = 0; i < 9; ++i)
        total += std::pow(x[i + 1] * x[i + 1] - x[i], 2) + std::pow(x[i] - 1.0, 2);
    return total;
}

double no5_lf(const VectorXd& x) {
    double total = 0.0;
    for (int i = 0; i < 9; ++i)
        total += 0.9 * std::pow(x[i + 1], 4) + 2.2 * x[i] * x[i] - 1.8 * x[i] * x[i + 1] + 0.5;
    return total;
}

double no6_hf(const VectorXd& x) {
    return x[0] * x[0] + x[1] * x[1] + x[0] * x[1] - 14.0 * x[0] - 16.0 * x[1] +
           std::pow(x[2] - 10.0, 2) + 4.0 * std::pow(x[3] - 5.0, 2) + std::pow(x[4] - 3.0, 2) +
           2.0 * std::pow(x[5] - 1.0, 2) + 5.0 * x[6] * x[6] + 7.0 * std::pow(x[7] - 11.0, 2) +
           2.0 * std::pow(x[8] - 10.0, 2) + std::pow(x[9] - 7.0, 2) + 45.0;
}

double no6_lf(const VectorXd& x) {
    return 0.8 * no6_hf(x) - x.sum() + 100.0;
}

double chained_quartic(const VectorXd& x, int d) {
    double total = std::pow(x[0] - 1.0, 2);
    for (int i = 1; i < d; ++i)
        total += (i + 1) * std::pow(2.0 * x[i] * x[i] - x[i - 1], 2);
    return total;
}

double no7_hf(const VectorXd& x) { return chained_quartic(x, 16); }
double no7_lf(const VectorXd& x) { return 0.9 * no7_hf(x) + 10.0; }

double no8_hf(const VectorXd& x) { return chained_quartic(x, 30); }

double no8_lf(const VectorXd& x) {
    double cross = 0.0;
    for (int i = 0; i < 29; ++i) cross += 0.4 * x[i] * x[i + 1];
    return 0.8 * no8_hf(x) - cross - 50.0;
}

double no9_hf(const VectorXd& x) {
    double total = 0.0;
    for (int i = 0; i < 50; ++i) total += (i + 1) * (x[i] * x[i] + std::pow(x[i], 4));
    return total;
}

double no9_lf(const VectorXd& x) {
    double corr = 0.0;
    for (int i = 0; i < 50; ++i) corr += (i + 1) * x[i] * x[i] / 10.0 + x[i];
    return 0.8 * no9_hf(x) - corr - 25.0;
}

double forrester_hf(const VectorXd& x) {
    return std::pow(6.0 * x[0] - 2.0, 2) * std::sin(12.0 * x[0] - 4.0);
}

double forrester_lf(const VectorXd& x) {
    return 0.5 * forrester_hf(x) + 10.0 * (x[0] - 0.5) - 5.0;
}

BiFidelityProblem make(std::string id, int d, double lo, double hi,
                       std::function<double(const VectorXd&)> hf,
                       std::function<double(const VectorXd&)> lf) {
    BiFidelityProblem p;
    p.id = std::move(id);
    p.d = d;
    p.domain = Domain::cube(d, lo, hi);
    p.f_hf = std::move(hf);
    p.f_lf = std::move(lf);
    return p;
}

BiFidelityProblem make_no2() {
    BiFidelityProblem p;
    p.id = "no2";
    p.d = 2;
    p.domain.lower = Eigen::Vector2d(-5.0, 0.0);
    p.domain.upper = Eigen::Vector2d(10.0, 15.0);
    p.f_hf = no2_hf;
    p.f_lf = no2_lf;
    return p;
}

}  // namespace

BiFidelityProblem get_problem(const std::string& id) {
    if (id == "no1") return make("no1", 2, -2.0, 2.0, no1_hf, no1_lf);
    if (id == "no2") return make_no2();
    if (id == "no3") return make("no3", 4, -4.0, 4.0, no3_hf, no3_lf);
    if (id == "no4") return make("no4", 10, -5.0, 5.0, no4_hf, no4_lf);
    if (id == "no5") return make("no5", 10, -3.0, 3.0, no5_hf, no5_lf);
    if (id == "no6") return make("no6", 10, -10.0, 11.0, no6_hf, no6_lf);
    if (id == "no7") return make("no7", 16, -5.0, 5.0, no7_hf, no7_lf);
    if (id == "no8") return make("no8", 30, -3.0, 3.0, no8_hf, no8_lf);
    if (id == "no9") return make("no9", 50, -2.0, 4.0, no9_hf, no9_lf);
    if (id == "forrester") return make("forrester", 1, 0.0, 1.0, forrester_hf, forrester_lf);
    throw InputError("unknown problem id '" + id + "'");
}

std::vector<std::string> problem_ids() {
    return {"no1", "no2", "no3", "no4", "no5", "no6", "no7", "no8", "no9", "forrester"};
}

}  // namespace mfk
