// SPDX-License-Identifier: MIT
#include "mfk/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mfk/errors.hpp"
#include "mfk/rng.hpp"

namespace mfk {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Eigen::VectorXd clip_box(Eigen::VectorXd x, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
}

}  // namespace

std::pair<Eigen::VectorXd, TuneTrace> ga_maximize(const Objective& objective,
                                                  const Eigen::VectorXd& lo,
                                                  const Eigen::VectorXd& hi,
                                                  const GaOptions& options, std::uint64_t seed) {
    const int d = static_cast<int>(lo.size());
    const int pop = std::max(options.population, 2);
    const int gens = std::max(options.generations, 1);
    Rng rng(seed);

    auto random_point = [&] {
        Eigen::VectorXd x(d);
        for (int i = 0; i < d; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        return x;
    };

    std::vector<Eigen::VectorXd> population(static_cast<std::size_t>(pop));
    std::vector<double> fitness(static_cast<std::size_t>(pop), kNegInf);
    for (auto& x : population) x = random_point();

    TuneTrace trace;
    Eigen::VectorXd best_x = population[0];
    double best_f = kNegInf;

    auto evaluate_all = [&] {
        for (int i = 0; i < pop; ++i) {
            fitness[static_cast<std::size_t>(i)] = objective(population[static_cast<std::size_t>(i)]);
            ++trace.evaluations_used;
            if (fitness[static_cast<std::size_t>(i)] > best_f) {
                best_f = fitness[static_cast<std::size_t>(i)];
                best_x = population[static_cast<std::size_t>(i)];
            }
        }
    };

    evaluate_all();
    const double initial_best = best_f;

    auto tournament = [&]() -> const Eigen::VectorXd& {
        const auto a = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(pop)));
        const auto b = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(pop)));
        return fitness[a] >= fitness[b] ? population[a] : population[b];
    };

    const int n_mig = static_cast<int>(std::lround(options.migration_fraction * pop));
    const int n_children = std::max(pop - 1 - n_mig, 0);
    const int n_xover = static_cast<int>(std::lround(options.crossover_fraction * n_children));

    for (int gen = 1; gen < gens; ++gen) {
        const auto elite_idx = static_cast<std::size_t>(
            std::distance(fitness.begin(), std::max_element(fitness.begin(), fitness.end())));
        std::vector<Eigen::VectorXd> next;
        next.reserve(static_cast<std::size_t>(pop));
        next.push_back(population[elite_idx]);

        for (int c = 0; c < n_children && static_cast<int>(next.size()) < pop; ++c) {
            if (c < n_xover) {
                const Eigen::VectorXd& p1 = tournament();
                const Eigen::VectorXd& p2 = tournament();
                Eigen::VectorXd child(d);
                for (int i = 0; i < d; ++i) child[i] = p1[i] + rng.uniform01() * (p2[i] - p1[i]);
                next.push_back(clip_box(std::move(child), lo, hi));
            } else {
                Eigen::VectorXd child = tournament();
                for (int i = 0; i < d; ++i) child[i] += options.mutation_sigma * rng.normal();
                next.push_back(clip_box(std::move(child), lo, hi));
            }
        }
        while (static_cast<int>(next.size()) < pop) next.push_back(random_point());

        population = std::move(next);
        evaluate_all();
    }

    if (!std::isfinite(best_f))
        throw TuningFailedError("GA saw no finite objective value in the whole budget");

    trace.best_objective = best_f;
    StageRecord rec;
    rec.stage = "ga";
    rec.evals = trace.evaluations_used;
    rec.objective_before = initial_best;
    rec.objective_after = best_f;
    rec.theta = best_x;
    trace.stage_log.push_back(std::move(rec));
    return {best_x, trace};
}

namespace {

// Brent's bounded scalar minimization, budget-limited. Returns the best
// point/value seen and the evaluation count.
struct BrentResult {
    double x = 0.0;
    double f = 0.0;
    long evals = 0;
};

BrentResult brent_minimize(const std::function<double(double)>& f, double a, double b, int budget,
                           double tol) {
    constexpr double golden = 0.3819660112501051;
    BrentResult out;
    if (budget < 1) {
        out.x = 0.5 * (a + b);
        out.f = std::numeric_limits<double>::infinity();
        return out;
    }

    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = f(x);
    ++out.evals;
    double fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    while (out.evals < budget) {
        const double m = 0.5 * (a + b);
        const double tol1 = tol * std::fabs(x) + 1e-12;
        const double tol2 = 2.0 * tol1;
        if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;

        bool parabolic = false;
        if (std::fabs(e) > tol1) {
            // parabola through x, v, w
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            const double e_old = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }

        const double u = (std::fabs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        const double fu = f(u);
        ++out.evals;

        if (fu <= fx) {
            if (u < x)
                b = x;
            else
                a = x;
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x)
                a = u;
            else
                b = u;
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    out.x = x;
    out.f = fx;
    return out;
}

}  // namespace

OnedResult oned_maximize(const ScalarObjective& objective, double lo, double hi, int budget) {
    if (!(lo > 0.0 && hi > lo)) throw InputError("oned_maximize requires 0 < lo < hi");
    const double tlo = std::log10(lo);
    const double thi = std::log10(hi);

    auto neg_log = [&](double t) { return -objective(std::pow(10.0, t)); };

    // Three restarts over equal log-subintervals guard against multimodality.
    constexpr int kRestarts = 3;
    OnedResult result;
    result.objective = kNegInf;
    const int per = std::max(budget / kRestarts, 1);
    for (int k = 0; k < kRestarts; ++k) {
        const double a = tlo + (thi - tlo) * k / kRestarts;
        const double b = tlo + (thi - tlo) * (k + 1) / kRestarts;
        const int allowed = std::min(per, budget - static_cast<int>(result.evals));
        if (allowed < 1) break;
        BrentResult br = brent_minimize(neg_log, a, b, allowed, 1e-10);
        result.evals += br.evals;
        if (-br.f > result.objective) {
            result.objective = -br.f;
            result.s_star = std::pow(10.0, br.x);
        }
    }
    if (!std::isfinite(result.objective))
        throw TuningFailedError("scalar search saw no finite objective value");
    result.s_star = std::clamp(result.s_star, lo, hi);
    return result;
}

std::pair<Eigen::VectorXd, TuneTrace> local_refine(const Objective& objective,
                                                   const Eigen::VectorXd& start,
                                                   const Eigen::VectorXd& lo,
                                                   const Eigen::VectorXd& hi, int budget) {
    const int n = static_cast<int>(start.size());
    TuneTrace trace;

    Eigen::VectorXd best_x = clip_box(start, lo, hi);
    double best_f = kNegInf;

    auto eval = [&](const Eigen::VectorXd& x) {
        const double f = objective(x);
        ++trace.evaluations_used;
        if (f > best_f) {
            best_f = f;
            best_x = x;
        }
        return f;
    };

    const double start_value = eval(clip_box(start, lo, hi));

    constexpr double rho = 1.0;   // reflection
    constexpr double chi = 2.0;   // expansion
    constexpr double gam = 0.5;   // contraction
    constexpr double sig = 0.5;   // shrink

    // Each round builds a simplex around the incumbent, one step per
    // coordinate, and runs Nelder-Mead until the simplex collapses. Clipping
    // against the box can flatten the simplex onto a face, so on collapse the
    // search restarts around the best point with a halved step while budget
    // remains.
    double step_scale = 0.5;
    while (trace.evaluations_used < budget && step_scale >= 1e-8) {
        std::vector<Eigen::VectorXd> simplex{best_x};
        std::vector<double> value{best_f};
        for (int i = 0; i < n && trace.evaluations_used < budget; ++i) {
            Eigen::VectorXd x = simplex[0];
            const double step = step_scale * std::min(1.0, hi[i] - lo[i]);
            x[i] = (x[i] + step <= hi[i]) ? x[i] + step : x[i] - step;
            simplex.push_back(clip_box(std::move(x), lo, hi));
            value.push_back(eval(simplex.back()));
        }
        const auto n_vertices = simplex.size();
        if (n_vertices != static_cast<std::size_t>(n) + 1) break;

        std::vector<std::size_t> order(n_vertices);
        while (trace.evaluations_used < budget) {
            std::iota(order.begin(), order.end(), 0);
            // descending by value: order[0] is the best vertex
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });
            const std::size_t worst = order[n_vertices - 1];
            const std::size_t second_worst = order[n_vertices - 2];

            // convergence: simplex collapsed
            double spread = 0.0;
            for (std::size_t i = 1; i < n_vertices; ++i)
                spread = std::max(spread, (simplex[order[i]] - simplex[order[0]]).lpNorm<Eigen::Infinity>());
            if (spread < 1e-10) break;

            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
            for (std::size_t i = 0; i < n_vertices; ++i)
                if (i != worst) centroid += simplex[i];
            centroid /= static_cast<double>(n_vertices - 1);

            const Eigen::VectorXd reflected =
                clip_box(centroid + rho * (centroid - simplex[worst]), lo, hi);
            const double f_reflected = eval(reflected);

            if (f_reflected > value[order[0]]) {
                if (trace.evaluations_used < budget) {
                    const Eigen::VectorXd expanded =
                        clip_box(centroid + chi * (reflected - centroid), lo, hi);
                    const double f_expanded = eval(expanded);
                    if (f_expanded > f_reflected) {
                        simplex[worst] = expanded;
                        value[worst] = f_expanded;
                        continue;
                    }
                }
                simplex[worst] = reflected;
                value[worst] = f_reflected;
            } else if (f_reflected > value[second_worst]) {
                simplex[worst] = reflected;
                value[worst] = f_reflected;
            } else {
                if (trace.evaluations_used >= budget) break;
                const bool outside = f_reflected > value[worst];
                const Eigen::VectorXd contracted =
                    outside ? clip_box(centroid + gam * (reflected - centroid), lo, hi)
                            : clip_box(centroid - gam * (centroid - simplex[worst]), lo, hi);
                const double f_contracted = eval(contracted);
                if (f_contracted > (outside ? f_reflected : value[worst])) {
                    simplex[worst] = contracted;
                    value[worst] = f_contracted;
                } else {
                    // shrink toward the best vertex
                    for (std::size_t i = 0; i < n_vertices && trace.evaluations_used < budget; ++i) {
                        if (i == order[0]) continue;
                        simplex[i] = clip_box(
                            simplex[order[0]] + sig * (simplex[i] - simplex[order[0]]), lo, hi);
                        value[i] = eval(simplex[i]);
                    }
                }
            }
        }

        step_scale *= 0.5;
    }

    trace.best_objective = best_f;
    StageRecord rec;
    rec.stage = "local_refine";
    rec.evals = trace.evaluations_used;
    rec.objective_before = start_value;
    rec.objective_after = best_f;
    rec.theta = best_x;
    trace.stage_log.push_back(std::move(rec));
    return {best_x, trace};
}

}  // namespace mfk
