#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace supadd {

struct SimplexOptions {
    double f_tol = 1e-9;          // spread of simplex values at which to stop
    std::size_t max_evals = 5000;
    double initial_step = 0.05;   // edge length of the starting simplex
    std::vector<double> initial_steps;  // per-coordinate override when nonempty
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead maximization. Deterministic given the start
/// point: the initial simplex is the start plus one axis step per coordinate.
inline SimplexResult nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                                     const std::vector<double>& start, const SimplexOptions& opts = {}) {
    const std::size_t n = start.size();
    const double alpha = 1.0, gamma = 2.0, beta = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> x(n + 1, start);
    for (std::size_t i = 0; i < n; ++i)
        x[i + 1][i] += opts.initial_steps.empty() ? opts.initial_step : opts.initial_steps[i];

    std::size_t evals = 0;
    std::vector<double> fx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fx[i] = f(x[i]);
        ++evals;
    }

    std::vector<std::size_t> idx(n + 1);
    auto order = [&]() {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fx[a] > fx[b]; });
    };

    SimplexResult result;
    while (evals < opts.max_evals) {
        order();
        const std::size_t best = idx[0], worst = idx[n], second_worst = idx[n - 1];
        if (std::abs(fx[best] - fx[worst]) < opts.f_tol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += x[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + coeff * (centroid[k] - x[worst][k]);
            return p;
        };

        const auto reflected = blend(alpha);
        const double fr = f(reflected);
        ++evals;

        if (fr > fx[best]) {
            const auto expanded = blend(gamma);
            const double fe = f(expanded);
            ++evals;
            if (fe > fr) {
                x[worst] = expanded;
                fx[worst] = fe;
            } else {
                x[worst] = reflected;
                fx[worst] = fr;
            }
        } else if (fr > fx[second_worst]) {
            x[worst] = reflected;
            fx[worst] = fr;
        } else {
            const auto contracted = blend(-beta);
            const double fc = f(contracted);
            ++evals;
            if (fc > fx[worst]) {
                x[worst] = contracted;
                fx[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best vertex
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        x[i][k] = x[best][k] + sigma * (x[i][k] - x[best][k]);
                    fx[i] = f(x[i]);
                    ++evals;
                }
            }
        }
    }

    order();
    result.x = x[idx[0]];
    result.value = fx[idx[0]];
    result.evaluations = evals;
    return result;
}

/// Repeats Nelder-Mead from its own optimum with a fresh simplex until the
/// value stops improving. Deterministic; helps in higher dimensions where a
/// single simplex collapses early.
inline SimplexResult nelder_mead_max_iterated(const std::function<double(const std::vector<double>&)>& f,
                                              const std::vector<double>& start,
                                              const SimplexOptions& opts = {}, int max_rounds = 6) {
    SimplexResult best = nelder_mead_max(f, start, opts);
    for (int round = 1; round < max_rounds; ++round) {
        SimplexOptions next = opts;
        const double shrink = std::pow(0.5, round);
        next.initial_step = opts.initial_step * shrink;
        for (double& s : next.initial_steps) s *= shrink;
        SimplexResult r = nelder_mead_max(f, best.x, next);
        r.evaluations += best.evaluations;
        if (r.value <= best.value + opts.f_tol) {
            r.converged = r.converged || best.converged;
            if (r.value > best.value) best = r;
            best.evaluations = r.evaluations;
            break;
        }
        best = r;
    }
    return best;
}

}  // namespace supadd
