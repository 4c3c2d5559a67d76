#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace supadd {

struct ScalarMaxResult {
    double x = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Golden-section search for the maximum of a unimodal function on [a, b].
/// Stops when the bracketing interval is shorter than x_tol.
inline ScalarMaxResult golden_section_max(const std::function<double(double)>& f, double a, double b,
                                          double x_tol = 1e-9) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.6180...
    std::size_t evals = 0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evals += 2;
    while (b - a > x_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    ScalarMaxResult r;
    r.x = 0.5 * (a + b);
    r.value = f(r.x);
    r.evaluations = evals + 1;
    return r;
}

/// Bisection for the root of f on [lo, hi]; requires a sign change.
/// Returns the midpoint of the final bracket of width <= x_tol.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol = 1e-6) {
    double flo = f(lo);
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace supadd
