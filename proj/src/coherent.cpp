#include "supadd/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "supadd/golden_section.hpp"
#include "supadd/nelder_mead.hpp"

namespace supadd {

std::string opt_result_to_json(const OptResult& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["argmax"] = r.argmax;
    j["evaluations"] = r.evaluations;
    j["converged"] = r.converged;
    return j.dump();
}

double coherent_information(const IsometryChannel& ch, const DensityOperator& rho) {
    const auto [out, env] = apply_pair(ch, rho);
    return von_neumann_entropy(out) - von_neumann_entropy(env);
}

namespace {

DensityOperator two_point_mixture(std::size_t dim, std::size_t i, std::size_t j, double weight_j) {
    ComplexMatrix m(dim, dim);
    m(i, i) = 1.0 - weight_j;
    m(j, j) = weight_j;
    return DensityOperator::from_psd(std::move(m));
}

}  // namespace

OptResult q1_platypus(double s) {
    const auto ch = platypus_channel(s);
    const auto f = [&](double u) { return coherent_information(ch, two_point_mixture(3, 0, 2, u)); };
    const auto r = golden_section_max(f, 0.0, 1.0, 1e-9);
    return {r.value, {r.x}, r.evaluations, true};
}

OptResult q1_md_closed_form(std::size_t d) {
    if (d < 3) throw DomainError("q1_md_closed_form: d must be >= 3");
    const double dd = static_cast<double>(d - 1);
    const auto f = [dd](double u) {
        const double g = (dd - 1.0) * eta((1.0 - u) / dd) + eta((1.0 - u) / dd + u);
        return binary_entropy(u) + (1.0 - u) * std::log2(dd) + g;
    };
    const auto r = golden_section_max(f, 0.0, 1.0, 1e-9);
    return {r.value, {r.x}, r.evaluations, true};
}

OptResult q1_amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw DomainError("q1_amplitude_damping: gamma outside [0, 1]");
    if (gamma >= 0.5) return {0.0, {0.0}, 1, true};  // antidegradable regime
    const auto ch = amplitude_damping(gamma);
    const auto f = [&](double z) { return coherent_information(ch, two_point_mixture(2, 0, 1, z)); };
    const auto r = golden_section_max(f, 0.0, 1.0, 1e-9);
    return {r.value, {r.x}, r.evaluations, true};
}

double q1_erasure(double lambda, std::size_t d) {
    if (lambda < 0.0 || lambda > 1.0) throw DomainError("q1_erasure: lambda outside [0, 1]");
    if (d < 2) throw DomainError("q1_erasure: d must be >= 2");
    return std::max((1.0 - 2.0 * lambda) * std::log2(static_cast<double>(d)), 0.0);
}

double q1_depolarizing(double p) {
    if (p < 0.0 || p > 0.75) throw DomainError("q1_depolarizing: p outside [0, 3/4]");
    return std::max(1.0 - binary_entropy(p) - p * std::log2(3.0), 0.0);
}

double hashing_point_depolarizing() {
    const auto f = [](double p) { return 1.0 - binary_entropy(p) - p * std::log2(3.0); };
    return bisect_root(f, 0.0, 0.25, 1e-6);
}

DensityOperator ansatz_rho(const AnsatzParams3& params, std::size_t d_other) {
    const auto [eps, r1, r2] = params;
    if (d_other != 2) throw InvalidParams("ansatz_rho: partner must be a qubit channel");
    if (eps < 0.0 || eps > 1.0 || r1 < 0.0 || r2 < 0.0 || r1 + r2 > 1.0 + 1e-12)
        throw InvalidParams("ansatz_rho: parameters outside the simplex domain");

    const std::size_t dim = 3 * d_other;
    ComplexMatrix m(dim, dim);
    m(0, 0) = r1;  // |00>
    m(1, 1) = r2;  // |01>
    // |chi_eps> = sqrt(1-eps)|20> + sqrt(eps)|11>, indices 4 and 3
    const double rc = std::max(1.0 - r1 - r2, 0.0);
    const double a = std::sqrt(1.0 - eps);
    const double b = std::sqrt(eps);
    m(4, 4) = rc * a * a;
    m(3, 3) = rc * b * b;
    m(4, 3) = rc * a * b;
    m(3, 4) = rc * a * b;
    return DensityOperator::from_psd(std::move(m));
}

namespace {

AnsatzParams3 project_ansatz(const std::vector<double>& x) {
    AnsatzParams3 p;
    p.epsilon = std::clamp(x[0], 0.0, 1.0);
    p.r1 = std::clamp(x[1], 0.0, 1.0);
    p.r2 = std::clamp(x[2], 0.0, 1.0);
    const double sum = p.r1 + p.r2;
    if (sum > 1.0) {
        p.r1 /= sum;
        p.r2 /= sum;
    }
    return p;
}

}  // namespace

OptResult delta_star_ansatz(const IsometryChannel& joint, Exec exec) {
    if (joint.dim_in != 6)
        throw DimensionMismatch("delta_star_ansatz: joint input must be a qutrit-qubit pair");

    constexpr std::size_t kGrid = 21;
    // The optimum can sit in a narrow basin at tiny eps (the log-singularity
    // direction), so the eps knots are graded toward zero.
    static constexpr double kEpsKnots[kGrid] = {0.0, 1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3,
                                                0.01, 0.02, 0.05, 0.1,  0.15, 0.2,  0.3,
                                                0.4,  0.5,  0.6,  0.7,  0.8,  0.9,  1.0};
    const auto knot = [](std::size_t i) { return static_cast<double>(i) / (kGrid - 1); };

    // Feasible (eps, r1, r2) grid points, r1 + r2 <= 1.
    std::vector<AnsatzParams3> points;
    points.reserve(kGrid * kGrid * (kGrid + 1) / 2);
    for (std::size_t ie = 0; ie < kGrid; ++ie)
        for (std::size_t i1 = 0; i1 < kGrid; ++i1)
            for (std::size_t i2 = 0; i2 + i1 < kGrid; ++i2)
                points.push_back({kEpsKnots[ie], knot(i1), knot(i2)});

    std::vector<double> values(points.size());
    parallel_for(points.size(), exec, [&](std::size_t i) {
        values[i] = coherent_information(joint, ansatz_rho(points[i]));
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;

    // The landscape can hold competing basins that exchange dominance (an
    // eps ~ 0 ridge against an interior optimum), so the polish restarts from
    // the best point of every eps slice that is still close to the grid top.
    constexpr double kSliceCutoff = 0.02;  // bits below the grid best
    std::vector<std::size_t> starts;
    starts.push_back(best);
    const std::size_t per_eps = points.size() / kGrid;
    for (std::size_t ie = 0; ie < kGrid; ++ie) {
        std::size_t slice_best = ie * per_eps;
        for (std::size_t k = 1; k < per_eps; ++k) {
            const std::size_t idx = ie * per_eps + k;
            if (values[idx] > values[slice_best]) slice_best = idx;
        }
        if (slice_best != best && values[slice_best] >= values[best] - kSliceCutoff)
            starts.push_back(slice_best);
    }

    const auto objective = [&](const std::vector<double>& x) {
        return coherent_information(joint, ansatz_rho(project_ansatz(x)));
    };
    std::vector<SimplexResult> polished(starts.size());
    parallel_for(starts.size(), exec, [&](std::size_t k) {
        const auto& pt = points[starts[k]];
        SimplexOptions opts;
        opts.f_tol = 1e-9;
        opts.max_evals = 1600;
        opts.initial_steps = {std::clamp(pt.epsilon * 0.5, 1e-4, 0.05), 0.025, 0.025};
        polished[k] = nelder_mead_max_iterated(objective, {pt.epsilon, pt.r1, pt.r2}, opts, 3);
    });

    OptResult r;
    r.value = values[best];
    r.argmax = {points[best].epsilon, points[best].r1, points[best].r2};
    r.evaluations = values.size();
    bool any_converged = false;
    for (const auto& res : polished) {
        r.evaluations += res.evaluations;
        any_converged = any_converged || res.converged;
        if (res.value > r.value) {
            const auto p = project_ansatz(res.x);
            r.value = res.value;
            r.argmax = {p.epsilon, p.r1, p.r2};
        }
    }
    if (!any_converged)
        throw ConvergenceFailure("delta_star_ansatz: simplex polish exhausted its budget");
    r.converged = true;
    return r;
}

DensityOperator md_erasure_ansatz_state(double w, std::size_t d) {
    if (w < 0.0 || w > 1.0) throw DomainError("md_erasure_ansatz_state: w outside [0, 1]");
    if (d < 2) throw DomainError("md_erasure_ansatz_state: d must be >= 2");
    const std::size_t da = d + 1;  // input of M_{d+1}
    const std::size_t dim = da * d;
    ComplexMatrix m(dim, dim);
    // (1-w) [0]_a ⊗ I_d/d
    for (std::size_t k = 0; k < d; ++k) m(k, k) += (1.0 - w) / static_cast<double>(d);
    // w [phi], |phi> = d^{-1/2} sum_{i=1}^{d} |i>_a |i-1>_{a'}
    for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = 1; j <= d; ++j)
            m(i * d + (i - 1), j * d + (j - 1)) += w / static_cast<double>(d);
    return DensityOperator::from_psd(std::move(m));
}

double md_erasure_delta_closed(double w, std::size_t d, double lambda) {
    if (w < 0.0 || w > 1.0) throw DomainError("md_erasure_delta_closed: w outside [0, 1]");
    if (d < 2) throw DomainError("md_erasure_delta_closed: d must be >= 2");
    if (lambda < 0.0 || lambda > 1.0) throw DomainError("md_erasure_delta_closed: lambda outside [0, 1]");
    const double dn = static_cast<double>(d);
    const double d2 = dn * dn;
    const double f = eta((1.0 - w) / d2 + w) + (d2 - 1.0) * eta((1.0 - w) / d2);
    return binary_entropy(w) + (1.0 - w) * std::log2(dn) + lambda * f;
}

OptResult md_erasure_delta_star(std::size_t d, double lambda) {
    const auto f = [&](double w) { return md_erasure_delta_closed(w, d, lambda); };

    // Coarse scan guards against straying outside the golden-section bracket
    // on a slightly non-unimodal profile.
    constexpr std::size_t kScan = 129;
    std::size_t best = 0;
    double best_val = f(0.0);
    for (std::size_t i = 1; i < kScan; ++i) {
        const double v = f(static_cast<double>(i) / (kScan - 1));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = (best == 0) ? 0.0 : static_cast<double>(best - 1) / (kScan - 1);
    const double hi = (best == kScan - 1) ? 1.0 : static_cast<double>(best + 1) / (kScan - 1);
    const auto r = golden_section_max(f, lo, hi, 1e-9);

    OptResult out;
    out.value = std::max(r.value, best_val);
    out.argmax = {r.value >= best_val ? r.x : static_cast<double>(best) / (kScan - 1)};
    out.evaluations = kScan + r.evaluations;
    out.converged = true;
    return out;
}

namespace {

// Lower-triangular Cholesky of a PSD matrix, with a diagonal shift for
// rank-deficient inputs.
ComplexMatrix cholesky_psd(const ComplexMatrix& a, double shift = 1e-12) {
    const std::size_t n = a.rows;
    ComplexMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cplx sum = a(i, j);
            if (i == j) sum += shift;
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * std::conj(l(j, k));
            if (i == j) {
                const double re = std::max(sum.real(), 0.0);
                l(i, j) = std::sqrt(re);
            } else {
                l(i, j) = (std::abs(l(j, j)) > 0.0) ? sum / l(j, j) : cplx{};
            }
        }
    }
    return l;
}

std::vector<double> theta_from_lower(const ComplexMatrix& l) {
    const std::size_t n = l.rows;
    std::vector<double> theta;
    theta.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) theta.push_back(l(i, i).real());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            theta.push_back(l(i, j).real());
            theta.push_back(l(i, j).imag());
        }
    return theta;
}

DensityOperator rho_from_theta(std::span<const double> theta, std::size_t n) {
    ComplexMatrix l(n, n);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) l(i, i) = theta[idx++];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double re = theta[idx++];
            const double im = theta[idx++];
            l(i, j) = cplx(re, im);
        }
    ComplexMatrix rho = matmul(l, adjoint(l));
    double tr = trace(rho).real();
    if (tr < 1e-100) {  // degenerate factor; fall back to the maximally mixed state
        return DensityOperator::maximally_mixed(n);
    }
    for (auto& z : rho.entries) z /= tr;
    for (std::size_t i = 0; i < n; ++i) rho(i, i) = cplx(rho(i, i).real(), 0.0);
    return DensityOperator::from_psd(std::move(rho));
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

OptResult q1_general(const IsometryChannel& ch, std::size_t restarts, std::uint64_t seed,
                     const Q1GeneralOptions& opts) {
    const std::size_t n = ch.dim_in;
    if (n > 12) throw DomainError("q1_general: input dimension exceeds the dense regime (12)");
    const std::size_t nparams = n * n;

    SimplexOptions nm;
    nm.f_tol = opts.f_tol;
    nm.max_evals = opts.max_evals_per_round ? opts.max_evals_per_round : 1000 + 400 * nparams;
    nm.initial_step = 0.1;

    const auto objective = [&](const std::vector<double>& theta) {
        return coherent_information(ch, rho_from_theta(theta, n));
    };

    std::vector<std::vector<double>> starts;
    starts.push_back(theta_from_lower(cholesky_psd(DensityOperator::maximally_mixed(n).matrix())));
    for (const auto& warm : opts.warm_starts) {
        if (warm.dim() != n) throw DimensionMismatch("q1_general: warm start dimension mismatch");
        starts.push_back(theta_from_lower(cholesky_psd(warm.matrix())));
    }
    for (std::size_t r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(mix_seed(seed, r));
        std::vector<double> theta(nparams);
        for (auto& t : theta) t = 2.0 * uniform01(rng) - 1.0;
        starts.push_back(std::move(theta));
    }

    std::vector<SimplexResult> results(starts.size());
    parallel_for(starts.size(), opts.exec, [&](std::size_t i) {
        results[i] = nelder_mead_max_iterated(objective, starts[i], nm, opts.max_rounds);
    });

    OptResult best;
    best.value = -1e300;
    bool any_converged = false;
    std::size_t total_evals = 0;
    std::vector<double> best_theta;
    for (const auto& r : results) {
        total_evals += r.evaluations;
        any_converged = any_converged || r.converged;
        if (r.value > best.value) {
            best.value = r.value;
            best_theta = r.x;
        }
    }
    if (!any_converged) throw ConvergenceFailure("q1_general: no start met the function tolerance");
    best.argmax = std::move(best_theta);
    best.evaluations = total_evals;
    best.converged = true;
    return best;
}

HashingResult hashing_point_family(const BlochRep& rep, const HashingOptions& opts) {
    Q1GeneralOptions q1opts;
    q1opts.exec = opts.exec;
    const auto q1_at = [&](double x) {
        return q1_general(qubit_from_bloch(rep, x), opts.restarts, opts.seed, q1opts).value;
    };

    HashingResult result;
    const double q1_full = q1_at(1.0);
    if (q1_full > opts.value_tol) {
        result.x_star = 1.0;  // never vanishes along the family
        return result;
    }

    constexpr std::size_t kCoarse = 11;
    std::vector<double> q1s(kCoarse);
    q1s[0] = 1.0;  // identity channel
    q1s[kCoarse - 1] = q1_full;
    for (std::size_t i = 1; i + 1 < kCoarse; ++i)
        q1s[i] = q1_at(static_cast<double>(i) / (kCoarse - 1));

    std::size_t first_zero = kCoarse - 1;
    for (std::size_t i = 1; i < kCoarse; ++i) {
        if (q1s[i] <= opts.value_tol) {
            first_zero = i;
            break;
        }
    }
    for (std::size_t j = first_zero + 1; j < kCoarse; ++j) {
        if (q1s[j] > opts.value_tol) {
            result.non_monotone = true;
            break;
        }
    }

    if (result.non_monotone) {  // fall back to a fine grid scan
        constexpr std::size_t kFine = 101;
        for (std::size_t i = 0; i < kFine; ++i) {
            const double x = static_cast<double>(i) / (kFine - 1);
            if (q1_at(x) <= opts.value_tol) {
                result.x_star = x;
                return result;
            }
        }
        result.x_star = 1.0;
        return result;
    }

    double lo = static_cast<double>(first_zero - 1) / (kCoarse - 1);
    double hi = static_cast<double>(first_zero) / (kCoarse - 1);
    while (hi - lo > opts.x_tol) {
        const double mid = 0.5 * (lo + hi);
        if (q1_at(mid) <= opts.value_tol)
            hi = mid;
        else
            lo = mid;
    }
    result.x_star = 0.5 * (lo + hi);
    return result;
}

}  // namespace supadd
