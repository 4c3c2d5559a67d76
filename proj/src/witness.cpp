#include "supadd/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "supadd/golden_section.hpp"

namespace supadd {

std::string witness_report_to_json(const WitnessReport& r) {
    nlohmann::json j;
    j["witness_value"] = r.witness_value;
    j["components"] = r.components;
    j["params"] = r.params;
    return j.dump();
}

WitnessReport delta_witness_ns(double s, const IsometryChannel& partner, double q1_partner, Exec exec) {
    if (partner.dim_in != 2) throw DimensionMismatch("delta_witness_ns: partner must be a qubit channel");
    const auto joint = tensor_product(platypus_channel(s), partner);
    const auto delta_star = delta_star_ansatz(joint, exec);
    const auto q1_ns = q1_platypus(s);

    WitnessReport r;
    r.components["delta_star"] = delta_star.value;
    r.components["q1_platypus"] = q1_ns.value;
    r.components["q1_partner"] = q1_partner;
    r.params["s"] = s;
    r.witness_value = delta_star.value - q1_ns.value - q1_partner;
    return r;
}

double u_bound(double lambda, std::size_t d) {
    if (lambda < 0.0 || lambda > 1.0) throw DomainError("u_bound: lambda outside [0, 1]");
    if (d < 2) throw DomainError("u_bound: d must be >= 2");
    const double dn = static_cast<double>(d);
    return std::log2(1.0 + 1.0 / std::sqrt(dn)) + std::max((1.0 - 2.0 * lambda) * std::log2(dn), 0.0);
}

double mu(double w, std::size_t d, double lambda) {
    return md_erasure_delta_closed(w, d, lambda) - u_bound(lambda, d);
}

OptResult max_mu_over_w(std::size_t d, double lambda) {
    OptResult r = md_erasure_delta_star(d, lambda);
    r.value -= u_bound(lambda, d);
    return r;
}

WitnessReport md_witness(std::size_t d, double lambda, bool capacity_mode, Exec) {
    const auto delta_star = md_erasure_delta_star(d, lambda);
    WitnessReport r;
    r.components["delta_star"] = delta_star.value;
    r.params["d"] = static_cast<double>(d);
    r.params["lambda"] = lambda;
    if (capacity_mode) {
        r.components["u_bound"] = u_bound(lambda, d);
        r.witness_value = delta_star.value - r.components["u_bound"];
    } else {
        r.components["q1_md"] = q1_md_closed_form(d + 1).value;
        r.components["q1_erasure"] = q1_erasure(lambda, d);
        r.witness_value = delta_star.value - r.components["q1_md"] - r.components["q1_erasure"];
    }
    return r;
}

double lambda_max_analytic(double s, double u_opt) {
    if (s <= 0.0 || s > 0.5) throw DomainError("lambda_max_analytic: s outside (0, 1/2]");
    if (u_opt < 0.0 || u_opt > 1.0) throw DomainError("lambda_max_analytic: u outside [0, 1]");
    return (1.0 - s + u_opt * s) / (2.0 - 2.0 * s - u_opt + 2.0 * u_opt * s);
}

double gamma_max_analytic(double s) {
    if (s <= 0.0 || s > 0.5) throw DomainError("gamma_max_analytic: s outside (0, 1/2]");
    const double u = q1_platypus(s).argmax.at(0);
    const double k = (1.0 - s) * (1.0 - u) / (u + (1.0 - s) * (1.0 - u));
    return 1.0 / (1.0 + k);
}

SingularityRates singularity_rates_ns_erasure(double s, double u, double lambda) {
    if (s < 0.0 || s > 0.5 || u < 0.0 || u > 1.0 || lambda < 0.0 || lambda > 1.0)
        throw DomainError("singularity_rates_ns_erasure: parameter outside range");
    SingularityRates r;
    r.rate_b = u * (1.0 - lambda);
    r.rate_c = u * lambda * (1.0 - u) * (1.0 - s) / (1.0 - s * (1.0 - u));
    return r;
}

std::vector<double> ns_erasure_spectrum_b(double s, double u, double lambda, double eps) {
    // Output state of N_s ⊗ E_lambda on (1-u)[00] + u[chi_eps]; diagonal in a
    // suitable product basis.
    return {
        s * (1.0 - u) * (1.0 - lambda), s * (1.0 - u) * lambda,
        (1.0 - s) * (1.0 - u) * (1.0 - lambda), (1.0 - s) * (1.0 - u) * lambda,
        u * (1.0 - eps) * (1.0 - lambda), u * eps * (1.0 - lambda), u * lambda,
    };
}

std::vector<double> ns_erasure_spectrum_c(double s, double u, double lambda, double eps) {
    // Environment state: three diagonal entries plus one 2x2 block whose small
    // eigenvalue is computed from the exact determinant
    // det = eps lambda^2 u (1-u)(1-s) for stability near eps = 0.
    const double base = 1.0 - s * (1.0 - u) - u * eps;
    const double a = eps * u * lambda;
    const double dgn = base * lambda;
    const double det = eps * lambda * lambda * u * (1.0 - u) * (1.0 - s);
    const double tr = a + dgn;
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    const double big = 0.5 * (tr + disc);
    const double small = (big > 0.0) ? det / big : 0.0;
    return {
        s * (1.0 - u) * lambda,
        (s * (1.0 - u) + u * eps) * (1.0 - lambda),
        base * (1.0 - lambda),
        big,
        small,
    };
}

SingularityReport verify_singularity_numeric(double s, double lambda, double u,
                                             std::span<const double> eps_grid) {
    SingularityReport report;
    report.rates = singularity_rates_ns_erasure(s, u, lambda);
    report.rate_b_dominates = report.rates.rate_b > report.rates.rate_c;

    const auto joint = tensor_product(platypus_channel(s), erasure_channel(lambda, 2));
    const auto delta_spectra = [&](double eps) {
        const auto sb = ns_erasure_spectrum_b(s, u, lambda, eps);
        const auto sc = ns_erasure_spectrum_c(s, u, lambda, eps);
        return entropy_of_spectrum(sb) - entropy_of_spectrum(sc);
    };
    const auto delta_dense = [&](double eps) {
        return coherent_information(joint, ansatz_rho({eps, 1.0 - u, 0.0}));
    };

    const double base_spectra = delta_spectra(0.0);
    const double base_dense = delta_dense(0.0);
    report.max_route_gap = std::abs(base_spectra - base_dense);

    double smallest_eps = 0.0;
    double smallest_diff = 0.0;
    bool have_smallest = false;
    for (double eps : eps_grid) {
        SingularityRow row;
        row.eps = eps;
        row.diff_spectra = delta_spectra(eps) - base_spectra;
        row.diff_dense = delta_dense(eps) - base_dense;
        report.max_route_gap = std::max(report.max_route_gap, std::abs(row.diff_spectra - row.diff_dense));
        if (!have_smallest || eps < smallest_eps) {
            smallest_eps = eps;
            smallest_diff = row.diff_spectra;
            have_smallest = true;
        }
        report.rows.push_back(row);
    }
    if (have_smallest && smallest_eps > 0.0)
        report.sign_matches_rates = report.rate_b_dominates ? (smallest_diff > 0.0) : (smallest_diff <= 0.0);
    return report;
}

const char* endpoint_method_name(EndpointMethod m) {
    switch (m) {
        case EndpointMethod::numeric: return "numeric";
        case EndpointMethod::analytic: return "analytic";
        default: return "empty";
    }
}

namespace {

struct FamilyOps {
    double x_lo = 0.0;
    double x_hi = 1.0;
    std::function<IsometryChannel(double)> make;
    std::function<double(double)> q1;
    bool has_analytic_max = false;
    std::function<double(double s, double u_opt)> analytic_max;
    double peak_hint = -1.0;  // known witness-peak location to pin onto the scan grid
};

FamilyOps family_ops(NsFamily family) {
    FamilyOps ops;
    switch (family) {
        case NsFamily::erasure:
            ops.make = [](double x) { return erasure_channel(x, 2); };
            ops.q1 = [](double x) { return q1_erasure(x, 2); };
            ops.has_analytic_max = true;
            ops.analytic_max = [](double s, double u) { return lambda_max_analytic(s, u); };
            break;
        case NsFamily::amplitude_damping:
            ops.make = [](double x) { return amplitude_damping(x); };
            ops.q1 = [](double x) { return q1_amplitude_damping(x).value; };
            ops.has_analytic_max = true;
            ops.analytic_max = [](double s, double u) {
                const double k = (1.0 - s) * (1.0 - u) / (u + (1.0 - s) * (1.0 - u));
                return 1.0 / (1.0 + k);
            };
            break;
        case NsFamily::depolarizing:
            ops.x_hi = 0.75;
            ops.make = [](double x) { return depolarizing(x); };
            ops.q1 = [](double x) { return q1_depolarizing(x); };
            // the witness peaks at the hashing point and the positive window
            // near the onset is narrower than the scan spacing
            ops.peak_hint = hashing_point_depolarizing();
            break;
    }
    return ops;
}

double bisect_boundary(const std::function<double(double)>& witness, double x_positive,
                       double x_nonpositive, double x_tol) {
    double pos = x_positive;
    double neg = x_nonpositive;
    while (std::abs(neg - pos) > x_tol) {
        const double mid = 0.5 * (pos + neg);
        if (witness(mid) > kWitnessPositive)
            pos = mid;
        else
            neg = mid;
    }
    return 0.5 * (pos + neg);
}

}  // namespace

RegionRow region_row_ns(NsFamily family, double s, Exec exec) {
    const auto ops = family_ops(family);
    const auto ns = platypus_channel(s);
    const auto q1_ns = q1_platypus(s);

    const auto witness = [&](double x) {
        const auto joint = tensor_product(ns, ops.make(x));
        return delta_star_ansatz(joint, Exec::serial).value - q1_ns.value - ops.q1(x);
    };

    constexpr std::size_t kScan = 51;
    std::vector<double> xs(kScan), vals(kScan);
    for (std::size_t i = 0; i < kScan; ++i)
        xs[i] = ops.x_lo + (ops.x_hi - ops.x_lo) * static_cast<double>(i) / (kScan - 1);
    if (ops.peak_hint >= ops.x_lo && ops.peak_hint <= ops.x_hi) {
        std::size_t nearest = 0;
        for (std::size_t i = 1; i < kScan; ++i)
            if (std::abs(xs[i] - ops.peak_hint) < std::abs(xs[nearest] - ops.peak_hint)) nearest = i;
        xs[nearest] = ops.peak_hint;
    }
    parallel_for(kScan, exec, [&](std::size_t i) { vals[i] = witness(xs[i]); });

    RegionRow row;
    row.param = s;

    std::size_t first = kScan, last = kScan;
    for (std::size_t i = 0; i < kScan; ++i) {
        if (vals[i] > kWitnessPositive) {
            if (first == kScan) first = i;
            last = i;
        }
    }
    if (first == kScan) return row;  // empty region at this s

    constexpr double kXTol = 1e-4;
    row.method_min = EndpointMethod::numeric;
    row.x_min = (first == 0) ? xs[0] : bisect_boundary(witness, xs[first], xs[first - 1], kXTol);

    row.method_max = EndpointMethod::numeric;
    const double numeric_max =
        (last == kScan - 1) ? xs[kScan - 1] : bisect_boundary(witness, xs[last], xs[last + 1], kXTol);
    row.x_max = numeric_max;
    row.x_max_numeric = numeric_max;

    if (ops.has_analytic_max && s > 0.0) {
        const double bound = ops.analytic_max(s, q1_ns.argmax.at(0));
        if (bound > numeric_max) {  // log-singularity regime beyond numeric resolution
            row.x_max = bound;
            row.method_max = EndpointMethod::analytic;
        }
    }
    return row;
}

RegionCurve region_sweep_ns(NsFamily family, std::span<const double> s_grid, Exec exec) {
    RegionCurve curve;
    curve.sweep_param = "s";
    curve.rows.resize(s_grid.size());
    parallel_for(s_grid.size(), exec,
                 [&](std::size_t i) { curve.rows[i] = region_row_ns(family, s_grid[i], Exec::serial); });
    return curve;
}

namespace {

RegionRow md_region_row(std::size_t d, const std::function<double(double)>& witness) {
    constexpr std::size_t kScan = 51;
    constexpr double kXTol = 1e-4;
    RegionRow row;
    row.param = static_cast<double>(d);

    std::vector<double> xs(kScan), vals(kScan);
    for (std::size_t i = 0; i < kScan; ++i) {
        xs[i] = static_cast<double>(i) / (kScan - 1);
        vals[i] = witness(xs[i]);
    }
    std::size_t first = kScan, last = kScan;
    for (std::size_t i = 0; i < kScan; ++i) {
        if (vals[i] > kWitnessPositive) {
            if (first == kScan) first = i;
            last = i;
        }
    }
    if (first == kScan) return row;

    row.method_min = EndpointMethod::numeric;
    row.method_max = EndpointMethod::numeric;
    row.x_min = (first == 0) ? xs[0] : bisect_boundary(witness, xs[first], xs[first - 1], kXTol);
    row.x_max = (last == kScan - 1) ? xs[kScan - 1] : bisect_boundary(witness, xs[last], xs[last + 1], kXTol);
    row.x_max_numeric = row.x_max;
    return row;
}

}  // namespace

MdRegion region_sweep_md(std::span<const std::size_t> d_list, Exec exec) {
    MdRegion region;
    region.coherent_info.sweep_param = "d";
    region.capacity.sweep_param = "d";
    region.coherent_info.rows.resize(d_list.size());
    region.capacity.rows.resize(d_list.size());

    parallel_for(d_list.size(), exec, [&](std::size_t i) {
        const std::size_t d = d_list[i];
        const double q1_md = q1_md_closed_form(d + 1).value;
        const auto ci_witness = [&](double lm) {
            return md_erasure_delta_star(d, lm).value - q1_md - q1_erasure(lm, d);
        };
        const auto q_witness = [&](double lm) { return max_mu_over_w(d, lm).value; };
        region.coherent_info.rows[i] = md_region_row(d, ci_witness);
        region.capacity.rows[i] = md_region_row(d, q_witness);
    });
    return region;
}

double w_star(double lambda, std::size_t d) {
    if (lambda <= 0.0 || lambda >= 1.0) throw DomainError("w_star: lambda outside (0, 1)");
    if (d < 2) throw DomainError("w_star: d must be >= 2");
    const double ratio = std::abs(1.0 - 2.0 * lambda) / (1.0 - lambda);
    const double raw = std::exp2(1.0 - 2.0 * ratio * std::log2(static_cast<double>(d)));
    return (raw >= 1.0) ? 0.5 : raw;
}

double mu_asymptotic(double w, double lambda) {
    if (lambda <= 0.0 || lambda >= 1.0) throw DomainError("mu_asymptotic: lambda outside (0, 1)");
    return (1.0 - lambda) * binary_entropy(w);
}

double mu_certificate(double lambda, std::size_t d) {
    const double w = w_star(lambda, d);
    return (lambda <= 0.5) ? mu(w, d, lambda) : mu(1.0 - w, d, lambda);
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string{}; }

}  // namespace

void write_ns_region_csv(std::ostream& os, const RegionCurve& curve, const std::string& provenance) {
    if (!provenance.empty()) os << "# " << provenance << "\n";
    os << "s,x_min,x_max,method_min,method_max\n";
    for (const auto& row : curve.rows) {
        os << fmt_double(row.param) << ',' << fmt_opt(row.x_min) << ',' << fmt_opt(row.x_max) << ','
           << endpoint_method_name(row.method_min) << ',' << endpoint_method_name(row.method_max)
           << '\n';
    }
}

void write_md_region_csv(std::ostream& os, const MdRegion& region, const std::string& provenance) {
    if (!provenance.empty()) os << "# " << provenance << "\n";
    os << "d,lm_min_q1,lm_max_q1,lm_min_q,lm_max_q\n";
    for (std::size_t i = 0; i < region.coherent_info.rows.size(); ++i) {
        const auto& ci = region.coherent_info.rows[i];
        const auto& q = region.capacity.rows[i];
        os << fmt_double(ci.param) << ',' << fmt_opt(ci.x_min) << ',' << fmt_opt(ci.x_max) << ','
           << fmt_opt(q.x_min) << ',' << fmt_opt(q.x_max) << '\n';
    }
}

}  // namespace supadd
