// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// An optional list of criterion numbers on the command line restricts the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "supadd/randscan.hpp"
#include "test_util.hpp"

using namespace supadd;

namespace {

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<bool(std::string&)> run;
};

bool within(double value, double target, double tol, std::string& detail, const char* label) {
    std::ostringstream os;
    os << label << " = " << value << " (target " << target << " +- " << tol << ") ";
    detail += os.str();
    return std::abs(value - target) <= tol;
}

bool record(bool ok, std::string& detail, const char* label, double value) {
    std::ostringstream os;
    os << label << " = " << value << (ok ? " " : " [FAIL] ");
    detail += os.str();
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    std::vector<Criterion> criteria;

    criteria.push_back({1, "hashing point of the depolarizing family", 1.0, [](std::string& d) {
        return within(hashing_point_depolarizing(), 0.1893, 1e-4, d, "p*");
    }});

    criteria.push_back({2, "platypus coherent information at s = 1/2", 1.0, [](std::string& d) {
        return within(q1_platypus(0.5).value, 0.6942, 1e-3, d, "q1");
    }});

    criteria.push_back({3, "erasure witness peak at (s, lambda) = (1/2, 1/2)", 30.0, [](std::string& d) {
        const auto report = delta_witness_ns(0.5, erasure_channel(0.5, 2), q1_erasure(0.5, 2));
        return within(report.witness_value, 0.033, 3e-3, d, "witness");
    }});

    criteria.push_back({4, "erasure region endpoints at s = 1/2", 300.0, [](std::string& d) {
        const auto row = region_row_ns(NsFamily::erasure, 0.5);
        if (!row.x_min || !row.x_max_numeric || row.method_max != EndpointMethod::analytic) {
            d += "region row incomplete ";
            return false;
        }
        bool ok = within(*row.x_min, 0.41, 0.01, d, "lambda_min");
        ok = within(*row.x_max_numeric, 0.663, 0.01, d, "numeric sign-loss") && ok;
        ok = within(*row.x_max, 0.723, 5e-3, d, "analytic lambda_max") && ok;
        return ok;
    }});

    criteria.push_back({5, "depolarizing region onset in s", 600.0, [](std::string& d) {
        const double p_star = hashing_point_depolarizing();
        const auto peak_witness = [&](double s) {
            return delta_witness_ns(s, depolarizing(p_star), 0.0).witness_value;
        };
        double lo = 0.44, hi = 0.47;  // peak witness crosses zero inside
        if (peak_witness(lo) > kWitnessPositive || peak_witness(hi) <= kWitnessPositive) {
            d += "onset bracket invalid ";
            return false;
        }
        while (hi - lo > 5e-4) {
            const double mid = 0.5 * (lo + hi);
            (peak_witness(mid) > kWitnessPositive ? hi : lo) = mid;
        }
        const double onset = 0.5 * (lo + hi);
        bool ok = within(onset, 0.4539, 2e-3, d, "s_min");
        const auto below = region_row_ns(NsFamily::depolarizing, 0.4539 - 4e-3);
        ok = record(!below.x_min.has_value(), d, "empty below", below.x_min.value_or(-1)) && ok;
        const auto above = region_row_ns(NsFamily::depolarizing, 0.46);
        ok = record(above.x_min.has_value(), d, "nonempty above", above.x_min.value_or(-1)) && ok;
        return ok;
    }});

    criteria.push_back({6, "amplitude damping region straddles 1/2", 300.0, [](std::string& d) {
        bool ok = true;
        for (double s : {0.1, 0.3, 0.5}) {
            const auto row = region_row_ns(NsFamily::amplitude_damping, s);
            const double gmax = gamma_max_analytic(s);
            if (!row.x_min) {
                d += "empty region at s = " + std::to_string(s) + " ";
                ok = false;
                continue;
            }
            ok = record(*row.x_min < 0.5, d, "gamma_min", *row.x_min) && ok;
            ok = record(gmax >= 0.5, d, "gamma_max", gmax) && ok;
        }
        return ok;
    }});

    criteria.push_back({7, "concrete random-channel replay", 600.0, [](std::string& d) {
        const auto rep = BlochRep::normal_form({0.0078, 0.4231, 0.6556}, {0.1253, 0.1302, 0.0924});

        const auto hashing = hashing_point_family(rep);
        bool ok = record(hashing.x_star >= 0.3061 - 1e-3 && hashing.x_star <= 0.3265 + 1e-3, d,
                         "x_star", hashing.x_star);

        // the quoted 0.7175 / 0.7241 refer to the paper's hashing point 0.3265
        const double x_paper = 0.3265;
        const auto joint = tensor_product(platypus_channel(0.5), qubit_from_bloch(rep, x_paper));
        const auto ansatz = delta_star_ansatz(joint);
        ok = within(ansatz.value, 0.7175, 1e-3, d, "ansatz value") && ok;
        const double sum = q1_platypus(0.5).value +
                           std::max(q1_general(qubit_from_bloch(rep, x_paper), 6, 7).value, 0.0);
        ok = within(sum, 0.6942, 1e-3, d, "q1 sum") && ok;

        ScanOptions sopts;
        const auto rec = amplification_scan(rep, 12345, sopts);
        if (!rec.superadd_interval) {
            d += "no superadditivity interval ";
            return false;
        }
        ok = within(rec.superadd_interval->first, 0.246, 0.01, d, "interval lo") && ok;
        ok = within(rec.superadd_interval->second, 0.365, 0.01, d, "interval hi") && ok;

        // superamplification: a point inside the interval below x* where the
        // partner itself still has positive coherent information
        const double x_inside = 0.26;
        const double q1_inside = q1_general(qubit_from_bloch(rep, x_inside), 6, 7).value;
        ok = record(x_inside > rec.superadd_interval->first && x_inside < rec.x_star &&
                        q1_inside > kWitnessPositive,
                    d, "q1(R_x) inside interval", q1_inside) && ok;

        // the witness stays positive at the interval midpoint
        const double mid = 0.5 * (rec.superadd_interval->first + rec.superadd_interval->second);
        const auto r_mid = qubit_from_bloch(rep, mid);
        const double witness_mid =
            delta_star_ansatz(tensor_product(platypus_channel(0.5), r_mid)).value -
            q1_platypus(0.5).value - std::max(q1_general(r_mid, 6, 7).value, 0.0);
        ok = record(witness_mid > kWitnessPositive, d, "witness at midpoint", witness_mid) && ok;

        Q1GeneralOptions gopts;
        gopts.warm_starts.push_back(ansatz_rho({ansatz.argmax[0], ansatz.argmax[1], ansatz.argmax[2]}));
        const auto full = q1_general(joint, 64, 2024, gopts);
        ok = record(full.value >= 0.7241 - 1e-3, d, "full search (64 restarts)", full.value) && ok;
        return ok;
    }});

    criteria.push_back({8, "unconditional capacity superadditivity", 60.0, [](std::string& d) {
        bool ok = record(max_mu_over_w(4, 0.5).value > 0.0, d, "max mu(4, 1/2)",
                         max_mu_over_w(4, 0.5).value);
        ok = record(max_mu_over_w(3, 0.5).value <= 0.0, d, "max mu(3, 1/2)",
                    max_mu_over_w(3, 0.5).value) && ok;
        std::size_t checked = 0;
        double worst = 1e300;
        for (double lm = 0.448; lm < 0.5210; lm += 0.005) {
            worst = std::min(worst, max_mu_over_w(8, lm).value);
            ++checked;
        }
        std::ostringstream os;
        os << checked << " lambda samples ";
        d += os.str();
        return record(worst > 0.0, d, "min over window", worst) && ok;
    }});

    criteria.push_back({9, "d = 10 capacity region spot check", 60.0, [](std::string& d) {
        const std::size_t ds[] = {10};
        const auto region = region_sweep_md(ds);
        const auto& row = region.capacity.rows.at(0);
        if (!row.x_min || !row.x_max) {
            d += "empty capacity region ";
            return false;
        }
        bool ok = record(*row.x_min <= 0.43 + 0.01, d, "lm_min", *row.x_min);
        ok = record(*row.x_max >= 0.53 - 0.01, d, "lm_max", *row.x_max) && ok;
        return ok;
    }});

    criteria.push_back({10, "asymptotics of the joint ansatz", 1.0, [](std::string& d) {
        bool ok = within(md_erasure_delta_closed(0.5, 10000, 0.5), 0.5, 2e-3, d, "delta");
        ok = record(u_bound(0.5, 10000) < 0.015, d, "u_bound", u_bound(0.5, 10000)) && ok;
        return ok;
    }});

    criteria.push_back({11, "oracle equivalence", 120.0, [](std::string& d) {
        std::mt19937_64 rng(20240809);
        double worst_md = 0.0;
        for (std::size_t dd : {2u, 3u, 4u}) {
            const double lm_fix = supadd::testing::uniform01(rng);
            for (int k = 0; k < 20; ++k) {
                const double w = supadd::testing::uniform01(rng);
                const double lm = (k % 2 == 0) ? supadd::testing::uniform01(rng) : lm_fix;
                const auto joint = tensor_product(generalized_platypus(dd + 1), erasure_channel(lm, dd));
                const double dense = coherent_information(joint, md_erasure_ansatz_state(w, dd));
                worst_md = std::max(worst_md, std::abs(dense - md_erasure_delta_closed(w, dd, lm)));
            }
        }
        bool ok = record(worst_md <= 1e-9, d, "md closed vs dense", worst_md);

        double worst_sing = 0.0;
        bool signs_ok = true;
        const double eps_grid[] = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
        for (int k = 0; k < 10; ++k) {
            const double s = 0.05 + 0.45 * supadd::testing::uniform01(rng);
            const double lm = 0.5 + 0.1 * supadd::testing::uniform01(rng);
            const double u = 0.2 + 0.6 * supadd::testing::uniform01(rng);
            const auto report = verify_singularity_numeric(s, lm, u, eps_grid);
            worst_sing = std::max(worst_sing, report.max_route_gap);
            signs_ok = signs_ok && report.sign_matches_rates;
        }
        ok = record(worst_sing <= 1e-10, d, "singularity routes", worst_sing) && ok;
        ok = record(signs_ok, d, "rate signs", signs_ok ? 1.0 : 0.0) && ok;

        double worst_add = 0.0;
        for (int k = 0; k < 6; ++k) {
            const double s = 0.5 * supadd::testing::uniform01(rng);
            const auto a = platypus_channel(s);
            const auto b = (k % 2 == 0) ? erasure_channel(supadd::testing::uniform01(rng), 3)
                                        : amplitude_damping(supadd::testing::uniform01(rng));
            const auto rho = supadd::testing::random_density(rng, 3);
            const auto sigma = supadd::testing::random_density(rng, b.dim_in);
            const auto product = DensityOperator::from_psd(kron(rho.matrix(), sigma.matrix()));
            const double joint = coherent_information(tensor_product(a, b), product);
            const double split = coherent_information(a, rho) + coherent_information(b, sigma);
            worst_add = std::max(worst_add, std::abs(joint - split));
        }
        ok = record(worst_add <= 1e-9, d, "product additivity", worst_add) && ok;
        return ok;
    }});

    criteria.push_back({12, "invariant suite", 60.0, [](std::string& d) {
        bool ok = true;
        std::vector<IsometryChannel> channels;
        for (double s : {0.0, 0.25, 0.5}) channels.push_back(platypus_channel(s));
        for (std::size_t dd : {3u, 5u}) channels.push_back(generalized_platypus(dd));
        channels.push_back(erasure_channel(0.3, 2));
        channels.push_back(erasure_channel(0.7, 4));
        channels.push_back(amplitude_damping(0.45));
        channels.push_back(depolarizing(0.2));
        channels.push_back(qubit_from_bloch(
            BlochRep::normal_form({0.1, -0.2, 0.05}, {0.7, 0.5, 0.6}), 0.9));
        for (const auto& ch : channels) {
            try {
                check_isometry(ch, 1e-10);
            } catch (const Error&) {
                d += "isometry failure: " + ch.label + " ";
                ok = false;
            }
            const auto validity = is_valid_channel(ch);
            if (!validity.ok()) {
                d += "cptp failure: " + ch.label + " ";
                ok = false;
            }
        }

        std::mt19937_64 rng(5150);
        for (std::size_t n : {2u, 6u, 9u}) {
            const auto rho = supadd::testing::random_density(rng, n);
            const double s = von_neumann_entropy(rho);
            if (s < -1e-9 || s > std::log2(static_cast<double>(n)) + 1e-9) {
                d += "entropy bound failure ";
                ok = false;
            }
        }

        const auto ch = amplitude_damping(0.3);
        const auto r1 = q1_general(ch, 4, 42);
        const auto r2 = q1_general(ch, 4, 42);
        ok = record(r1.value == r2.value && r1.argmax == r2.argmax, d, "q1 seed replay",
                    r1.value) && ok;

        ScanOptions sopts;
        sopts.compute_interval = false;
        sopts.hashing.restarts = 2;
        std::mt19937_64 rng_a(808), rng_b(808);
        const auto rec_a = amplification_scan(sample_normal_form(rng_a), 808, sopts);
        const auto rec_b = amplification_scan(sample_normal_form(rng_b), 808, sopts);
        ok = record(scan_record_to_json(rec_a) == scan_record_to_json(rec_b), d, "scan replay",
                    rec_a.witness_at_xstar) && ok;
        return ok;
    }});

    int failures = 0;
    for (auto& criterion : criteria) {
        if (!only.empty() && only.count(criterion.id) == 0) continue;
        std::string detail;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail += std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (seconds > criterion.time_limit_s) {
            ok = false;
            detail += "over time limit ";
        }
        std::printf("[%s] criterion %2d: %s (%.1fs, limit %.0fs)\n", ok ? "PASS" : "FAIL",
                    criterion.id, criterion.name, seconds, criterion.time_limit_s);
        if (!ok) {
            std::printf("       %s\n", detail.c_str());
            ++failures;
        }
    }
    if (failures == 0) std::printf("all criteria passed\n");
    return failures;
}
