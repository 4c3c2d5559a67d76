#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "supadd/coherent.hpp"

namespace supadd {

/// Witness values below this are treated as numerically zero when deciding
/// region membership. In the log-singularity regime the polished ansatz keeps
/// a true signal of a few 1e-6 bits long after the witness has collapsed
/// exponentially, so the membership floor sits above that scale.
inline constexpr double kWitnessPositive = 1e-5;

struct WitnessReport {
    double witness_value = 0.0;
    std::map<std::string, double> components;  // "delta_star" minus every other entry
    std::map<std::string, double> params;
};

std::string witness_report_to_json(const WitnessReport& r);

/// delta(N_s, K) = Delta*(N_s ⊗ K) - Q1(N_s) - q1_K. Positive values certify
/// strong superadditivity of coherent information.
WitnessReport delta_witness_ns(double s, const IsometryChannel& partner, double q1_partner,
                               Exec exec = Exec::parallel);

/// Upper bound log2(1 + 1/sqrt(d)) + max{(1-2 lambda) log2 d, 0} on
/// Q(M_{d+1}) + Q(E_{lambda,d}).
double u_bound(double lambda, std::size_t d);

/// mu(w,d,lambda) = Delta(M_{d+1} ⊗ E_{lambda,d}, rho_w) - u_bound; positivity
/// certifies unconditional superadditivity of quantum capacity.
double mu(double w, std::size_t d, double lambda);

/// max_w mu(w,d,lambda), golden-section over the scanned bracket.
OptResult max_mu_over_w(std::size_t d, double lambda);

/// Witness report for M_{d+1} ⊗ E_{lambda,d}; capacity mode subtracts u_bound,
/// otherwise Q1(M_{d+1}) + Q1(E_{lambda,d}).
WitnessReport md_witness(std::size_t d, double lambda, bool capacity_mode, Exec exec = Exec::parallel);

/// Erasure threshold (1 - s + u s) / (2 - 2s - u + 2us) from the
/// log-singularity rate comparison, at u = argmax of q1_platypus(s).
double lambda_max_analytic(double s, double u_opt);

/// Amplitude-damping threshold 1/(1+k), k = (1-s)(1-u)/(u + (1-s)(1-u)),
/// with u recomputed as the q1_platypus argmax.
double gamma_max_analytic(double s);

struct SingularityRates {
    double rate_b = 0.0;  // u (1 - lambda)
    double rate_c = 0.0;  // u lambda (1-u)(1-s) / (1 - s(1-u))
};

SingularityRates singularity_rates_ns_erasure(double s, double u, double lambda);

/// Spectra of the joint output/environment states of N_s ⊗ E_lambda on the
/// input (1-u)[00] + u[chi_eps], in the block basis.
std::vector<double> ns_erasure_spectrum_b(double s, double u, double lambda, double eps);
std::vector<double> ns_erasure_spectrum_c(double s, double u, double lambda, double eps);

struct SingularityRow {
    double eps = 0.0;
    double diff_spectra = 0.0;  // Delta(eps) - Delta(0) via block spectra
    double diff_dense = 0.0;    // same via dense channel application
};

struct SingularityReport {
    SingularityRates rates;
    bool rate_b_dominates = false;
    std::vector<SingularityRow> rows;
    double max_route_gap = 0.0;      // worst |spectra - dense| over the grid
    bool sign_matches_rates = true;  // smallest-eps difference has the predicted sign
};

SingularityReport verify_singularity_numeric(double s, double lambda, double u,
                                             std::span<const double> eps_grid);

enum class EndpointMethod { numeric, analytic, empty };

const char* endpoint_method_name(EndpointMethod m);

struct RegionRow {
    double param = 0.0;
    std::optional<double> x_min;
    std::optional<double> x_max;
    EndpointMethod method_min = EndpointMethod::empty;
    EndpointMethod method_max = EndpointMethod::empty;
    std::optional<double> x_max_numeric;  // pure-bisection endpoint kept alongside
                                          // an analytic override
};

struct RegionCurve {
    std::string sweep_param;
    std::vector<RegionRow> rows;
};

enum class NsFamily { erasure, amplitude_damping, depolarizing };

/// Positivity bracket of the N_s witness in the partner noise parameter for a
/// single s: 51-point scan, endpoint bisection to 1e-4, analytic upper
/// endpoint where the numeric witness falls below resolution.
RegionRow region_row_ns(NsFamily family, double s, Exec exec = Exec::parallel);

RegionCurve region_sweep_ns(NsFamily family, std::span<const double> s_grid,
                            Exec exec = Exec::parallel);

struct MdRegion {
    RegionCurve coherent_info;  // lm_min/lm_max of the Q1 witness
    RegionCurve capacity;       // lm_min/lm_max of max_w mu
};

MdRegion region_sweep_md(std::span<const std::size_t> d_list, Exec exec = Exec::parallel);

/// Proof-prescribed perturbation weight 2^(1 - 2 (|1-2l|/(1-l)) log2 d),
/// clamped to w = 1/2 when the raw value reaches 1.
double w_star(double lambda, std::size_t d);

/// d-independent leading term (1 - lambda) h(w) of the large-d expansion of mu.
double mu_asymptotic(double w, double lambda);

/// mu evaluated at the prescribed weight: w_star for lambda <= 1/2, mirrored
/// 1 - w_star above.
double mu_certificate(double lambda, std::size_t d);

void write_ns_region_csv(std::ostream& os, const RegionCurve& curve, const std::string& provenance);
void write_md_region_csv(std::ostream& os, const MdRegion& region, const std::string& provenance);

}  // namespace supadd
