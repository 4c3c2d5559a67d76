#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "supadd/channels.hpp"
#include "supadd/parallel.hpp"

namespace supadd {

struct OptResult {
    double value = 0.0;
    std::vector<double> argmax;
    std::size_t evaluations = 0;
    bool converged = false;
};

std::string opt_result_to_json(const OptResult& r);

/// Delta(B, rho) = S(B(rho)) - S(B^c(rho)), in bits.
double coherent_information(const IsometryChannel& ch, const DensityOperator& rho);

/// Q^(1)(N_s): golden-section maximization of Delta(N_s, (1-u)[0] + u[2]).
OptResult q1_platypus(double s);

/// Q^(1)(M_d) from the closed form: max_u h(u) + (1-u) log2(d-1) + g(u, d-1).
OptResult q1_md_closed_form(std::size_t d);

/// Q^(1)(A_gamma) on inputs (1-z)[0] + z[1]; zero with argmax z = 0 for gamma >= 1/2.
OptResult q1_amplitude_damping(double gamma);

/// Q^(1)(E_{lambda,d}) = max{(1-2 lambda) log2 d, 0}.
double q1_erasure(double lambda, std::size_t d);

/// Q^(1)(D_p) = max{1 - h(p) - p log2 3, 0} (maximally mixed input).
double q1_depolarizing(double p);

/// Smallest p with Q^(1)(D_p) = 0, by bisection to 1e-6.
double hashing_point_depolarizing();

/// Parameters of rho(eps, r1, r2) = r1 [00] + r2 [01] + (1-r1-r2) [chi_eps].
struct AnsatzParams3 {
    double epsilon = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};

/// The common amplification input on H_a ⊗ H_a' (dim 3 * d_other) with
/// |chi_eps> = sqrt(1-eps)|20> + sqrt(eps)|11>.
DensityOperator ansatz_rho(const AnsatzParams3& params, std::size_t d_other = 2);

/// Delta*(joint): coarse 21^3 grid over (eps, r1, r2) followed by simplex
/// polish. Deterministic; throws ConvergenceFailure if the polish exhausts its
/// budget without meeting the function tolerance.
OptResult delta_star_ansatz(const IsometryChannel& joint, Exec exec = Exec::parallel);

/// Input state for M_{d+1} ⊗ E_{lambda,d}: (1-w)([0] ⊗ I_d/d) + w [phi] with
/// |phi> maximally entangled between span{|1>..|d>}_a and H_a'.
DensityOperator md_erasure_ansatz_state(double w, std::size_t d);

/// Closed form h(w) + (1-w) log2 d + lambda f(w,d) for the state above.
double md_erasure_delta_closed(double w, std::size_t d, double lambda);

/// Delta* over w for M_{d+1} ⊗ E_{lambda,d}: grid scan plus golden polish.
OptResult md_erasure_delta_star(std::size_t d, double lambda);

struct Q1GeneralOptions {
    std::size_t max_evals_per_round = 0;  // 0: 1000 + 400 * (parameter count)
    int max_rounds = 6;
    double f_tol = 1e-9;
    std::vector<DensityOperator> warm_starts;  // maximally mixed is always included
    Exec exec = Exec::parallel;
};

/// Full-input-space maximization of Delta via rho = L L† / Tr(L L†) with L a
/// complex lower-triangular factor; simplex polish from `restarts` random
/// starts plus the warm starts. Monotone nondecreasing in restarts and
/// reproducible bit-for-bit for a fixed seed.
OptResult q1_general(const IsometryChannel& ch, std::size_t restarts, std::uint64_t seed,
                     const Q1GeneralOptions& opts = {});

struct HashingOptions {
    std::size_t restarts = 6;
    std::uint64_t seed = 17;
    double value_tol = 1e-6;  // q1 below this counts as zero
    double x_tol = 1e-4;
    Exec exec = Exec::parallel;
};

struct HashingResult {
    double x_star = 1.0;
    bool non_monotone = false;  // bracketing failed; fell back to a 101-point grid
};

/// Smallest x in [0,1] with Q^(1)((1-x) id + x R) = 0 within value_tol;
/// bisection assuming monotone decrease, grid-scan fallback otherwise.
/// Returns x_star = 1 if the coherent information never vanishes.
HashingResult hashing_point_family(const BlochRep& rep, const HashingOptions& opts = {});

/// Mixes (seed, index) into an independent stream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace supadd
