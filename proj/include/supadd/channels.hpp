#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "supadd/numkernel.hpp"

namespace supadd {

inline constexpr double kIsometryTol = 1e-10;
inline constexpr double kChoiPsdTol = -1e-9;
inline constexpr std::size_t kDenseLimit = std::size_t{1} << 20;

/// Channel pair (B, B^c) stored as a Stinespring isometry V: H_a -> H_b ⊗ H_c.
/// Composite kets are ordered output-major: row index = b * dim_env + c.
struct IsometryChannel {
    std::size_t dim_in = 0;   // d_a
    std::size_t dim_out = 0;  // d_b
    std::size_t dim_env = 0;  // d_c
    ComplexMatrix V;          // (d_b * d_c) x d_a
    std::string label;
};

/// Checks V†V = I within tol; throws on violation.
void check_isometry(const IsometryChannel& ch, double tol = kIsometryTol);

/// Qutrit channel family N_s, 0 <= s <= 1/2 (d_a = d_b = 3, d_c = 2).
IsometryChannel platypus_channel(double s);

/// d-dimensional generalization M_d, d >= 3 (d_a = d_b = d, d_c = d - 1).
IsometryChannel generalized_platypus(std::size_t d);

/// Erasure channel on a d-dimensional input with erasure probability lambda.
IsometryChannel erasure_channel(double lambda, std::size_t d);

/// Qubit amplitude damping with damping probability gamma.
IsometryChannel amplitude_damping(double gamma);

/// Qubit depolarizing channel, Kraus form, 0 <= p <= 3/4.
IsometryChannel depolarizing(double p);

/// Qubit-channel representation by translation vector t and distortion matrix T
/// acting on Bloch vectors; normal form has T diagonal.
struct BlochRep {
    std::array<double, 3> t{};
    std::array<std::array<double, 3>, 3> T{};

    static BlochRep identity();
    static BlochRep normal_form(const std::array<double, 3>& t, const std::array<double, 3>& lambda);
};

/// Unnormalized Choi operator of the Bloch-represented map (input-major ordering).
HermitianOperator choi_of_bloch(const BlochRep& rep);

/// Stinespring dilation of (1-x) id + x R; environment dimension is the Kraus
/// rank of the Choi, discarding eigenvalues below 1e-12.
IsometryChannel qubit_from_bloch(const BlochRep& rep, double x);

/// Joint channel A ⊗ B with output/environment wires regrouped so that the
/// output is H_b ⊗ H_b' and the environment is H_c ⊗ H_c'.
IsometryChannel tensor_product(const IsometryChannel& a, const IsometryChannel& b,
                               std::size_t dense_limit = kDenseLimit);

/// B(rho) = Tr_c(V rho V†).
DensityOperator apply(const IsometryChannel& ch, const DensityOperator& rho);

/// B^c(rho) = Tr_b(V rho V†).
DensityOperator apply_complement(const IsometryChannel& ch, const DensityOperator& rho);

/// Both reductions of V rho V† in one pass (first: output, second: environment).
std::pair<DensityOperator, DensityOperator> apply_pair(const IsometryChannel& ch,
                                                       const DensityOperator& rho);

/// Unnormalized Choi operator J = d_a (I ⊗ B)([phi]), dimension d_a * d_b,
/// basis ordered input-copy-major: index = i * d_b + b.
HermitianOperator choi_matrix(const IsometryChannel& ch);

struct ChannelValidity {
    bool cp = false;
    bool tp = false;
    double min_choi_eigenvalue = 0.0;
    double max_partial_trace_defect = 0.0;
    bool ok() const { return cp && tp; }
};

ChannelValidity is_valid_channel(const IsometryChannel& ch);

std::string channel_to_json(const IsometryChannel& ch);
IsometryChannel channel_from_json(const std::string& text);

}  // namespace supadd
