#pragma once

#include <span>
#include <vector>

#include "supadd/complex_matrix.hpp"

namespace supadd {

inline constexpr double kHermitianTol = 1e-12;  // entrywise |M - M†|
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenNegTol = -1e-10;  // smallest admissible density eigenvalue

/// Square matrix certified Hermitian at construction.
class HermitianOperator {
  public:
    static HermitianOperator from_matrix(ComplexMatrix m, double tol = kHermitianTol);

    std::size_t dim() const { return matrix_.rows; }
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    explicit HermitianOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
    ComplexMatrix matrix_;
};

/// Unit-trace positive semi-definite operator.
class DensityOperator {
  public:
    /// Full validation: Hermitian, trace one, eigenvalues above -1e-10.
    static DensityOperator from_matrix(ComplexMatrix m);

    /// For states PSD by construction (convex mixtures of projectors, L L†,
    /// channel outputs). Still checks Hermiticity and trace.
    static DensityOperator from_psd(ComplexMatrix m);

    static DensityOperator maximally_mixed(std::size_t dim);
    static DensityOperator pure(const std::vector<cplx>& amplitudes);

    std::size_t dim() const { return matrix_.rows; }
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
    ComplexMatrix matrix_;
};

struct JacobiOptions {
    double offdiag_tol = 1e-14;  // scaled by max(1, ||A||_F)
    int max_sweeps = 100;
};

struct EigenSystem {
    std::vector<double> values;  // nondecreasing
    ComplexMatrix vectors;       // columns, aligned with values
    int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
EigenSystem hermitian_eigensystem(const HermitianOperator& op, const JacobiOptions& opts = {});
std::vector<double> hermitian_eigenvalues(const HermitianOperator& op, const JacobiOptions& opts = {});

/// Shannon entropy in bits of a spectrum; values in [-1e-10, 0) are clamped to 0.
double entropy_of_spectrum(std::span<const double> eigenvalues);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityOperator& rho);

/// h(x) = -x log2 x - (1-x) log2(1-x), endpoints give 0.
double binary_entropy(double x);

/// eta(x) = x log2 x with eta(0) = 0.
double eta(double x);

}  // namespace supadd
