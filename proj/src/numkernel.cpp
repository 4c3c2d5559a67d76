#include "supadd/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace supadd {

HermitianOperator HermitianOperator::from_matrix(ComplexMatrix m, double tol) {
    if (m.rows != m.cols) throw NonHermitianInput("HermitianOperator: matrix not square");
    if (!all_finite(m)) throw NonHermitianInput("HermitianOperator: non-finite entries");
    if (hermiticity_defect(m) > tol) throw NonHermitianInput("HermitianOperator: |M - M†| exceeds tolerance");
    return HermitianOperator(std::move(m));
}

DensityOperator DensityOperator::from_psd(ComplexMatrix m) {
    auto herm = HermitianOperator::from_matrix(std::move(m));
    const cplx t = trace(herm.matrix());
    if (std::abs(t - 1.0) > kTraceTol) throw InvalidParams("DensityOperator: trace differs from 1");
    return DensityOperator(herm.matrix());
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m) {
    auto rho = from_psd(std::move(m));
    auto evs = hermitian_eigenvalues(HermitianOperator::from_matrix(rho.matrix()));
    if (!evs.empty() && evs.front() < kEigenNegTol)
        throw InvalidParams("DensityOperator: negative eigenvalue beyond tolerance");
    return rho;
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::pure(const std::vector<cplx>& amplitudes) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    if (n2 <= 0.0) throw InvalidParams("DensityOperator::pure: zero vector");
    ComplexMatrix m = outer(amplitudes, amplitudes);
    for (auto& z : m.entries) z /= n2;
    return DensityOperator(std::move(m));
}

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const HermitianOperator& op, const JacobiOptions& opts) {
    const std::size_t n = op.dim();
    ComplexMatrix a = op.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    EigenSystem out;
    if (n == 0) return out;

    // Threshold relative to the matrix scale; trace-one density operators and
    // small Choi operators both land well above the roundoff floor.
    const double stop = opts.offdiag_tol * std::max(1.0, frobenius_norm(a));

    int sweep = 0;
    for (; sweep < opts.max_sweeps; ++sweep) {
        if (offdiag_frobenius(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;

                // Phase out a(p,q), then a real Jacobi rotation annihilates it.
                const cplx phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Unitary in the (p,q) plane: U[p][p]=phase*c, U[p][q]=phase*s,
                // U[q][p]=-s, U[q][q]=c. Update A <- U† A U, V <- V U.
                const cplx upp = phase * c;
                const cplx upq = phase * s;
                for (std::size_t k = 0; k < n; ++k) {  // rows: U† on the left
                    const cplx akp = a(p, k);
                    const cplx akq = a(q, k);
                    a(p, k) = std::conj(upp) * akp - s * akq;
                    a(q, k) = std::conj(upq) * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // cols: U on the right
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * upp - s * akq;
                    a(k, q) = akp * upq + c * akq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * upp - s * vkq;
                    v(k, q) = vkp * upq + c * vkq;
                }
            }
        }
    }
    if (offdiag_frobenius(a) > stop)
        throw ConvergenceFailure("hermitian_eigensystem: Jacobi sweep budget exhausted");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = diag[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    out.sweeps = sweep;
    return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianOperator& op, const JacobiOptions& opts) {
    return hermitian_eigensystem(op, opts).values;
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double lam : eigenvalues) {
        if (lam < kEigenNegTol)
            throw InvalidParams("entropy_of_spectrum: eigenvalue below clamping window");
        if (lam <= 0.0) continue;  // clamp [-1e-10, 0) to 0; 0 log 0 = 0
        s -= lam * std::log2(lam);
    }
    return s;
}

double von_neumann_entropy(const DensityOperator& rho) {
    auto evs = hermitian_eigenvalues(HermitianOperator::from_matrix(rho.matrix()));
    return entropy_of_spectrum(evs);
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw DomainError("binary_entropy: argument outside [0, 1]");
    return -eta(x) - eta(1.0 - x);
}

double eta(double x) {
    if (x < 0.0) throw DomainError("eta: negative argument");
    if (x == 0.0) return 0.0;
    return x * std::log2(x);
}

}  // namespace supadd
