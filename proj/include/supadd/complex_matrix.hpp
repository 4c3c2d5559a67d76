#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "supadd/errors.hpp"

namespace supadd {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> entries;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    cplx& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

bool all_finite(const ComplexMatrix& m);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& m, cplx factor);
cplx trace(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_defect(const ComplexMatrix& m);  // max entrywise |M - M†|

/// Outer product c * r† of two column vectors given as flat arrays.
ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

}  // namespace supadd
