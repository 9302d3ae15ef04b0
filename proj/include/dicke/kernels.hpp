#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference in
// `serial` and an OpenMP version in `omp` with the same signature; the library
// calls the OpenMP ones, tests and benchmarks compare the two.

#include <cstddef>
#include <span>

#include "dicke/model.hpp"

namespace dicke::kernels {

/// Row-major view over a rows x cols block of doubles.
struct MatrixView {
    std::span<const double> data;
    std::size_t rows;
    std::size_t cols;
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct IprSums {
    double integral = 0.0;      // h_x h_y sum psi^4
    double norm = 0.0;          // h_x h_y sum psi^2
    double max_abs = 0.0;       // max |psi| on the grid
    double boundary_abs = 0.0;  // max |psi| on the outer ring of grid points
};

namespace serial {

/// y = A x
void spmv(const SparseHermitian &a, std::span<const double> x, std::span<double> y);

/// out (cols x cols) = M^T M, i.e. out[c, c'] = sum_r M[r, c] M[r, c'].
void gram_columns(MatrixView m, std::span<double> out);

/// out (rows x rows) = M M^T.
void gram_rows(MatrixView m, std::span<double> out);

/// Grid sums of psi(x_a, y_b) = sum_{n,k} coeff[n, k] phi_x[a, n] phi_y[b, k].
IprSums ipr_sums(MatrixView coeff, MatrixView phi_x, MatrixView phi_y, double hx, double hy);

} // namespace serial

namespace omp {

void spmv(const SparseHermitian &a, std::span<const double> x, std::span<double> y);
void gram_columns(MatrixView m, std::span<double> out);
void gram_rows(MatrixView m, std::span<double> out);
IprSums ipr_sums(MatrixView coeff, MatrixView phi_x, MatrixView phi_y, double hx, double hy);

} // namespace omp

} // namespace dicke::kernels
