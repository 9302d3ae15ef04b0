#include "dicke/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dicke::kernels {

namespace {

// psi along one grid row x_a: t[k] = sum_n coeff[n, k] phi_x[a, n], then
// psi(a, b) = sum_k t[k] phi_y[b, k].
void contract_row(MatrixView coeff, MatrixView phi_x, std::size_t a, std::span<double> t) {
    std::fill(t.begin(), t.end(), 0.0);
    for(std::size_t n = 0; n < coeff.rows; ++n) {
        const double px = phi_x(a, n);
        if(px == 0.0) continue;
        const double *row = coeff.data.data() + n * coeff.cols;
        for(std::size_t k = 0; k < coeff.cols; ++k) t[k] += px * row[k];
    }
}

double psi_at(std::span<const double> t, MatrixView phi_y, std::size_t b) {
    const double *py = phi_y.data.data() + b * phi_y.cols;
    double v = 0.0;
    for(std::size_t k = 0; k < t.size(); ++k) v += t[k] * py[k];
    return v;
}

} // namespace

namespace serial {

void spmv(const SparseHermitian &a, std::span<const double> x, std::span<double> y) {
    const auto rp = a.row_ptr();
    const auto ci = a.col_idx();
    const auto v = a.values();
    for(std::size_t r = 0; r < a.dimension(); ++r) {
        double acc = 0.0;
        for(std::size_t p = rp[r]; p < rp[r + 1]; ++p) acc += v[p] * x[ci[p]];
        y[r] = acc;
    }
}

void gram_columns(MatrixView m, std::span<double> out) {
    for(std::size_t c = 0; c < m.cols; ++c)
        for(std::size_t c2 = 0; c2 < m.cols; ++c2) {
            double acc = 0.0;
            for(std::size_t r = 0; r < m.rows; ++r) acc += m(r, c) * m(r, c2);
            out[c * m.cols + c2] = acc;
        }
}

void gram_rows(MatrixView m, std::span<double> out) {
    for(std::size_t r = 0; r < m.rows; ++r)
        for(std::size_t r2 = 0; r2 < m.rows; ++r2) {
            double acc = 0.0;
            for(std::size_t c = 0; c < m.cols; ++c) acc += m(r, c) * m(r2, c);
            out[r * m.rows + r2] = acc;
        }
}

IprSums ipr_sums(MatrixView coeff, MatrixView phi_x, MatrixView phi_y, double hx, double hy) {
    IprSums s;
    std::vector<double> t(coeff.cols);
    double q4 = 0.0, q2 = 0.0;
    for(std::size_t a = 0; a < phi_x.rows; ++a) {
        contract_row(coeff, phi_x, a, t);
        const bool edge_row = a == 0 || a + 1 == phi_x.rows;
        for(std::size_t b = 0; b < phi_y.rows; ++b) {
            const double psi = psi_at(t, phi_y, b);
            const double p2 = psi * psi;
            q2 += p2;
            q4 += p2 * p2;
            const double ab = std::abs(psi);
            s.max_abs = std::max(s.max_abs, ab);
            if(edge_row || b == 0 || b + 1 == phi_y.rows) s.boundary_abs = std::max(s.boundary_abs, ab);
        }
    }
    s.integral = q4 * hx * hy;
    s.norm = q2 * hx * hy;
    return s;
}

} // namespace serial

namespace omp {

void spmv(const SparseHermitian &a, std::span<const double> x, std::span<double> y) {
    const auto rp = a.row_ptr();
    const auto ci = a.col_idx();
    const auto v = a.values();
    const auto dim = static_cast<long>(a.dimension());
#pragma omp parallel for schedule(static) if(dim > 4096)
    for(long r = 0; r < dim; ++r) {
        double acc = 0.0;
        for(std::size_t p = rp[r]; p < rp[r + 1]; ++p) acc += v[p] * x[ci[p]];
        y[r] = acc;
    }
}

void gram_columns(MatrixView m, std::span<double> out) {
    const auto cols = static_cast<long>(m.cols);
    // Upper triangle only, mirrored afterwards.
#pragma omp parallel for schedule(dynamic, 4)
    for(long c = 0; c < cols; ++c) {
        for(long c2 = c; c2 < cols; ++c2) {
            double acc = 0.0;
            for(std::size_t r = 0; r < m.rows; ++r) acc += m(r, c) * m(r, c2);
            out[c * cols + c2] = acc;
            out[c2 * cols + c] = acc;
        }
    }
}

void gram_rows(MatrixView m, std::span<double> out) {
    const auto rows = static_cast<long>(m.rows);
#pragma omp parallel for schedule(dynamic, 4)
    for(long r = 0; r < rows; ++r) {
        const double *a = m.data.data() + r * m.cols;
        for(long r2 = r; r2 < rows; ++r2) {
            const double *b = m.data.data() + r2 * m.cols;
            double acc = 0.0;
            for(std::size_t c = 0; c < m.cols; ++c) acc += a[c] * b[c];
            out[r * rows + r2] = acc;
            out[r2 * rows + r] = acc;
        }
    }
}

IprSums ipr_sums(MatrixView coeff, MatrixView phi_x, MatrixView phi_y, double hx, double hy) {
    // Per-row partial sums reduced serially afterwards, so the result does not
    // depend on the thread count.
    const auto nx = static_cast<long>(phi_x.rows);
    std::vector<double> q4(phi_x.rows), q2(phi_x.rows);
    double max_abs = 0.0, boundary_abs = 0.0;
#pragma omp parallel reduction(max : max_abs, boundary_abs)
    {
        std::vector<double> t(coeff.cols);
#pragma omp for schedule(static)
        for(long a = 0; a < nx; ++a) {
            contract_row(coeff, phi_x, static_cast<std::size_t>(a), t);
            const bool edge_row = a == 0 || a + 1 == nx;
            double r4 = 0.0, r2 = 0.0;
            for(std::size_t b = 0; b < phi_y.rows; ++b) {
                const double psi = psi_at(t, phi_y, b);
                const double p2 = psi * psi;
                r2 += p2;
                r4 += p2 * p2;
                const double ab = std::abs(psi);
                max_abs = std::max(max_abs, ab);
                if(edge_row || b == 0 || b + 1 == phi_y.rows) boundary_abs = std::max(boundary_abs, ab);
            }
            q4[static_cast<std::size_t>(a)] = r4;
            q2[static_cast<std::size_t>(a)] = r2;
        }
    }
    double s4 = 0.0, s2 = 0.0;
    for(std::size_t a = 0; a < phi_x.rows; ++a) {
        s4 += q4[a];
        s2 += q2[a];
    }
    return {s4 * hx * hy, s2 * hx * hy, max_abs, boundary_abs};
}

} // namespace omp

} // namespace dicke::kernels
