#pragma once

// Single-mode Dicke Hamiltonian in the truncated Fock x Dicke product basis.
//
//   H = omega0 Jz + omega a^dag a + lambda / sqrt(2j) (a^dag + a)(J+ + J-)
//
// Basis states are |n> (x) |j, m> with n in [0, n_max] and m in [-j, j].
// Internally m is carried as k = m + j in [0, N] so every index is an integer.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace dicke {

struct ModelParams {
    double omega = 1.0;  // field frequency
    double omega0 = 1.0; // atomic splitting
    double lambda = 0.0; // atom-field coupling
    int n_atoms = 1;     // N, pseudo-spin length j = N / 2
    double lambda_c = 0.5;

    double j() const { return 0.5 * n_atoms; }
    double lambda_rel() const { return lambda / lambda_c; }
    bool resonant() const { return omega == omega0; }
};

/// Validates and derives lambda_c = sqrt(omega * omega0) / 2.
ModelParams make_params(double omega, double omega0, double lambda, int n_atoms);

/// Same frequencies and N, different coupling.
ModelParams with_lambda(const ModelParams &p, double lambda);

struct BasisState {
    int n; // Fock occupation
    int k; // m + j
};

struct BasisLimits {
    std::size_t max_dimension = 4'000'000;
};

class BasisIndex {
  public:
    BasisIndex(int n_atoms, int n_max, BasisLimits limits = {});

    int n_atoms() const { return n_atoms_; }
    int n_max() const { return n_max_; }
    int n_spin() const { return n_atoms_ + 1; }
    std::size_t dimension() const { return static_cast<std::size_t>(n_max_ + 1) * n_spin(); }

    /// n-major, m-minor.
    std::size_t index(int n, int k) const { return static_cast<std::size_t>(n) * n_spin() + k; }
    BasisState state(std::size_t i) const {
        return {static_cast<int>(i / n_spin()), static_cast<int>(i % n_spin())};
    }
    double m(int k) const { return k - 0.5 * n_atoms_; }

    /// (-1)^(n + m + j) = (-1)^(n + k).
    int parity(std::size_t i) const {
        auto s = state(i);
        return ((s.n + s.k) & 1) ? -1 : +1;
    }

    /// Indices of all states in a parity sector, ascending.
    std::vector<std::size_t> sector(int parity) const;

  private:
    int n_atoms_;
    int n_max_;
};

BasisIndex build_basis(const ModelParams &params, int n_max, BasisLimits limits = {});

struct Triple {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Real symmetric matrix in CSR form. Rows are sorted by column, every
/// diagonal entry is stored (possibly zero), both triangles are kept.
class SparseHermitian {
  public:
    SparseHermitian() = default;

    /// Triples may come in any order; duplicates are summed.
    static SparseHermitian from_triples(std::size_t dimension, std::vector<Triple> triples);

    std::size_t dimension() const { return dim_; }
    std::size_t nonzeros() const { return values_.size(); }

    std::span<const std::size_t> row_ptr() const { return row_ptr_; }
    std::span<const std::uint32_t> col_idx() const { return col_idx_; }
    std::span<const double> values() const { return values_; }

    /// Zero when (row, col) is not stored.
    double value(std::size_t row, std::size_t col) const;

    /// Entries in (row, col) order.
    std::vector<Triple> triples() const;

    /// Principal submatrix on the given ascending index list.
    SparseHermitian restrict_to(std::span<const std::size_t> indices) const;

    bool is_symmetric() const;

  private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> col_idx_;
    std::vector<double> values_;
};

SparseHermitian assemble_hamiltonian(const ModelParams &params, const BasisIndex &basis);

/// Diagonal +/-1 matrix of exp(i pi (a^dag a + Jz + j)).
SparseHermitian parity_operator(const BasisIndex &basis);

/// "row col value" lines, 17 significant digits, sorted by (row, col).
void write_matrix_dump(std::ostream &os, const SparseHermitian &m);

} // namespace dicke
