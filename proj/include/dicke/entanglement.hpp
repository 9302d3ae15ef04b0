#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "dicke/eigensolver.hpp"
#include "dicke/model.hpp"

namespace dicke {

enum class Subsystem { atoms, field, single_atom };

class ReducedDensityMatrix {
  public:
    /// Checks trace and symmetry, diagonalises, clips eigenvalues to [0, 1].
    ReducedDensityMatrix(Subsystem tag, Eigen::MatrixXd matrix);

    Subsystem tag() const { return tag_; }
    const Eigen::MatrixXd &matrix() const { return matrix_; }
    Eigen::Index dimension() const { return matrix_.rows(); }

    /// Descending.
    const std::vector<double> &eigenvalues() const { return eigenvalues_; }
    double purity() const;

  private:
    Subsystem tag_;
    Eigen::MatrixXd matrix_;
    std::vector<double> eigenvalues_;
};

ReducedDensityMatrix partial_trace(const GroundState &state, const BasisIndex &basis, Subsystem keep);

/// -sum p log2 p over eigenvalues above 1e-14, in bits.
double von_neumann_entropy(const ReducedDensityMatrix &rdm);

/// eta (1 - Tr rho^2) with eta = d / (d - 1) for a d-dimensional subsystem.
double linear_entropy(const ReducedDensityMatrix &rdm, int subsystem_dim);

struct CollectiveMoments {
    double jz = 0.0;    // <Jz>
    double jplus = 0.0; // <J+> (real in this basis); <J-> is its conjugate
};
CollectiveMoments collective_moments(const GroundState &state, const BasisIndex &basis);

/// 2x2 state of any one atom, rows/cols ordered (lower, upper).
ReducedDensityMatrix single_atom_rdm(const GroundState &state, const BasisIndex &basis);

struct QBreakdown {
    double q = 0.0;
    double l_atom = 0.0;  // L_k, eta_2 = 2
    double l_field = 0.0; // L_b, eta = 1 + 1/N
};
QBreakdown average_linear_entropy(const GroundState &state, const BasisIndex &basis);
double average_linear_entropy_Q(const GroundState &state, const BasisIndex &basis);

/// Tr rho_k^2 for every qubit of an n-qubit pure state; qubit 0 is the most
/// significant bit of the amplitude index.
std::vector<double> qubit_purities(std::span<const double> amplitudes);

/// 2 [1 - (1/n) sum_k Tr rho_k^2] for a normalised 2^n amplitude vector, n <= 12.
double meyer_wallach_Q_generic(std::span<const double> amplitudes);

/// Normalised harmonic-oscillator eigenfunctions phi_0..phi_{n_max} at x for
/// unit mass and frequency `freq`.
std::vector<double> oscillator_functions(int n_max, double freq, double x);

struct QuadratureGrid {
    double x_max = 0.0; // field coordinate half-width
    double y_max = 0.0; // atomic (Holstein-Primakoff) coordinate half-width
    int nx = 0;
    int ny = 0;
    /// Scales point counts (and keeps the extent).
    QuadratureGrid refined(int factor) const;
};

/// Extent and spacing chosen from the highest occupied Fock and Dicke levels.
QuadratureGrid auto_grid(const GroundState &state, const BasisIndex &basis, const ModelParams &params);

/// Unnormalised inverse participation ratio int dx dy psi^4 of the ground
/// state in the (field, Holstein-Primakoff boson) coordinate representation.
double inverse_participation_ratio(const GroundState &state, const BasisIndex &basis, const ModelParams &params,
                                   std::optional<QuadratureGrid> grid = std::nullopt);

} // namespace dicke
