#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dicke/model.hpp"

namespace dicke {

struct SolverOptions {
    double tol = 1e-10;             // relative residual |Hv - Ev| <= tol * max(|E|, 1)
    bool parity_projection = true;  // solve in the positive-parity block
    std::size_t dense_threshold = 600;
    std::size_t krylov_dim = 120;
    int max_restarts = 200;
    unsigned seed = 12345;
};

struct GroundState {
    double energy = 0.0;
    std::vector<double> amplitudes; // over the full BasisIndex, n-major
    int parity = +1;
    int n_atoms = 0;
    int n_max_used = 0;
    bool converged = false;
    double residual = 0.0;                  // |Hv - Ev|_2
    std::optional<double> doublet_gap;      // only without parity projection
    std::vector<double> energy_sequence;    // filled by converge_cutoff

    /// Amplitude of |n> (x) |j, m = k - j>.
    double amplitude(int n, int k) const { return amplitudes[static_cast<std::size_t>(n) * (n_atoms + 1) + k]; }

    /// Probability weight in the highest Fock shell n = n_max_used.
    double top_fock_weight() const;
};

/// Lowest eigenpair of a real symmetric matrix. Dense below
/// `opts.dense_threshold`, restarted Lanczos with full reorthogonalisation
/// above. Sign fixed so the largest-magnitude amplitude is positive.
GroundState ground_state(const SparseHermitian &hamiltonian, const BasisIndex &basis, const SolverOptions &opts = {});

/// Plain extremal solver on an arbitrary symmetric matrix.
struct Eigenpair {
    double value;
    std::vector<double> vector;
    double residual;
    std::optional<double> second_value;
};
Eigenpair lowest_eigenpair(const SparseHermitian &a, const SolverOptions &opts = {});

struct CutoffPolicy {
    int n_max_start = 16;
    double growth = 1.5;
    double energy_tol = 1e-9;
    double top_weight_tol = 1e-8;
    int n_max_limit = 400;
    BasisLimits limits = {};
};

/// Grows n_max until two successive ground energies agree to energy_tol and
/// the smaller cutoff's top Fock shell carries less than top_weight_tol. The
/// returned state is the smaller (certified) cutoff.
GroundState converge_cutoff(const ModelParams &params, const CutoffPolicy &policy = {}, const SolverOptions &opts = {});

} // namespace dicke
