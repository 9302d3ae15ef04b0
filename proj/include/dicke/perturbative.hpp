#pragma once

#include "dicke/eigensolver.hpp"
#include "dicke/model.hpp"

namespace dicke {

struct PerturbativeResult {
    double sigma = 0.0;            // lambda / (omega + omega0)
    double s_pert = 0.0;           // bits
    double validity_hint = 0.4;    // trusted for lambda / lambda_c up to about this
};

/// Weak-coupling entropy: binary entropy of 1 / (1 + sigma^2). Independent of N.
PerturbativeResult perturbative_entropy(const ModelParams &params);

/// lambda -> infinity limit of the atom-field entropy, in bits.
double strong_coupling_entropy_limit();

/// Coherent amplitude sqrt(2j) lambda / omega of the limiting field state.
double strong_coupling_field_amplitude(const ModelParams &params);

/// Smallest cutoff holding the coherent-state Poisson tail: alpha^2 + 6 alpha.
int strong_coupling_cutoff(const ModelParams &params);

/// Positive-parity superposition of |alpha> (x) |Jx = -j> and |-alpha> (x) |Jx = +j>
/// in the truncated basis, normalised. Only `amplitudes`, `parity`, `n_atoms`
/// and `n_max_used` are meaningful; the energy is left NaN.
GroundState strong_coupling_state(const ModelParams &params, const BasisIndex &basis);

} // namespace dicke
