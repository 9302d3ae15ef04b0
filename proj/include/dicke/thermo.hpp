#pragma once

// Exact N -> infinity solutions of the Dicke model after Holstein-Primakoff
// bosonisation. Coordinates: x is the field quadrature, y the atomic
// (Holstein-Primakoff boson) quadrature, both unit mass.
//
// Normal phase (lambda <= lambda_c) frequency matrix in (x, y):
//   K = [[omega^2, 2 lambda sqrt(omega omega0)], [., omega0^2]]
// Superradiant phase (lambda >= lambda_c), displaced and rescaled (X, Y):
//   K = [[omega^2, omega omega0], [., omega0^2 / mu^2]],  mu = lambda_c^2 / lambda^2
// eps_-^2 <= eps_+^2 are the eigenvalues of K; the lower normal mode is
// c x - s y with c = cos(gamma), s = sin(gamma).

#include "dicke/model.hpp"

namespace dicke::thermo {

struct NormalPhaseSolution {
    double eps_minus = 0.0;
    double eps_plus = 0.0;
    double gamma1 = 0.0;
    double c = 1.0;
    double s = 0.0;
};

struct SRPhaseSolution {
    double eps_minus = 0.0;
    double eps_plus = 0.0;
    double gamma2 = 0.0;
    double c = 1.0;
    double s = 0.0;
    double mu = 1.0;
    double alpha_per_j = 0.0; // field displacement alpha / j
    double beta_per_j = 0.0;  // atomic displacement beta / j (not the inverse temperature)
    double omega_tilde = 0.0; // (omega0 / 2 mu)(1 + mu)
};

/// Throws PhaseDomainError above lambda_c.
NormalPhaseSolution normal_solution(const ModelParams &params);

/// Throws PhaseDomainError below lambda_c.
SRPhaseSolution sr_solution(const ModelParams &params);

/// Atomic reduced density matrix of one Gaussian lobe, in the coordinate
/// rescaled by kappa:
///   rho(y, y') = norm * exp(-A (y^2 + y'^2) + B y y'),
///   A = (2 e- e+ + D) / (4 kappa^2 E),  B = D / (2 kappa^2 E),
///   E = e- c^2 + e+ s^2,  D = (e- - e+)^2 c^2 s^2.
struct GaussianRDMParams {
    double eps_minus = 0.0;
    double eps_plus = 0.0;
    double c = 1.0;
    double s = 0.0;
    double d_coeff = 0.0;
    double kappa = 1.0;
    bool pure = false;      // D == 0: rank one
    bool divergent = false; // eps_minus == 0: critical point

    double weight() const { return eps_minus * c * c + eps_plus * s * s; }
    /// 1 + 2 e- e+ / D, +inf for a pure state.
    double cosh_rhs() const;
    double diagonal_coeff() const;
    double cross_coeff() const;
    double normalisation() const;
    double kernel(double y, double y2) const;
};

enum class RdmBranch { normal, sr_single_lobe };

/// kappa fixed by matching a thermal oscillator of unit mass and frequency omega.
GaussianRDMParams rdm_params(const NormalPhaseSolution &sol, double omega);
GaussianRDMParams rdm_params(const SRPhaseSolution &sol, double omega);
GaussianRDMParams rdm_params(const ModelParams &params, RdmBranch branch);
/// Branch chosen by the side of lambda_c.
GaussianRDMParams rdm_params(const ModelParams &params);

struct ThermalOscillator {
    double omega_eff = 1.0; // Omega
    double mass = 1.0;
    double temperature = 0.0;
    double beta_inv_t = 0.0;  // 1 / T
    double beta_omega = 0.0;  // Omega / T
};

ThermalOscillator effective_temperature(const GaussianRDMParams &rdm, double omega_eff);

/// Entropy in bits of a thermal oscillator with Omega / T = beta_omega.
double thermal_entropy_bits(double beta_omega);

/// Entropy of one Gaussian lobe; independent of kappa.
double lobe_entropy(const GaussianRDMParams &rdm);

/// Tr rho^2 of one Gaussian lobe.
double lobe_purity(const GaussianRDMParams &rdm);

/// How the superradiant side is reported: the positive-parity two-lobe state
/// (one extra bit, halved purity and IPR) or a single broken-symmetry lobe.
enum class SrConvention { two_lobe, single_lobe };

/// +inf at lambda_c.
double entropy_td(const ModelParams &params, SrConvention convention = SrConvention::two_lobe);

/// Leading log behaviour near lambda_c: const - (1/4) log2 |lambda - lambda_c|.
/// Requires 0 < |lambda - lambda_c| / lambda_c < 0.01.
double critical_asymptote(const ModelParams &params, SrConvention convention = SrConvention::two_lobe);
double critical_constant(const ModelParams &params, bool above, SrConvention convention = SrConvention::two_lobe);

double linear_entropy_td(const ModelParams &params, SrConvention convention = SrConvention::two_lobe);

/// Coordinates in which psi^4 is integrated on the superradiant side: the
/// rescaled (X, Y) frame of the lobe, or the physical (x, y) frame which adds
/// the Jacobian sqrt(omega0 / omega_tilde).
enum class IprFrame { rescaled, physical };

double ipr_td(const ModelParams &params, IprFrame frame = IprFrame::rescaled,
              SrConvention convention = SrConvention::two_lobe);

double q_td(const ModelParams &params);

/// dQ/dlambda; at lambda_c the superradiant (right) derivative 4 / lambda_c.
double dq_dlambda_td(const ModelParams &params);

/// Characteristic length l_- = eps_-^(-1/2) on either side.
double eps_minus_td(const ModelParams &params);
double length_td(const ModelParams &params);

} // namespace dicke::thermo
