#include "dicke/thermo.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dicke/errors.hpp"

namespace dicke::thermo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Eigen-frequencies of [[kxx, kxy], [kxy, kyy]] given det separately so the
// soft mode keeps full relative precision near the critical point.
void normal_modes(double kxx, double kyy, double kxy, double det, double &eps_minus, double &eps_plus) {
    const double disc = std::sqrt((kyy - kxx) * (kyy - kxx) + 4.0 * kxy * kxy);
    const double plus2 = 0.5 * (kxx + kyy + disc);
    eps_plus = std::sqrt(plus2);
    eps_minus = std::sqrt(std::max(det, 0.0) / plus2);
}

// acosh(1 + z) without cancellation for small z.
double acosh1p(double z) { return std::log1p(z + std::sqrt(z * (z + 2.0))); }

} // namespace

NormalPhaseSolution normal_solution(const ModelParams &p) {
    if(p.lambda > p.lambda_c) {
        std::ostringstream msg;
        msg << "normal-phase solution requested at lambda/lambda_c = " << p.lambda_rel();
        throw PhaseDomainError(msg.str());
    }
    const double w = p.omega, w0 = p.omega0;
    const double kxy = 2.0 * p.lambda * std::sqrt(w * w0);
    const double det = 4.0 * w * w0 * (p.lambda_c - p.lambda) * (p.lambda_c + p.lambda);
    NormalPhaseSolution sol;
    normal_modes(w * w, w0 * w0, kxy, det, sol.eps_minus, sol.eps_plus);
    sol.gamma1 = p.resonant() ? 0.25 * std::numbers::pi : 0.5 * std::atan2(2.0 * kxy, w0 * w0 - w * w);
    sol.c = std::cos(sol.gamma1);
    sol.s = std::sin(sol.gamma1);
    return sol;
}

SRPhaseSolution sr_solution(const ModelParams &p) {
    if(p.lambda < p.lambda_c) {
        std::ostringstream msg;
        msg << "superradiant solution requested at lambda/lambda_c = " << p.lambda_rel();
        throw PhaseDomainError(msg.str());
    }
    const double w = p.omega, w0 = p.omega0, l = p.lambda, lc = p.lambda_c;
    SRPhaseSolution sol;
    sol.mu = (lc * lc) / (l * l);
    const double kyy = w0 * w0 / (sol.mu * sol.mu);
    const double kxy = w * w0;
    // w^2 w0^2 (1/mu^2 - 1) with 1/mu^2 - 1 = (l - lc)(l + lc)(l^2 + lc^2) / lc^4.
    const double det = w * w * w0 * w0 * (l - lc) * (l + lc) * (l * l + lc * lc) / (lc * lc * lc * lc);
    normal_modes(w * w, kyy, kxy, det, sol.eps_minus, sol.eps_plus);
    sol.gamma2 = 0.5 * std::atan2(2.0 * kxy, kyy - w * w);
    sol.c = std::cos(sol.gamma2);
    sol.s = std::sin(sol.gamma2);
    sol.alpha_per_j = (2.0 * l / w) * (2.0 * l / w) * (1.0 - sol.mu) / 2.0;
    sol.beta_per_j = 1.0 - sol.mu;
    sol.omega_tilde = w0 / (2.0 * sol.mu) * (1.0 + sol.mu);
    return sol;
}

double GaussianRDMParams::cosh_rhs() const {
    if(pure) return kInf;
    return 1.0 + 2.0 * eps_minus * eps_plus / d_coeff;
}

double GaussianRDMParams::diagonal_coeff() const {
    return (2.0 * eps_minus * eps_plus + d_coeff) / (4.0 * kappa * kappa * weight());
}

double GaussianRDMParams::cross_coeff() const { return d_coeff / (2.0 * kappa * kappa * weight()); }

double GaussianRDMParams::normalisation() const {
    return std::sqrt((2.0 * diagonal_coeff() - cross_coeff()) / std::numbers::pi);
}

double GaussianRDMParams::kernel(double y, double y2) const {
    return normalisation() * std::exp(-diagonal_coeff() * (y * y + y2 * y2) + cross_coeff() * y * y2);
}

namespace {

GaussianRDMParams make_rdm(double eps_minus, double eps_plus, double c, double s, double omega) {
    GaussianRDMParams r;
    r.eps_minus = eps_minus;
    r.eps_plus = eps_plus;
    r.c = c;
    r.s = s;
    r.d_coeff = (eps_minus - eps_plus) * (eps_minus - eps_plus) * c * c * s * s;
    r.pure = r.d_coeff == 0.0;
    r.divergent = eps_minus == 0.0;
    // kappa^2 = sqrt(cosh^2 - 1) D / (2 omega E), rewritten so D -> 0 stays finite.
    const double pp = eps_minus * eps_plus;
    r.kappa = std::sqrt(std::sqrt(pp * (pp + r.d_coeff)) / (omega * r.weight()));
    return r;
}

} // namespace

GaussianRDMParams rdm_params(const NormalPhaseSolution &sol, double omega) {
    return make_rdm(sol.eps_minus, sol.eps_plus, sol.c, sol.s, omega);
}

GaussianRDMParams rdm_params(const SRPhaseSolution &sol, double omega) {
    return make_rdm(sol.eps_minus, sol.eps_plus, sol.c, sol.s, omega);
}

GaussianRDMParams rdm_params(const ModelParams &params, RdmBranch branch) {
    return branch == RdmBranch::normal ? rdm_params(normal_solution(params), params.omega)
                                       : rdm_params(sr_solution(params), params.omega);
}

GaussianRDMParams rdm_params(const ModelParams &params) {
    return rdm_params(params, params.lambda <= params.lambda_c ? RdmBranch::normal : RdmBranch::sr_single_lobe);
}

ThermalOscillator effective_temperature(const GaussianRDMParams &rdm, double omega_eff) {
    ThermalOscillator t;
    t.omega_eff = omega_eff;
    if(rdm.pure) {
        t.beta_omega = kInf;
        t.beta_inv_t = kInf;
        t.temperature = 0.0;
        return t;
    }
    const double z = 2.0 * rdm.eps_minus * rdm.eps_plus / rdm.d_coeff;
    if(!(z >= 0.0)) throw NumericalIntegrityError("effective temperature: cosh(beta Omega) below 1");
    t.beta_omega = acosh1p(z);
    t.beta_inv_t = t.beta_omega / omega_eff;
    t.temperature = t.beta_omega == 0.0 ? kInf : omega_eff / t.beta_omega;
    return t;
}

double thermal_entropy_bits(double x) {
    if(x == 0.0) return kInf;
    if(std::isinf(x)) return 0.0;
    // (x/2) coth(x/2) - ln(2 sinh(x/2)) = (x/2)(coth(x/2) - 1) - ln(1 - e^-x)
    const double e = std::exp(-x);
    return (x * e / (1.0 - e) - std::log1p(-e)) / std::numbers::ln2;
}

double lobe_entropy(const GaussianRDMParams &rdm) {
    if(rdm.divergent) return kInf;
    if(rdm.pure) return 0.0;
    return thermal_entropy_bits(acosh1p(2.0 * rdm.eps_minus * rdm.eps_plus / rdm.d_coeff));
}

double lobe_purity(const GaussianRDMParams &rdm) {
    // tanh(beta Omega / 2) = sqrt(e- e+ / (e- e+ + D)) = sqrt(e- e+ / (E E')).
    const double pp = rdm.eps_minus * rdm.eps_plus;
    if(pp == 0.0) return 0.0;
    return std::sqrt(pp / (pp + rdm.d_coeff));
}

double entropy_td(const ModelParams &params, SrConvention convention) {
    if(params.lambda == params.lambda_c) return kInf;
    if(params.lambda < params.lambda_c) return lobe_entropy(rdm_params(params, RdmBranch::normal));
    const double lobe = lobe_entropy(rdm_params(params, RdmBranch::sr_single_lobe));
    return convention == SrConvention::two_lobe ? lobe + 1.0 : lobe;
}

double critical_constant(const ModelParams &p, bool above, SrConvention convention) {
    // Near lambda_c, beta Omega -> x with x^2 ~ 4 e- e+ / D and
    // e-^2 ~ g |lambda - lambda_c|; S ~ (1 - ln x) / ln 2.
    const double w2 = p.omega * p.omega, w02 = p.omega0 * p.omega0;
    const double eps_plus_c = std::sqrt(w2 + w02);
    const double d_c = w2 * w02 / (w2 + w02);
    const double g_below = 8.0 * p.omega * p.omega0 * p.lambda_c / (w2 + w02);
    const double g = above ? 2.0 * g_below : g_below;
    double c = (1.0 - 0.5 * std::log(4.0 * eps_plus_c / d_c) - 0.25 * std::log(g)) / std::numbers::ln2;
    if(above && convention == SrConvention::two_lobe) c += 1.0;
    return c;
}

double critical_asymptote(const ModelParams &p, SrConvention convention) {
    const double delta = p.lambda - p.lambda_c;
    if(delta == 0.0) return kInf;
    if(std::abs(delta) / p.lambda_c >= 0.01)
        throw DomainError("critical asymptote only valid for |lambda - lambda_c| / lambda_c < 0.01");
    return critical_constant(p, delta > 0.0, convention) - 0.25 * std::log2(std::abs(delta));
}

double linear_entropy_td(const ModelParams &params, SrConvention convention) {
    if(params.lambda <= params.lambda_c) return 1.0 - lobe_purity(rdm_params(params, RdmBranch::normal));
    const double purity = lobe_purity(rdm_params(params, RdmBranch::sr_single_lobe));
    return convention == SrConvention::two_lobe ? 1.0 - 0.5 * purity : 1.0 - purity;
}

double ipr_td(const ModelParams &params, IprFrame frame, SrConvention convention) {
    if(params.lambda <= params.lambda_c) {
        const auto sol = normal_solution(params);
        return std::sqrt(sol.eps_minus * sol.eps_plus) / (2.0 * std::numbers::pi);
    }
    const auto sol = sr_solution(params);
    double value = std::sqrt(sol.eps_minus * sol.eps_plus) / (2.0 * std::numbers::pi);
    if(frame == IprFrame::physical) value *= std::sqrt(params.omega0 / sol.omega_tilde);
    return convention == SrConvention::two_lobe ? 0.5 * value : value;
}

double q_td(const ModelParams &params) {
    if(params.lambda <= params.lambda_c) return 0.0;
    const double mu = params.lambda_c * params.lambda_c / (params.lambda * params.lambda);
    return 1.0 - mu * mu;
}

double dq_dlambda_td(const ModelParams &params) {
    if(params.lambda < params.lambda_c) return 0.0;
    const double lc2 = params.lambda_c * params.lambda_c;
    return 4.0 * lc2 * lc2 / std::pow(params.lambda, 5);
}

double eps_minus_td(const ModelParams &params) {
    return params.lambda <= params.lambda_c ? normal_solution(params).eps_minus : sr_solution(params).eps_minus;
}

double length_td(const ModelParams &params) {
    const double e = eps_minus_td(params);
    return e == 0.0 ? kInf : 1.0 / std::sqrt(e);
}

} // namespace dicke::thermo
