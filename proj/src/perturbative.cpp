#include "dicke/perturbative.hpp"

#include <cmath>
#include <limits>

#include "dicke/errors.hpp"

namespace dicke {

PerturbativeResult perturbative_entropy(const ModelParams &params) {
    PerturbativeResult r;
    r.sigma = params.lambda / (params.omega + params.omega0);
    const double s2 = r.sigma * r.sigma;
    const double p = 1.0 / (1.0 + s2);
    const double q = s2 / (1.0 + s2);
    r.s_pert = 0.0;
    if(q > 0.0) r.s_pert = -p * std::log2(p) - q * std::log2(q);
    return r;
}

double strong_coupling_entropy_limit() { return 1.0; }

double strong_coupling_field_amplitude(const ModelParams &params) {
    return std::sqrt(static_cast<double>(params.n_atoms)) * params.lambda / params.omega;
}

int strong_coupling_cutoff(const ModelParams &params) {
    const double a = strong_coupling_field_amplitude(params);
    return static_cast<int>(std::ceil(a * a + 6.0 * a));
}

GroundState strong_coupling_state(const ModelParams &params, const BasisIndex &basis) {
    if(basis.n_atoms() != params.n_atoms) throw DomainError("basis and parameters disagree on n_atoms");
    if(basis.n_max() < strong_coupling_cutoff(params))
        throw DomainError("cutoff too small for the coherent field amplitude");

    const double alpha = strong_coupling_field_amplitude(params);
    const int n_max = basis.n_max();
    const int n_atoms = basis.n_atoms();

    // Coherent state amplitudes e^{-a^2/2} a^n / sqrt(n!).
    std::vector<double> coherent(static_cast<std::size_t>(n_max) + 1);
    coherent[0] = std::exp(-0.5 * alpha * alpha);
    for(int n = 1; n <= n_max; ++n) coherent[static_cast<std::size_t>(n)] = coherent[n - 1] * alpha / std::sqrt(n);

    // |Jx = -j> in the Jz basis: (-1)^k sqrt(C(N, k)) / 2^(N/2), k = m + j.
    std::vector<double> spin(static_cast<std::size_t>(n_atoms) + 1);
    for(int k = 0; k <= n_atoms; ++k) {
        const double log_binom = std::lgamma(n_atoms + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n_atoms - k + 1.0);
        const double mag = std::exp(0.5 * log_binom - 0.5 * n_atoms * std::log(2.0));
        spin[static_cast<std::size_t>(k)] = (k % 2 ? -1.0 : 1.0) * mag;
    }

    // branch + Pi branch keeps only the even-parity entries (doubled).
    GroundState gs;
    gs.n_atoms = n_atoms;
    gs.n_max_used = n_max;
    gs.parity = +1;
    gs.energy = std::numeric_limits<double>::quiet_NaN();
    gs.residual = std::numeric_limits<double>::quiet_NaN();
    gs.amplitudes.assign(basis.dimension(), 0.0);
    double norm = 0.0;
    for(int n = 0; n <= n_max; ++n)
        for(int k = 0; k <= n_atoms; ++k) {
            const auto i = basis.index(n, k);
            if(basis.parity(i) < 0) continue;
            const double a = 2.0 * coherent[static_cast<std::size_t>(n)] * spin[static_cast<std::size_t>(k)];
            gs.amplitudes[i] = a;
            norm += a * a;
        }
    norm = std::sqrt(norm);
    for(auto &a : gs.amplitudes) a /= norm;
    return gs;
}

} // namespace dicke
