#include "dicke/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dicke/errors.hpp"
#include "dicke/kernels.hpp"

namespace dicke {

namespace {

void fix_sign(std::vector<double> &v) {
    std::size_t best = 0;
    for(std::size_t i = 1; i < v.size(); ++i)
        if(std::abs(v[i]) > std::abs(v[best])) best = i;
    if(!v.empty() && v[best] < 0.0)
        for(auto &x : v) x = -x;
}

double residual_norm(const SparseHermitian &a, const std::vector<double> &v, double e) {
    std::vector<double> hv(v.size());
    kernels::omp::spmv(a, v, hv);
    double acc = 0.0;
    for(std::size_t i = 0; i < v.size(); ++i) {
        const double r = hv[i] - e * v[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

Eigenpair dense_lowest(const SparseHermitian &a) {
    const auto n = static_cast<Eigen::Index>(a.dimension());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for(const auto &t : a.triples()) m(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if(es.info() != Eigen::Success) throw SolverError("dense eigensolver failed", std::numeric_limits<double>::infinity());
    Eigenpair out;
    out.value = es.eigenvalues()(0);
    out.vector.assign(es.eigenvectors().col(0).data(), es.eigenvectors().col(0).data() + n);
    if(n > 1) out.second_value = es.eigenvalues()(1);
    out.residual = residual_norm(a, out.vector, out.value);
    return out;
}

// Restarted Lanczos, full reorthogonalisation, restart from the current Ritz vector.
Eigenpair lanczos_lowest(const SparseHermitian &a, const SolverOptions &opts) {
    const auto n = static_cast<Eigen::Index>(a.dimension());
    const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(opts.krylov_dim, a.dimension()));

    Eigen::VectorXd start(n);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for(Eigen::Index i = 0; i < n; ++i) start(i) = dist(rng);
    start.normalize();

    Eigen::MatrixXd basis(n, m + 1);
    Eigen::VectorXd w(n);
    double best_residual = std::numeric_limits<double>::infinity();
    Eigenpair out;

    for(int restart = 0; restart < opts.max_restarts; ++restart) {
        std::vector<double> alpha, beta;
        basis.col(0) = start;
        Eigen::Index steps = 0;
        for(Eigen::Index k = 0; k < m; ++k) {
            kernels::omp::spmv(a, std::span<const double>(basis.col(k).data(), static_cast<std::size_t>(n)),
                               std::span<double>(w.data(), static_cast<std::size_t>(n)));
            alpha.push_back(basis.col(k).dot(w));
            // Two passes of classical Gram-Schmidt against the whole Krylov basis.
            for(int pass = 0; pass < 2; ++pass) {
                Eigen::VectorXd coeff = basis.leftCols(k + 1).transpose() * w;
                w.noalias() -= basis.leftCols(k + 1) * coeff;
            }
            const double b = w.norm();
            beta.push_back(b);
            steps = k + 1;
            if(b < 1e-14 * std::max(1.0, std::abs(alpha.back()))) break;
            basis.col(k + 1) = w / b;
        }

        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
        for(Eigen::Index i = 0; i < steps; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if(i + 1 < steps) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double theta = es.eigenvalues()(0);
        Eigen::VectorXd ritz = basis.leftCols(steps) * es.eigenvectors().col(0);
        ritz.normalize();

        out.value = theta;
        out.vector.assign(ritz.data(), ritz.data() + n);
        out.second_value = steps > 1 ? std::optional<double>(es.eigenvalues()(1)) : std::nullopt;
        out.residual = residual_norm(a, out.vector, theta);
        best_residual = std::min(best_residual, out.residual);
        if(out.residual <= opts.tol * std::max(std::abs(theta), 1.0)) return out;
        start = ritz;
    }
    std::ostringstream msg;
    msg << "Lanczos did not converge after " << opts.max_restarts << " restarts (best residual " << best_residual
        << ")";
    throw SolverError(msg.str(), best_residual);
}

} // namespace

double GroundState::top_fock_weight() const {
    double w = 0.0;
    for(int k = 0; k <= n_atoms; ++k) {
        const double a = amplitude(n_max_used, k);
        w += a * a;
    }
    return w;
}

Eigenpair lowest_eigenpair(const SparseHermitian &a, const SolverOptions &opts) {
    if(!(opts.tol > 0.0)) throw DomainError("solver tolerance must be positive");
    if(a.dimension() == 0) throw DomainError("empty matrix");
    auto pair = a.dimension() <= opts.dense_threshold ? dense_lowest(a) : lanczos_lowest(a, opts);
    fix_sign(pair.vector);
    return pair;
}

GroundState ground_state(const SparseHermitian &hamiltonian, const BasisIndex &basis, const SolverOptions &opts) {
    if(hamiltonian.dimension() != basis.dimension()) throw DomainError("matrix and basis dimensions differ");
    GroundState gs;
    gs.n_atoms = basis.n_atoms();
    gs.n_max_used = basis.n_max();
    gs.amplitudes.assign(basis.dimension(), 0.0);

    if(opts.parity_projection) {
        const auto even = basis.sector(+1);
        const auto block = hamiltonian.restrict_to(even);
        const auto pair = lowest_eigenpair(block, opts);
        for(std::size_t i = 0; i < even.size(); ++i) gs.amplitudes[even[i]] = pair.vector[i];
        gs.energy = pair.value;
        gs.parity = +1;
    } else {
        const auto pair = lowest_eigenpair(hamiltonian, opts);
        gs.amplitudes = pair.vector;
        gs.energy = pair.value;
        if(pair.second_value) gs.doublet_gap = *pair.second_value - pair.value;
        double even = 0.0;
        for(std::size_t i = 0; i < basis.dimension(); ++i)
            if(basis.parity(i) > 0) even += gs.amplitudes[i] * gs.amplitudes[i];
        gs.parity = even >= 0.5 ? +1 : -1;
    }
    gs.residual = residual_norm(hamiltonian, gs.amplitudes, gs.energy);
    gs.converged = gs.residual <= opts.tol * std::max(std::abs(gs.energy), 1.0);
    if(!gs.converged) {
        std::ostringstream msg;
        msg << "ground state residual " << gs.residual << " above tolerance";
        throw SolverError(msg.str(), gs.residual);
    }
    return gs;
}

GroundState converge_cutoff(const ModelParams &params, const CutoffPolicy &policy, const SolverOptions &opts) {
    if(!(policy.growth > 1.0)) throw DomainError("cutoff growth must exceed 1");
    if(policy.n_max_start < 0) throw DomainError("cutoff start must be non-negative");

    auto solve = [&](int n_max) {
        const auto basis = build_basis(params, n_max, policy.limits);
        return ground_state(assemble_hamiltonian(params, basis), basis, opts);
    };

    std::vector<double> energies;
    int n_max = std::min(policy.n_max_start, policy.n_max_limit);
    GroundState previous = solve(n_max);
    energies.push_back(previous.energy);
    while(true) {
        const int next = std::max(n_max + 1, static_cast<int>(std::ceil(n_max * policy.growth)));
        if(next > policy.n_max_limit) {
            std::ostringstream msg;
            msg << "cutoff limit " << policy.n_max_limit << " reached before convergence; energies:";
            for(double e : energies) msg << ' ' << e;
            throw ConvergenceError(msg.str(), energies);
        }
        GroundState current = solve(next);
        energies.push_back(current.energy);
        if(std::abs(previous.energy - current.energy) < policy.energy_tol &&
           previous.top_fock_weight() < policy.top_weight_tol) {
            previous.energy_sequence = energies;
            return previous;
        }
        previous = std::move(current);
        n_max = next;
    }
}

} // namespace dicke
