#include "dicke/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dicke/errors.hpp"
#include "dicke/kernels.hpp"

namespace dicke {

namespace {

constexpr double kTraceTol = 1e-8;
constexpr double kNegativeTol = 1e-10;
constexpr double kClipBudget = 1e-9;
constexpr double kEntropyFloor = 1e-14;

kernels::MatrixView amplitude_view(const GroundState &state, const BasisIndex &basis) {
    if(state.amplitudes.size() != basis.dimension() || state.n_atoms != basis.n_atoms())
        throw DomainError("ground state does not live on this basis");
    return {state.amplitudes, static_cast<std::size_t>(basis.n_max() + 1), static_cast<std::size_t>(basis.n_spin())};
}

} // namespace

ReducedDensityMatrix::ReducedDensityMatrix(Subsystem tag, Eigen::MatrixXd matrix)
    : tag_(tag), matrix_(std::move(matrix)) {
    if(matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) throw DomainError("density matrix must be square");
    const double trace = matrix_.trace();
    if(std::abs(trace - 1.0) > kTraceTol) {
        std::ostringstream msg;
        msg << "density matrix trace " << trace << " deviates from 1";
        throw NumericalIntegrityError(msg.str());
    }
    if((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw NumericalIntegrityError("density matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    eigenvalues_.assign(ev.data(), ev.data() + ev.size());
    std::sort(eigenvalues_.begin(), eigenvalues_.end(), std::greater<>());
    double clipped = 0.0;
    for(auto &p : eigenvalues_) {
        if(p < -kNegativeTol) {
            std::ostringstream msg;
            msg << "density matrix eigenvalue " << p << " is negative";
            throw NumericalIntegrityError(msg.str());
        }
        if(p < 0.0) {
            clipped += -p;
            p = 0.0;
        } else if(p > 1.0) {
            clipped += p - 1.0;
            p = 1.0;
        }
    }
    if(clipped > kClipBudget) throw NumericalIntegrityError("eigenvalue clipping removed too much weight");
}

double ReducedDensityMatrix::purity() const { return matrix_.squaredNorm(); }

ReducedDensityMatrix partial_trace(const GroundState &state, const BasisIndex &basis, Subsystem keep) {
    const auto view = amplitude_view(state, basis);
    switch(keep) {
    case Subsystem::atoms: {
        Eigen::MatrixXd rho(view.cols, view.cols);
        kernels::omp::gram_columns(view, std::span<double>(rho.data(), static_cast<std::size_t>(rho.size())));
        return {Subsystem::atoms, std::move(rho)};
    }
    case Subsystem::field: {
        Eigen::MatrixXd rho(view.rows, view.rows);
        kernels::omp::gram_rows(view, std::span<double>(rho.data(), static_cast<std::size_t>(rho.size())));
        return {Subsystem::field, std::move(rho)};
    }
    case Subsystem::single_atom:
        return single_atom_rdm(state, basis);
    }
    throw DomainError("unknown subsystem");
}

double von_neumann_entropy(const ReducedDensityMatrix &rdm) {
    double s = 0.0;
    for(double p : rdm.eigenvalues())
        if(p > kEntropyFloor) s -= p * std::log2(p);
    return std::max(s, 0.0);
}

double linear_entropy(const ReducedDensityMatrix &rdm, int subsystem_dim) {
    if(subsystem_dim < 2) throw DomainError("linear entropy needs a subsystem dimension of at least 2");
    const double purity = rdm.purity();
    if(!(purity >= 0.0) || purity > 1.0 + 1e-10) {
        std::ostringstream msg;
        msg << "purity " << purity << " outside [0, 1]";
        throw NumericalIntegrityError(msg.str());
    }
    const double eta = static_cast<double>(subsystem_dim) / (subsystem_dim - 1);
    return std::max(0.0, eta * (1.0 - purity));
}

CollectiveMoments collective_moments(const GroundState &state, const BasisIndex &basis) {
    const auto view = amplitude_view(state, basis);
    const int n_atoms = basis.n_atoms();
    const double j = 0.5 * n_atoms;
    CollectiveMoments out;
    for(std::size_t n = 0; n < view.rows; ++n) {
        for(int k = 0; k <= n_atoms; ++k) {
            const double a = view(n, static_cast<std::size_t>(k));
            const double m = basis.m(k);
            out.jz += a * a * m;
            if(k < n_atoms)
                out.jplus += view(n, static_cast<std::size_t>(k + 1)) * a * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }
    return out;
}

ReducedDensityMatrix single_atom_rdm(const GroundState &state, const BasisIndex &basis) {
    const auto mom = collective_moments(state, basis);
    const double n = basis.n_atoms();
    Eigen::Matrix2d rho;
    rho << 0.5 * (1.0 - 2.0 * mom.jz / n), mom.jplus / n, mom.jplus / n, 0.5 * (1.0 + 2.0 * mom.jz / n);
    return {Subsystem::single_atom, rho};
}

QBreakdown average_linear_entropy(const GroundState &state, const BasisIndex &basis) {
    const int n = basis.n_atoms();
    QBreakdown out;
    out.l_atom = linear_entropy(single_atom_rdm(state, basis), 2);
    out.l_field = linear_entropy(partial_trace(state, basis, Subsystem::field), n + 1);
    out.q = (n * out.l_atom + out.l_field) / (n + 1.0);
    return out;
}

double average_linear_entropy_Q(const GroundState &state, const BasisIndex &basis) {
    return average_linear_entropy(state, basis).q;
}

std::vector<double> qubit_purities(std::span<const double> amplitudes) {
    const std::size_t size = amplitudes.size();
    if(size < 2 || !std::has_single_bit(size)) throw DomainError("qubit state length must be a power of two");
    const int n = std::countr_zero(size);
    double norm = 0.0;
    for(double a : amplitudes) norm += a * a;
    if(std::abs(norm - 1.0) > 1e-10) throw DomainError("qubit state is not normalised");

    std::vector<double> purities(static_cast<std::size_t>(n));
    for(int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        double p0 = 0.0, p1 = 0.0, coh = 0.0;
        for(std::size_t i = 0; i < size; ++i) {
            if(i & bit) {
                p1 += amplitudes[i] * amplitudes[i];
            } else {
                p0 += amplitudes[i] * amplitudes[i];
                coh += amplitudes[i] * amplitudes[i | bit];
            }
        }
        purities[static_cast<std::size_t>(q)] = p0 * p0 + p1 * p1 + 2.0 * coh * coh;
    }
    return purities;
}

double meyer_wallach_Q_generic(std::span<const double> amplitudes) {
    if(amplitudes.size() > (std::size_t{1} << 12)) throw DomainError("at most 12 qubits supported");
    const auto purities = qubit_purities(amplitudes);
    double mean = 0.0;
    for(double p : purities) mean += p;
    mean /= static_cast<double>(purities.size());
    return 2.0 * (1.0 - mean);
}

std::vector<double> oscillator_functions(int n_max, double freq, double x) {
    // phi_{n+1} = sqrt(2/(n+1)) xi phi_n - sqrt(n/(n+1)) phi_{n-1}, xi = sqrt(freq) x.
    // Run on a rescaled sequence and carry the scale in log form.
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    const double xi = std::sqrt(freq) * x;
    double log_scale = 0.25 * std::log(freq / std::numbers::pi) - 0.5 * xi * xi;
    double prev = 0.0, cur = 1.0;
    out[0] = std::exp(log_scale);
    for(int n = 0; n < n_max; ++n) {
        const double next = std::sqrt(2.0 / (n + 1)) * xi * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
        prev = cur;
        cur = next;
        if(std::abs(cur) > 1e100) {
            prev *= 1e-100;
            cur *= 1e-100;
            log_scale += 100.0 * std::log(10.0);
        }
        out[static_cast<std::size_t>(n) + 1] = cur * std::exp(log_scale);
    }
    return out;
}

QuadratureGrid QuadratureGrid::refined(int factor) const {
    QuadratureGrid g = *this;
    g.nx = (nx - 1) * factor + 1;
    g.ny = (ny - 1) * factor + 1;
    return g;
}

QuadratureGrid auto_grid(const GroundState &state, const BasisIndex &basis, const ModelParams &params) {
    const auto view = amplitude_view(state, basis);
    int n_hi = 0, k_hi = 0;
    for(std::size_t n = 0; n < view.rows; ++n)
        for(std::size_t k = 0; k < view.cols; ++k)
            if(view(n, k) * view(n, k) > 1e-16) {
                n_hi = std::max(n_hi, static_cast<int>(n));
                k_hi = std::max(k_hi, static_cast<int>(k));
            }
    auto extent = [](int level, double freq) { return std::sqrt((2.0 * level + 1.0) / freq) + 6.0 / std::sqrt(freq); };
    // psi^4 carries wavenumbers up to ~4 sqrt(freq (2 level + 1)); the extra
    // 15 sqrt(freq) pushes the trapezoid aliasing error below 1e-12.
    auto spacing = [](int level, double freq) {
        return 2.0 * std::numbers::pi / (4.0 * std::sqrt(freq * (2.0 * level + 1.0)) + 15.0 * std::sqrt(freq));
    };
    QuadratureGrid g;
    g.x_max = extent(n_hi, params.omega);
    g.y_max = extent(k_hi, params.omega0);
    g.nx = 2 * static_cast<int>(std::ceil(g.x_max / spacing(n_hi, params.omega))) + 1;
    g.ny = 2 * static_cast<int>(std::ceil(g.y_max / spacing(k_hi, params.omega0))) + 1;
    return g;
}

double inverse_participation_ratio(const GroundState &state, const BasisIndex &basis, const ModelParams &params,
                                   std::optional<QuadratureGrid> grid) {
    const auto coeff = amplitude_view(state, basis);
    const auto g = grid ? *grid : auto_grid(state, basis, params);
    if(g.nx < 3 || g.ny < 3 || !(g.x_max > 0.0) || !(g.y_max > 0.0)) throw DomainError("degenerate quadrature grid");

    const double hx = 2.0 * g.x_max / (g.nx - 1);
    const double hy = 2.0 * g.y_max / (g.ny - 1);
    auto tabulate = [](int points, double half, double h, int levels, double freq) {
        std::vector<double> table(static_cast<std::size_t>(points) * (levels + 1));
        for(int a = 0; a < points; ++a) {
            const auto phi = oscillator_functions(levels, freq, -half + a * h);
            std::copy(phi.begin(), phi.end(), table.begin() + static_cast<std::ptrdiff_t>(a) * (levels + 1));
        }
        return table;
    };
    const auto phi_x = tabulate(g.nx, g.x_max, hx, basis.n_max(), params.omega);
    const auto phi_y = tabulate(g.ny, g.y_max, hy, basis.n_atoms(), params.omega0);

    const auto sums = kernels::omp::ipr_sums(
        coeff, {phi_x, static_cast<std::size_t>(g.nx), static_cast<std::size_t>(basis.n_max() + 1)},
        {phi_y, static_cast<std::size_t>(g.ny), static_cast<std::size_t>(basis.n_spin())}, hx, hy);
    if(sums.boundary_abs > 1e-6 * sums.max_abs) {
        std::ostringstream msg;
        msg << "quadrature grid too small: boundary amplitude " << sums.boundary_abs << " vs max " << sums.max_abs;
        throw DomainError(msg.str());
    }
    if(std::abs(sums.norm - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "quadrature norm " << sums.norm << " deviates from 1; grid under-resolved";
        throw DomainError(msg.str());
    }
    return sums.integral;
}

} // namespace dicke
