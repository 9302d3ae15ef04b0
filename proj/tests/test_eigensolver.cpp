#include <doctest.h>

#include <cmath>

#include "dicke/eigensolver.hpp"
#include "dicke/errors.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

ModelParams resonant(double lambda_rel, int n_atoms) {
    auto p = make_params(1.0, 1.0, 0.0, n_atoms);
    return with_lambda(p, lambda_rel * p.lambda_c);
}

} // namespace

TEST_CASE("zero coupling: ground energy is -N omega0 / 2 exactly") {
    for(int n : {1, 2, 8}) {
        const auto p = make_params(1.0, 1.0, 0.0, n);
        const auto basis = build_basis(p, 10);
        const auto gs = ground_state(assemble_hamiltonian(p, basis), basis);
        CHECK(gs.energy == -0.5 * n);
        CHECK(gs.amplitude(0, 0) == 1.0);
        CHECK(gs.parity == +1);
    }
}

TEST_CASE("ground energy matches a dense diagonalisation of the Kronecker Hamiltonian") {
    for(auto [lrel, n, n_max] : {std::tuple{0.5, 2, 20}, std::tuple{1.0, 4, 30}, std::tuple{2.0, 3, 40}}) {
        const auto p = resonant(lrel, n);
        const auto basis = build_basis(p, n_max);
        const auto gs = ground_state(assemble_hamiltonian(p, basis), basis);
        const auto ref = oracle::even_ground_state(oracle::dicke_hamiltonian(1.0, 1.0, p.lambda, n, n_max), n);
        CHECK(gs.energy == doctest::Approx(ref.energy).epsilon(1e-12));
        const double overlap = std::abs(Eigen::Map<const Eigen::VectorXd>(gs.amplitudes.data(), ref.psi.size()).dot(ref.psi));
        CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("Lanczos and dense paths agree") {
    const auto p = resonant(1.3, 10);
    const auto basis = build_basis(p, 60); // even block 336
    const auto h = assemble_hamiltonian(p, basis);
    SolverOptions dense;
    SolverOptions lanczos;
    lanczos.dense_threshold = 0;
    lanczos.krylov_dim = 40;
    const auto a = ground_state(h, basis, dense);
    const auto b = ground_state(h, basis, lanczos);
    CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-12));
    double diff = 0.0;
    for(std::size_t i = 0; i < a.amplitudes.size(); ++i) diff = std::max(diff, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    CHECK(diff < 1e-8);
    CHECK(b.converged);
    CHECK(b.residual <= 1e-10 * std::abs(b.energy));
}

TEST_CASE("sign convention: the largest amplitude is positive") {
    const auto p = resonant(0.8, 6);
    const auto basis = build_basis(p, 30);
    const auto gs = ground_state(assemble_hamiltonian(p, basis), basis);
    double best = 0.0;
    for(double a : gs.amplitudes)
        if(std::abs(a) > std::abs(best)) best = a;
    CHECK(best > 0.0);
}

TEST_CASE("without projection the doublet gap closes above lambda_c and the state is even") {
    SolverOptions opts;
    opts.parity_projection = false;
    double prev_gap = 1e9;
    for(double lrel : {0.5, 1.5, 2.5}) {
        const auto p = resonant(lrel, 8);
        const auto basis = build_basis(p, 60);
        const auto gs = ground_state(assemble_hamiltonian(p, basis), basis, opts);
        REQUIRE(gs.doublet_gap.has_value());
        CHECK(*gs.doublet_gap < prev_gap);
        prev_gap = *gs.doublet_gap;
        CHECK(gs.parity == +1);
    }
    CHECK(prev_gap < 1e-3);
}

TEST_CASE("converge_cutoff") {
    SUBCASE("zero coupling certifies the starting cutoff") {
        const auto gs = converge_cutoff(make_params(1.0, 1.0, 0.0, 4));
        CHECK(gs.n_max_used == CutoffPolicy{}.n_max_start);
        CHECK(gs.energy == -2.0);
    }
    SUBCASE("strong coupling grows the cutoff and keeps the top shell empty") {
        const auto gs = converge_cutoff(resonant(3.0, 8));
        CHECK(gs.n_max_used > 16);
        CHECK(gs.top_fock_weight() < 1e-8);
        REQUIRE(gs.energy_sequence.size() >= 2);
        const auto &e = gs.energy_sequence;
        CHECK(std::abs(e[e.size() - 1] - e[e.size() - 2]) < 1e-9);
        CHECK(gs.energy == e[e.size() - 2]);
    }
    SUBCASE("running out of cutoff is reported with the energy history") {
        CutoffPolicy policy;
        policy.n_max_start = 4;
        policy.n_max_limit = 8;
        try {
            converge_cutoff(resonant(3.0, 8), policy);
            FAIL("expected ConvergenceError");
        } catch(const ConvergenceError &e) {
            CHECK(e.energies().size() >= 2);
        }
    }
    SUBCASE("capacity errors propagate") {
        CutoffPolicy policy;
        policy.limits.max_dimension = 50;
        CHECK_THROWS_AS(converge_cutoff(resonant(1.0, 8), policy), CapacityError);
    }
}

TEST_CASE("solver budget exhaustion raises SolverError with the best residual") {
    const auto p = resonant(1.2, 12);
    const auto basis = build_basis(p, 80);
    SolverOptions opts;
    opts.dense_threshold = 0;
    opts.krylov_dim = 3;
    opts.max_restarts = 2;
    try {
        ground_state(assemble_hamiltonian(p, basis), basis, opts);
        FAIL("expected SolverError");
    } catch(const SolverError &e) {
        CHECK(e.best_residual() > 0.0);
    }
}

TEST_CASE("every ground state across a coupling sweep has positive parity") {
    for(double lrel = 0.0; lrel <= 3.0; lrel += 0.25) {
        const auto gs = converge_cutoff(resonant(lrel, 6));
        const auto basis = build_basis(resonant(lrel, 6), gs.n_max_used);
        double odd = 0.0;
        for(std::size_t i = 0; i < basis.dimension(); ++i)
            if(basis.parity(i) < 0) odd += gs.amplitudes[i] * gs.amplitudes[i];
        CHECK(odd == 0.0);
        CHECK(gs.parity == +1);
    }
}
