// Serial reference against OpenMP kernels on Dicke-sized inputs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dicke/kernels.hpp"
#include "dicke/model.hpp"

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for(auto &x : v) x = u(rng);
    return v;
}

dicke::SparseHermitian hamiltonian(int n_atoms, int n_max) {
    const auto p = dicke::make_params(1.0, 1.0, 0.6, n_atoms);
    return dicke::assemble_hamiltonian(p, dicke::build_basis(p, n_max));
}

template <auto Kernel> void BM_spmv(benchmark::State &state) {
    const auto h = hamiltonian(static_cast<int>(state.range(0)), 200);
    const auto x = random_vector(h.dimension(), 1);
    std::vector<double> y(h.dimension());
    for(auto _ : state) {
        Kernel(h, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(h.nonzeros()));
}

template <auto Kernel> void BM_gram(benchmark::State &state) {
    const std::size_t rows = 400, cols = static_cast<std::size_t>(state.range(0));
    const auto data = random_vector(rows * cols, 2);
    std::vector<double> out(cols * cols);
    for(auto _ : state) {
        Kernel(dicke::kernels::MatrixView{data, rows, cols}, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel> void BM_ipr(benchmark::State &state) {
    const std::size_t n_fock = 120, n_spin = 33, grid = static_cast<std::size_t>(state.range(0));
    const auto coeff = random_vector(n_fock * n_spin, 3);
    const auto phi_x = random_vector(grid * n_fock, 4);
    const auto phi_y = random_vector(grid * n_spin, 5);
    for(auto _ : state) {
        auto s = Kernel(dicke::kernels::MatrixView{coeff, n_fock, n_spin},
                        dicke::kernels::MatrixView{phi_x, grid, n_fock},
                        dicke::kernels::MatrixView{phi_y, grid, n_spin}, 0.01, 0.01);
        benchmark::DoNotOptimize(s);
    }
}

} // namespace

BENCHMARK(BM_spmv<dicke::kernels::serial::spmv>)->Arg(32)->Arg(64);
BENCHMARK(BM_spmv<dicke::kernels::omp::spmv>)->Arg(32)->Arg(64);
BENCHMARK(BM_gram<dicke::kernels::serial::gram_columns>)->Arg(65)->Arg(201);
BENCHMARK(BM_gram<dicke::kernels::omp::gram_columns>)->Arg(65)->Arg(201);
BENCHMARK(BM_ipr<dicke::kernels::serial::ipr_sums>)->Arg(200)->Arg(400);
BENCHMARK(BM_ipr<dicke::kernels::omp::ipr_sums>)->Arg(200)->Arg(400);

BENCHMARK_MAIN();
