#include "dicke/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

ModelParams make_params(double omega, double omega0, double lambda, int n_atoms) {
    if(!(omega > 0.0) || !std::isfinite(omega))
        throw ParameterDomainError("omega must be positive, got " + std::to_string(omega));
    if(!(omega0 > 0.0) || !std::isfinite(omega0))
        throw ParameterDomainError("omega0 must be positive, got " + std::to_string(omega0));
    if(!(lambda >= 0.0) || !std::isfinite(lambda))
        throw ParameterDomainError("lambda must be non-negative, got " + std::to_string(lambda));
    if(n_atoms < 1) throw ParameterDomainError("n_atoms must be >= 1, got " + std::to_string(n_atoms));
    ModelParams p;
    p.omega = omega;
    p.omega0 = omega0;
    p.lambda = lambda;
    p.n_atoms = n_atoms;
    p.lambda_c = 0.5 * std::sqrt(omega * omega0);
    return p;
}

ModelParams with_lambda(const ModelParams &p, double lambda) {
    return make_params(p.omega, p.omega0, lambda, p.n_atoms);
}

BasisIndex::BasisIndex(int n_atoms, int n_max, BasisLimits limits) : n_atoms_(n_atoms), n_max_(n_max) {
    if(n_atoms < 1) throw ParameterDomainError("n_atoms must be >= 1");
    if(n_max < 0) throw ParameterDomainError("n_max must be >= 0");
    const auto dim = static_cast<long double>(n_max + 1) * (n_atoms + 1);
    if(dim > static_cast<long double>(limits.max_dimension) ||
       dim > static_cast<long double>(std::numeric_limits<std::uint32_t>::max()))
        throw CapacityError("basis dimension " + std::to_string(static_cast<double>(dim)) + " exceeds limit " +
                            std::to_string(limits.max_dimension));
}

std::vector<std::size_t> BasisIndex::sector(int parity) const {
    std::vector<std::size_t> out;
    out.reserve(dimension() / 2 + 1);
    for(std::size_t i = 0; i < dimension(); ++i)
        if(this->parity(i) == parity) out.push_back(i);
    return out;
}

BasisIndex build_basis(const ModelParams &params, int n_max, BasisLimits limits) {
    return BasisIndex(params.n_atoms, n_max, limits);
}

SparseHermitian SparseHermitian::from_triples(std::size_t dimension, std::vector<Triple> triples) {
    for(std::size_t i = 0; i < dimension; ++i) triples.push_back({i, i, 0.0});
    std::sort(triples.begin(), triples.end(), [](const Triple &a, const Triple &b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseHermitian m;
    m.dim_ = dimension;
    m.row_ptr_.assign(dimension + 1, 0);
    m.col_idx_.reserve(triples.size());
    m.values_.reserve(triples.size());
    std::size_t last_row = dimension, last_col = dimension;
    for(const auto &t : triples) {
        if(t.row >= dimension || t.col >= dimension) throw DomainError("triple outside matrix dimension");
        if(t.row == last_row && t.col == last_col) {
            m.values_.back() += t.value;
            continue;
        }
        m.col_idx_.push_back(static_cast<std::uint32_t>(t.col));
        m.values_.push_back(t.value);
        m.row_ptr_[t.row + 1]++;
        last_row = t.row;
        last_col = t.col;
    }
    for(std::size_t r = 0; r < dimension; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

double SparseHermitian::value(std::size_t row, std::size_t col) const {
    auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(col));
    if(it == last || *it != col) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<Triple> SparseHermitian::triples() const {
    std::vector<Triple> out;
    out.reserve(values_.size());
    for(std::size_t r = 0; r < dim_; ++r)
        for(std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out.push_back({r, col_idx_[p], values_[p]});
    return out;
}

SparseHermitian SparseHermitian::restrict_to(std::span<const std::size_t> indices) const {
    constexpr auto absent = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> position(dim_, absent);
    for(std::size_t i = 0; i < indices.size(); ++i) position[indices[i]] = i;
    std::vector<Triple> kept;
    for(std::size_t i = 0; i < indices.size(); ++i) {
        const auto r = indices[i];
        for(std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
            const auto c = position[col_idx_[p]];
            if(c != absent) kept.push_back({i, c, values_[p]});
        }
    }
    return from_triples(indices.size(), std::move(kept));
}

bool SparseHermitian::is_symmetric() const {
    for(std::size_t r = 0; r < dim_; ++r)
        for(std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            if(value(col_idx_[p], r) != values_[p]) return false;
    return true;
}

SparseHermitian assemble_hamiltonian(const ModelParams &params, const BasisIndex &basis) {
    if(basis.n_atoms() != params.n_atoms) throw DomainError("basis and parameters disagree on n_atoms");
    const int n_atoms = basis.n_atoms();
    const int n_max = basis.n_max();
    const double j = 0.5 * n_atoms;
    const double g = params.lambda / std::sqrt(2.0 * j);

    std::vector<Triple> triples;
    triples.reserve(basis.dimension() * 5);
    for(int n = 0; n <= n_max; ++n) {
        for(int k = 0; k <= n_atoms; ++k) {
            const auto i = basis.index(n, k);
            const double m = basis.m(k);
            triples.push_back({i, i, params.omega0 * m + params.omega * n});
            if(g == 0.0) continue;
            // (a^dag + a)(J+ + J-): both rows of every pair are emitted here, so
            // the two triangles hold bit-identical values.
            for(int dn : {+1, -1}) {
                const int n2 = n + dn;
                if(n2 < 0 || n2 > n_max) continue;
                const double boson = std::sqrt(static_cast<double>(std::max(n, n2)));
                for(int dk : {+1, -1}) {
                    const int k2 = k + dk;
                    if(k2 < 0 || k2 > n_atoms) continue;
                    const double m_hi = std::max(m, m + dk);
                    const double spin = std::sqrt(j * (j + 1.0) - m_hi * (m_hi - 1.0));
                    triples.push_back({i, basis.index(n2, k2), g * boson * spin});
                }
            }
        }
    }
    return SparseHermitian::from_triples(basis.dimension(), std::move(triples));
}

SparseHermitian parity_operator(const BasisIndex &basis) {
    std::vector<Triple> triples;
    triples.reserve(basis.dimension());
    for(std::size_t i = 0; i < basis.dimension(); ++i)
        triples.push_back({i, i, static_cast<double>(basis.parity(i))});
    return SparseHermitian::from_triples(basis.dimension(), std::move(triples));
}

void write_matrix_dump(std::ostream &os, const SparseHermitian &m) {
    char buf[96];
    for(const auto &t : m.triples()) {
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", t.row, t.col, t.value);
        os << buf;
    }
}

} // namespace dicke
