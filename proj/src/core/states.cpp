// Copyright 2026 The superatom-qpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "superatom/core/states.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace superatom {

namespace {

void require_dim(std::size_t got, const BlockadedBasis& basis) {
    if (got != basis.dim()) {
        throw std::invalid_argument("state dimension " + std::to_string(got) +
                                    " does not match basis dimension " + std::to_string(basis.dim()));
    }
}

// Per-ensemble logical factor: list of (configuration-fragment, amplitude) for |0> or |1>.
struct Fragment {
    std::vector<std::vector<Level>> parts;
    double amplitude = 1.0;
};

Fragment ensemble_fragment(int size, Level level) {
    Fragment f;
    if (level == Level::g0) {
        f.parts.emplace_back(size, Level::g0);
        return f;
    }
    f.amplitude = 1.0 / std::sqrt(static_cast<double>(size));
    for (int j = 0; j < size; ++j) {
        std::vector<Level> part(size, Level::g0);
        part[j] = level;
        f.parts.push_back(std::move(part));
    }
    return f;
}

// Sparse product state; `levels[k]` is the collective level of ensemble k.
std::vector<std::pair<std::size_t, double>> product_ket(const BlockadedBasis& basis,
                                                         const std::vector<Level>& levels) {
    std::vector<std::pair<std::size_t, double>> terms;
    std::vector<Level> config(basis.n_atoms(), Level::g0);

    std::vector<Fragment> frags;
    for (int k = 0; k < basis.n_ensembles(); ++k) {
        frags.push_back(ensemble_fragment(basis.ensemble_size(k), levels[k]));
    }
    std::vector<std::size_t> choice(frags.size(), 0);
    while (true) {
        double amp = 1.0;
        int atom = 0;
        for (std::size_t k = 0; k < frags.size(); ++k) {
            const auto& part = frags[k].parts[choice[k]];
            for (Level l : part) {
                config[atom++] = l;
            }
            amp *= frags[k].amplitude;
        }
        if (auto idx = basis.index_of(config)) {
            terms.emplace_back(*idx, amp);
        }
        std::size_t k = 0;
        while (k < frags.size() && ++choice[k] == frags[k].parts.size()) {
            choice[k] = 0;
            ++k;
        }
        if (k == frags.size()) {
            break;
        }
    }
    return terms;
}

}  // namespace

StateVector collective_state(const BlockadedBasis& basis, int ensemble, Level level) {
    basis.ensemble_size(ensemble);
    if (level == Level::e) {
        throw std::invalid_argument("no collective state is defined for the intermediate level e");
    }
    std::vector<Level> levels(basis.n_ensembles(), Level::g0);
    levels[ensemble] = level;
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(basis.dim()));
    for (auto [i, a] : product_ket(basis, levels)) {
        psi[static_cast<Eigen::Index>(i)] = a;
    }
    return psi;
}

LogicalFrame::LogicalFrame(const BlockadedBasis& basis, std::vector<double> one_phases)
    : n_qubits_(basis.n_ensembles()), physical_dim_(basis.dim()), one_phases_(std::move(one_phases)) {
    if (one_phases_.empty()) {
        one_phases_.assign(static_cast<std::size_t>(n_qubits_), 0.0);
    }
    if (one_phases_.size() != static_cast<std::size_t>(n_qubits_)) {
        throw std::invalid_argument("one frame phase per ensemble is required");
    }
    const std::size_t n = std::size_t{1} << n_qubits_;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Level> levels(n_qubits_);
        double phase = 0.0;
        for (int q = 0; q < n_qubits_; ++q) {
            const bool one = (k >> (n_qubits_ - 1 - q)) & 1U;
            levels[q] = one ? Level::g1 : Level::g0;
            if (one) {
                phase += one_phases_[static_cast<std::size_t>(q)];
            }
        }
        kets_.push_back(product_ket(basis, levels));
        phases_.push_back(std::polar(1.0, phase));
    }
}

StateVector LogicalFrame::ket(std::size_t k) const {
    StateVector v = StateVector::Zero(static_cast<Eigen::Index>(physical_dim_));
    for (auto [i, a] : kets_.at(k)) {
        v[static_cast<Eigen::Index>(i)] = a * phases_[k];
    }
    return v;
}

StateVector LogicalFrame::project(const StateVector& psi) const {
    if (static_cast<std::size_t>(psi.size()) != physical_dim_) {
        throw std::invalid_argument("state dimension does not match the logical frame");
    }
    StateVector out(static_cast<Eigen::Index>(kets_.size()));
    for (std::size_t k = 0; k < kets_.size(); ++k) {
        cplx acc = 0.0;
        for (auto [i, a] : kets_[k]) {
            acc += a * psi[static_cast<Eigen::Index>(i)];
        }
        out[static_cast<Eigen::Index>(k)] = std::conj(phases_[k]) * acc;
    }
    return out;
}

CMatrix LogicalFrame::project(const CMatrix& rho) const {
    if (static_cast<std::size_t>(rho.rows()) != physical_dim_ || rho.rows() != rho.cols()) {
        throw std::invalid_argument("density matrix dimension does not match the logical frame");
    }
    const auto n = static_cast<Eigen::Index>(kets_.size());
    CMatrix out(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            cplx acc = 0.0;
            for (auto [i, wa] : kets_[a]) {
                for (auto [j, wb] : kets_[b]) {
                    acc += wa * wb * rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                }
            }
            out(a, b) = std::conj(phases_[static_cast<std::size_t>(a)]) * acc *
                        phases_[static_cast<std::size_t>(b)];
        }
    }
    return out;
}

StateVector LogicalFrame::embed(const StateVector& logical) const {
    if (static_cast<std::size_t>(logical.size()) != kets_.size()) {
        throw std::invalid_argument("logical vector has the wrong dimension");
    }
    StateVector v = StateVector::Zero(static_cast<Eigen::Index>(physical_dim_));
    for (std::size_t k = 0; k < kets_.size(); ++k) {
        for (auto [i, a] : kets_[k]) {
            v[static_cast<Eigen::Index>(i)] += a * phases_[k] * logical[static_cast<Eigen::Index>(k)];
        }
    }
    return v;
}

CMatrix LogicalFrame::embed(const CMatrix& logical_rho) const {
    const auto n = static_cast<Eigen::Index>(kets_.size());
    if (logical_rho.rows() != n || logical_rho.cols() != n) {
        throw std::invalid_argument("logical density matrix has the wrong dimension");
    }
    const auto d = static_cast<Eigen::Index>(physical_dim_);
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            const cplx w = phases_[static_cast<std::size_t>(a)] * logical_rho(a, b) *
                           std::conj(phases_[static_cast<std::size_t>(b)]);
            for (auto [i, wa] : kets_[a]) {
                for (auto [j, wb] : kets_[b]) {
                    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += wa * wb * w;
                }
            }
        }
    }
    return out;
}

std::vector<double> logical_populations(const StateVector& psi, const BlockadedBasis& basis) {
    require_dim(static_cast<std::size_t>(psi.size()), basis);
    const StateVector amps = LogicalFrame(basis).project(psi);
    std::vector<double> p(static_cast<std::size_t>(amps.size()));
    for (Eigen::Index k = 0; k < amps.size(); ++k) {
        p[static_cast<std::size_t>(k)] = std::norm(amps[k]);
    }
    return p;
}

std::vector<double> logical_populations(const CMatrix& rho, const BlockadedBasis& basis) {
    require_dim(static_cast<std::size_t>(rho.rows()), basis);
    const CMatrix block = LogicalFrame(basis).project(rho);
    std::vector<double> p(static_cast<std::size_t>(block.rows()));
    for (Eigen::Index k = 0; k < block.rows(); ++k) {
        p[static_cast<std::size_t>(k)] = block(k, k).real();
    }
    return p;
}

double any_atom_population(const StateVector& psi, const BlockadedBasis& basis, int ensemble,
                           Level level) {
    require_dim(static_cast<std::size_t>(psi.size()), basis);
    const auto [first, last] = basis.atom_range(ensemble);
    double p = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        for (int a = first; a < last; ++a) {
            if (basis.level_of(i, a) == level) {
                p += std::norm(psi[static_cast<Eigen::Index>(i)]);
                break;
            }
        }
    }
    return p;
}

std::vector<double> counting_populations(const CMatrix& rho, const BlockadedBasis& basis) {
    require_dim(static_cast<std::size_t>(rho.rows()), basis);
    const int m = basis.n_ensembles();
    std::vector<double> p(std::size_t{1} << m, 0.0);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        std::size_t k = 0;
        bool logical = true;
        for (int q = 0; q < m && logical; ++q) {
            const auto [first, last] = basis.atom_range(q);
            int ones = 0;
            for (int a = first; a < last; ++a) {
                const Level l = basis.level_of(i, a);
                if (l == Level::g1) {
                    ++ones;
                } else if (l != Level::g0) {
                    logical = false;
                }
            }
            logical = logical && ones <= 1;
            k = 2 * k + static_cast<std::size_t>(ones);
        }
        if (logical) {
            p[k] += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        }
    }
    return p;
}

namespace {

bool has_rydberg(const BlockadedBasis& basis, std::size_t i) {
    for (Level l : basis.config(i)) {
        if (LevelScheme::is_rydberg(l)) {
            return true;
        }
    }
    return false;
}

}  // namespace

double rydberg_population(const StateVector& psi, const BlockadedBasis& basis) {
    require_dim(static_cast<std::size_t>(psi.size()), basis);
    double p = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        if (has_rydberg(basis, i)) {
            p += std::norm(psi[static_cast<Eigen::Index>(i)]);
        }
    }
    return p;
}

double rydberg_population(const CMatrix& rho, const BlockadedBasis& basis) {
    require_dim(static_cast<std::size_t>(rho.rows()), basis);
    double p = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        if (has_rydberg(basis, i)) {
            p += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        }
    }
    return p;
}

std::size_t ground_index(const BlockadedBasis& basis) {
    const std::vector<Level> all_ground(basis.n_atoms(), Level::g0);
    return *basis.index_of(all_ground);
}

Operator pauli(int index) {
    Operator m = Operator::Zero(2, 2);
    const cplx i1(0.0, 1.0);
    switch (index) {
        case 1:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case 2:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 3:
            m(0, 1) = -i1;
            m(1, 0) = i1;
            break;
        case 4:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument("pauli index must be in 1..4, got " + std::to_string(index));
    }
    return m;
}

Operator kron(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void write_basis_csv(std::ostream& out, const BlockadedBasis& basis) {
    out << "index";
    for (int a = 0; a < basis.n_atoms(); ++a) {
        out << ",atom" << a;
    }
    out << '\n';
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        out << i;
        for (Level l : basis.config(i)) {
            out << ',' << level_label(l);
        }
        out << '\n';
    }
}

void write_state_csv(std::ostream& out, const BlockadedBasis& basis, const StateVector& psi) {
    require_dim(static_cast<std::size_t>(psi.size()), basis);
    const auto old_precision = out.precision(17);
    for (int a = 0; a < basis.n_atoms(); ++a) {
        out << "atom" << a << ',';
    }
    out << "real,imag\n";
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        for (Level l : basis.config(i)) {
            out << level_label(l) << ',';
        }
        const cplx a = psi[static_cast<Eigen::Index>(i)];
        out << a.real() << ',' << a.imag() << '\n';
    }
    out.precision(old_precision);
}

}  // namespace superatom
