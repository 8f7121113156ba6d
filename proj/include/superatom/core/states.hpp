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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "superatom/core/basis.hpp"
#include "superatom/core/types.hpp"

namespace superatom {

/// Normalized symmetric collective state of one ensemble.
///
/// For level g0 this is the all-ground product state. For g1, r0 and r1 it is
/// the equal-weight superposition of exactly one atom of `ensemble` in `level`
/// with amplitude 1/sqrt(N_ensemble). Atoms of every other ensemble stay in g0.
/// Level e is rejected: no collective intermediate states are used.
StateVector collective_state(const BlockadedBasis& basis, int ensemble, Level level);

/// The 2^M logical product states |a_0 a_1 ... a_{M-1}> of an M-ensemble
/// register, ensemble 0 being the most significant bit.
///
/// `one_phases[q]` attaches a phase to the excited logical state of ensemble q,
/// |1_q> = e^{i gamma_q} |1bar_q>. Double-STIRAP gates leave an N-dependent
/// phase on that state, and the qubit is defined in the frame that carries it.
/// Populations do not depend on the frame.
class LogicalFrame {
  public:
    explicit LogicalFrame(const BlockadedBasis& basis, std::vector<double> one_phases = {});

    int n_qubits() const { return n_qubits_; }
    std::size_t logical_dim() const { return kets_.size(); }
    std::size_t physical_dim() const { return physical_dim_; }
    const std::vector<double>& one_phases() const { return one_phases_; }

    /// Physical state vector of logical basis state `k`.
    StateVector ket(std::size_t k) const;

    /// Logical amplitudes <k|psi>.
    StateVector project(const StateVector& psi) const;
    /// Logical block V^dag rho V (sub-normalized when population leaked).
    CMatrix project(const CMatrix& rho) const;

    StateVector embed(const StateVector& logical) const;
    CMatrix embed(const CMatrix& logical_rho) const;

  private:
    using SparseKet = std::vector<std::pair<std::size_t, double>>;

    int n_qubits_ = 0;
    std::size_t physical_dim_ = 0;
    std::vector<SparseKet> kets_;
    std::vector<cplx> phases_;
    std::vector<double> one_phases_;
};

/// Joint logical populations P_k = |<k|psi>|^2 (P0,P1 for one ensemble,
/// P00,P01,P10,P11 for two). The sum is <= 1; the remainder is leakage.
std::vector<double> logical_populations(const StateVector& psi, const BlockadedBasis& basis);
std::vector<double> logical_populations(const CMatrix& rho, const BlockadedBasis& basis);

/// Diagnostic alternative to P1: probability that any atom of the ensemble is in `level`.
double any_atom_population(const StateVector& psi, const BlockadedBasis& basis, int ensemble,
                           Level level);

/// Joint populations counting atoms instead of projecting onto collective
/// states: bit 0 of an ensemble means all atoms in g0, bit 1 means exactly one
/// atom in g1 (any atom) and the rest in g0. Equals logical_populations on
/// permutation-symmetric states.
std::vector<double> counting_populations(const CMatrix& rho, const BlockadedBasis& basis);

/// Total population of configurations carrying one Rydberg excitation.
double rydberg_population(const StateVector& psi, const BlockadedBasis& basis);
double rydberg_population(const CMatrix& rho, const BlockadedBasis& basis);

/// Index of the all-g0 configuration (always 0 in lexicographic order).
std::size_t ground_index(const BlockadedBasis& basis);

/// Pauli matrices by 1-based index: 1 = I, 2 = sigma_x, 3 = sigma_y, 4 = sigma_z.
Operator pauli(int index);
Operator kron(const Operator& a, const Operator& b);

/// CSV dumps: one row per configuration in basis order.
void write_basis_csv(std::ostream& out, const BlockadedBasis& basis);
void write_state_csv(std::ostream& out, const BlockadedBasis& basis, const StateVector& psi);

}  // namespace superatom
