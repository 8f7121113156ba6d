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

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "superatom/core/types.hpp"
#include "superatom/gates/gates.hpp"

namespace superatom {

/// Raised when tomography input is malformed: populations outside [0, 1],
/// wrong matrix sizes, or non-finite entries.
class InvalidRecord : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Analysis rotation applied to one qubit before reading out P0 / P1.
enum class Analysis {
    I,
    /// R_y(-pi/2): maps <sigma_x> onto <sigma_z>.
    Ry,
    /// R_x(pi/2): maps <sigma_y> onto <sigma_z>.
    Rx,
};

std::string analysis_name(Analysis a);
CMatrix analysis_unitary(Analysis a);
/// Analysis used to read sigma_i, 1-based (1 = I, 2 = x, 3 = y, 4 = z).
Analysis analysis_for_pauli(int index);

/// Populations P_k over the 2^n logical states.
using Populations = std::vector<double>;
using Measure1q = std::function<Populations(Analysis)>;
using Measure2q = std::function<Populations(Analysis, Analysis)>;

/// rho = 1/2 sum lambda_i sigma_i with lambda_1 = P0 + P1 and
/// lambda_{2,3,4} = P0 - P1 after R_y(-pi/2), R_x(pi/2), I.
DensityMatrix state_tomo_1q(const Measure1q& measure);
/// rho = 1/4 sum lambda_ij sigma_i (x) sigma_j over the nine distinct settings.
DensityMatrix state_tomo_2q(const Measure2q& measure);

/// Noiseless readout of a logical density matrix after ideal analysis rotations
/// (one per qubit, qubit 0 first).
Populations ideal_readout(const CMatrix& rho, const std::vector<Analysis>& settings);

/// Throws InvalidRecord unless every entry is in [0, 1] and the sum is at most 1 (1e-9 slack).
void check_populations(const Populations& p, std::size_t expected_size);

/// Logical input density of a preparation.
CMatrix basis_state_density(BasisPrep which);
inline constexpr std::array<BasisPrep, 4> kBasisPreps{BasisPrep::H, BasisPrep::V, BasisPrep::D, BasisPrep::R};

/// Maps (rho'_H, rho'_V, rho'_D, rho'_R) onto the outputs of the matrix units
/// |0><0|, |0><1|, |1><0|, |1><1|. Entry (k, A).
const CMatrix& preparation_transform_1q();
/// Tensor-product extension: row 4 i + j for the unit |i><j| of two qubits
/// (i, j in 0..3), column 4 A + B for the preparation pair (A, B).
const CMatrix& preparation_transform_2q();

/// Operator basis element E_k: sigma_k for one qubit, sigma_i (x) sigma_j with
/// k = 4 i + j for two (0-based, order I, x, y, z).
CMatrix pauli_basis_operator(int k, int n_qubits);

/// Process matrix in the sigma basis from the four measured outputs (order H, V, D, R).
CMatrix chi_from_outputs_1q(const std::array<CMatrix, 4>& outputs);
/// Same for two qubits; outputs indexed 4 A + B.
CMatrix chi_from_outputs_2q(const std::array<CMatrix, 16>& outputs);

using ProcessOutputs1q = std::function<CMatrix(BasisPrep)>;
using ProcessOutputs2q = std::function<CMatrix(BasisPrep, BasisPrep)>;
CMatrix process_tomo_1q(const ProcessOutputs1q& outputs);
CMatrix process_tomo_2q(const ProcessOutputs2q& outputs);

/// chi of a logical unitary through the same pipeline. Throws
/// std::invalid_argument when U is not unitary (1e-10) or not 2x2 / 4x4.
CMatrix ideal_chi(const CMatrix& u);

/// sum_ij chi_ij E_i rho E_j^dag.
CMatrix apply_chi(const CMatrix& chi, const CMatrix& rho);

/// F = 1 - (1/2) sum of singular values of (a - b).
double fidelity(const CMatrix& a, const CMatrix& b);

DensityMatrix bell_state_density(BellState which);

}  // namespace superatom
