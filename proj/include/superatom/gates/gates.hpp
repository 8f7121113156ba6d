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

#include <memory>
#include <string>
#include <vector>

#include "superatom/core/states.hpp"
#include "superatom/propagator/evolve.hpp"

namespace superatom {

/// Pulse placement inside a five-pulse block.
///   sequential: pulses follow each other with `gap` idle time.
///   compact: STIRAP halves centred at stirap.t1 / stirap.t2 around the
///            Rydberg-Rydberg pulse, pulses 1 and 5 bounding a window of
///            `blockade_span`; overlapping segments are summed.
enum class GateLayout { sequential, compact };

/// Pulse parameters and the transition assignment of the gate schemes.
struct GateConfig {
    StirapParams stirap = StirapParams::long_pulse();
    /// Rabi frequency of the blockade pulses (qubit state 1 <-> r1) and of
    /// single-atom pulses in general.
    double rabi_frequency = mhz(50.0);
    /// Rabi frequency of the Rydberg-Rydberg pulse.
    double microwave_frequency = mhz(25.0);
    Transition blockade{Level::g1, Level::r1};
    StirapPath stirap_path{};
    Transition rydberg{Level::r0, Level::r1};
    GateLayout layout = GateLayout::sequential;
    double gap = 0.0;
    double blockade_span = nanoseconds(600.0);

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;

    /// Long optimized pulses, sequential layout.
    static GateConfig long_pulse();
    /// T0 = 100 ns pulses, compact layout with a 600 ns blockade window.
    static GateConfig short_pulse();
};

/// A pulse program together with the logical unitary it is meant to implement.
/// Qubit q is ensemble q; qubit 0 is the most significant logical bit.
struct GateProgram {
    std::string name;
    int n_qubits = 1;
    PulseSchedule schedule;
    CMatrix ideal;

    double duration() const { return schedule.empty() ? 0.0 : schedule.end(); }
};

/// Runs `second` after `first`.
GateProgram then(const GateProgram& first, const GateProgram& second);

/// Pulse 1: pi on the blockade transition; pulse 2: STIRAP qubit 0 -> r0 with
/// +delta; pulse 3: R(theta, phi) between r0 and r1; pulse 4: STIRAP back
/// with -delta; pulse 5: 3 pi on the blockade transition.
GateProgram single_qubit_rotation(double theta, double phi, const GateConfig& config, int qubit = 0,
                                  int n_qubits = 1);
/// R_Y(-pi/2) through pulse 3 followed by NOT-Z through a pi (not 3 pi) pulse 5.
GateProgram hadamard(const GateConfig& config, int qubit = 0, int n_qubits = 1);
GateProgram not_x(const GateConfig& config, int qubit = 0, int n_qubits = 1);
GateProgram not_y(const GateConfig& config, int qubit = 0, int n_qubits = 1);
/// One 2 pi pulse on the blockade transition.
GateProgram not_z(const GateConfig& config, int qubit = 0, int n_qubits = 1);
/// No pulses.
GateProgram identity_gate(int qubit = 0, int n_qubits = 1);

/// Qubit 0 controls qubit 1. Pulse 1 blockades through the control, pulses
/// 2-6 invert the target, pulse 7 returns the control with phase pi/2 so
/// that both control branches pick up the same global phase.
GateProgram cnot_type(const GateConfig& config);
/// Logical 4x4 CNOT-type matrix (target flips when the control is 0).
CMatrix cnot_type_matrix();

enum class BasisPrep { H, V, D, R };
enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

/// H: nothing; V: R_Y(pi); D: R_Y(pi/2); R: R_X(-pi/2).
GateProgram prepare_basis_state(BasisPrep which, const GateConfig& config, int qubit = 0, int n_qubits = 1);
/// Input preparation with R_Y(pi) rotations, Hadamard on the control, then CNOT-type.
/// psi+ <- |00>, phi+ <- |01>, psi- <- |10>, phi- <- |11>.
GateProgram bell_program(BellState which, const GateConfig& config);

std::string bell_name(BellState which);
BellState parse_bell(const std::string& name);
std::string prep_name(BasisPrep which);

/// Single-qubit ideal unitary embedded at `qubit` of an n-qubit register.
CMatrix embed_unitary(const CMatrix& u, int qubit, int n_qubits);

/// Executes programs on a blockaded basis in the calibrated logical frame.
///
/// The frame phase of each ensemble is fixed once: the logical excited state is
/// redefined to absorb the phase the rotation scheme leaves on it, so that the
/// R(pi/2, 0) program maps |0> to (|0> + i|1>)/sqrt(2). Calibration runs
/// without decay.
class GateExecutor {
  public:
    GateExecutor(BlockadedBasis basis, GateConfig config, double tol = 1e-10, LindbladModel lindblad = {});

    const BlockadedBasis& basis() const { return basis_; }
    const GateConfig& config() const { return config_; }
    const LogicalFrame& frame() const { return *frame_; }
    const LindbladModel& lindblad() const { return lindblad_; }
    double tol() const { return tol_; }

    /// Physical evolution of a (possibly sub-normalized) pure state.
    StateVector run(const GateProgram& program, const StateVector& physical) const;
    /// Master-equation evolution of a physical density matrix; needed when decay has jump terms.
    CMatrix run(const GateProgram& program, const CMatrix& physical) const;
    /// Logical amplitudes after running `program` on the logical input `logical_in`.
    StateVector run_logical(const GateProgram& program, const StateVector& logical_in) const;
    /// Logical block (sub-normalized by leakage and decay) after the program acts on a logical pure input.
    CMatrix run_logical_density(const GateProgram& program, const StateVector& logical_in) const;

    /// Frame phase for a single ensemble of `size` atoms under `config`.
    static double calibrate_frame_phase(const GateConfig& config, int size, double tol);

  private:
    BlockadedBasis basis_;
    GateConfig config_;
    double tol_;
    LindbladModel lindblad_;
    std::unique_ptr<LogicalFrame> frame_;
};

}  // namespace superatom
