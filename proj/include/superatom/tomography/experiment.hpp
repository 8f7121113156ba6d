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

#include <cstdint>
#include <string>
#include <vector>

#include "superatom/gates/gates.hpp"
#include "superatom/tomography/tomography.hpp"

namespace superatom {

/// How logical populations are read from the physical register.
enum class Readout {
    /// Overlaps with the collective states |0>, |1> (calibrated frame).
    collective,
    /// Atom counting: "exactly one atom in g1". Needs physical analysis.
    counting,
};

struct TomographyOptions {
    /// Run analysis rotations as simulated pulse programs instead of ideal logical rotations.
    bool physical_analysis = false;
    /// Embed the ideal logical input instead of simulating the preparation programs.
    bool ideal_preparation = false;
    Readout readout = Readout::collective;
    /// 0 reads out exact expectation values; otherwise multinomial sampling with this many shots.
    int shots = 0;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct TomographyRow {
    std::string preparation;
    std::string analysis;
    Populations populations;
};

/// Measured population tables, one row per (preparation, analysis) pair.
struct TomographyRecord {
    int n_qubits = 1;
    std::vector<TomographyRow> rows;
};

/// Tomography on simulated superatom registers. Preparations are physically
/// simulated; the register starts in the logical all-zero state.
class SimulatedTomography {
  public:
    SimulatedTomography(const GateExecutor& executor, TomographyOptions options = {});

    /// Reconstructed density matrix of `program` applied to the all-zero input.
    CMatrix state(const GateProgram& program, TomographyRecord* record = nullptr) const;
    /// Reconstructed chi of `gate` from 4 (1q) or 16 (2q) physically prepared inputs.
    CMatrix process(const GateProgram& gate, TomographyRecord* record = nullptr) const;

    /// Physical register, pure unless the decay model has jump terms.
    struct Register {
        StateVector psi;
        CMatrix rho;
        bool mixed = false;
    };

    /// Physical register after preparing `preps` (one per qubit) and running `gate`.
    Register prepared_output(const std::vector<BasisPrep>& preps, const GateProgram& gate) const;

  private:
    Register initial(const StateVector& logical) const;
    Register evolve(const GateProgram& program, const Register& in) const;
    CMatrix reconstruct(const Register& physical, const std::string& label, std::uint64_t stream,
                        std::vector<TomographyRow>* rows) const;
    Populations readout(const Register& physical, const std::vector<Analysis>& settings, std::uint64_t stream) const;

    const GateExecutor& executor_;
    TomographyOptions options_;
    int n_qubits_;
};

/// Program performing an analysis rotation on one qubit.
GateProgram analysis_program(Analysis a, const GateConfig& config, int qubit, int n_qubits);

/// Multinomial sample of the populations plus the missing (leaked) probability.
Populations sample_populations(const Populations& exact, int shots, std::uint64_t seed, std::uint64_t stream);

}  // namespace superatom
