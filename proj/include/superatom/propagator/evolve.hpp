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

#include <iosfwd>
#include <optional>
#include <vector>

#include "superatom/propagator/hamiltonian.hpp"
#include "superatom/propagator/integrator.hpp"

namespace superatom {

struct TimeSpan {
    double start = 0.0;
    double end = 0.0;
};

struct EvolveOptions {
    /// Relative and absolute integrator tolerance.
    double tol = 1e-10;
    /// Evenly spaced sample times including both ends; 0 records only the endpoints.
    int samples = 400;
    bool keep_states = false;
    /// Record the all-g0 amplitude after every accepted step (for phase unwrapping).
    bool track_ground = true;
    double max_step = 0.0;
};

/// How evolve_master propagates. The sink model has no jump terms, so a
/// density matrix can be evolved either directly or as its eigen-decomposition
/// with each eigenvector following the non-Hermitian H - i Gamma / 2. Both are exact.
enum class MasterMethod { automatic, density, eigen };

struct Trajectory {
    std::vector<double> times;
    /// Logical populations per sample (2^M entries each).
    std::vector<std::vector<double>> populations;
    std::vector<double> rydberg;
    std::vector<double> leakage;
    /// Norm squared (pure) or trace (density) within the basis.
    std::vector<double> norm;
    /// Population accumulated in the decay sink.
    std::vector<double> sink;
    /// All-g0 amplitude at each sample (pure evolutions only).
    std::vector<cplx> ground;
    /// All-g0 amplitude after every accepted step.
    std::vector<double> fine_times;
    std::vector<cplx> fine_ground;

    std::vector<StateVector> states;
    std::optional<StateVector> final_state;
    std::optional<DensityMatrix> final_density;
    IntegratorStats stats;
};

/// i d psi/dt = H(t) psi. With a Lindblad model the evolution uses
/// H - i Gamma/2 and the lost norm is reported as sink population.
/// Throws std::invalid_argument on a dimension mismatch or tol > 1e-8.
Trajectory evolve_schrodinger(const StateVector& initial, const HamiltonianModel& model, TimeSpan span,
                              const EvolveOptions& options = {}, const LindbladModel& lindblad = {});

/// d rho/dt = -i[H, rho] - {Gamma/2, rho}; Tr(Gamma rho) feeds the sink.
Trajectory evolve_master(const DensityMatrix& initial, const HamiltonianModel& model, const LindbladModel& lindblad,
                         TimeSpan span, const EvolveOptions& options = {},
                         MasterMethod method = MasterMethod::automatic);

/// Final state only, no sampling.
StateVector propagate(const StateVector& initial, const HamiltonianModel& model, TimeSpan span, double tol = 1e-10,
                      const LindbladModel& lindblad = {});
/// Final density matrix of evolve_master.
DensityMatrix propagate_density(const DensityMatrix& initial, const HamiltonianModel& model, TimeSpan span, double tol,
                                const LindbladModel& lindblad);

/// Unwrapped arg of the all-g0 amplitude relative to its initial value, at the
/// sample times. NaN where the amplitude is below 1e-6.
std::vector<double> ground_phase(const Trajectory& trajectory);

/// Columns t, P0.. (or P00..), alpha, rydberg, leakage, sink.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace superatom
