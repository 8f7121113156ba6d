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
#include <vector>

#include "superatom/core/basis.hpp"
#include "superatom/core/types.hpp"
#include "superatom/pulses/schedule.hpp"

namespace superatom {

/// Where decayed population goes.
enum class DecayTarget {
    /// Leaves the basis; tracked as a scalar sink population.
    sink,
    /// Per-atom jumps e -> g0, r0 -> g0, r1 -> g1.
    ground,
};

/// Decay rates (rad/s).
struct LindbladModel {
    double gamma_e = 0.0;
    double gamma_r = 0.0;
    DecayTarget target = DecayTarget::sink;

    /// Throws std::invalid_argument on negative or non-finite rates.
    void validate() const;
    bool active() const { return gamma_e > 0.0 || gamma_r > 0.0; }
    /// True when the model has jump terms, which pure-state evolution cannot represent.
    bool has_jumps() const { return active() && target == DecayTarget::ground; }
    /// gamma/2pi = 5 MHz, gamma_R/2pi = 0.8 kHz.
    static LindbladModel reference_rates();
};

/// Rotating-wave Hamiltonian of a schedule restricted to a blockaded basis.
///
/// Every coupling contributes (Omega(t)/2) e^{i phi} |upper><lower| + h.c.
/// summed over the atoms of its ensemble. The matrix is never formed during
/// evolution: transitions are kept as lists of unit-weight index pairs.
class HamiltonianModel {
  public:
    /// Throws std::invalid_argument when the schedule addresses an ensemble
    /// that the basis does not have.
    HamiltonianModel(BlockadedBasis basis, PulseSchedule schedule);

    const BlockadedBasis& basis() const { return basis_; }
    const PulseSchedule& schedule() const { return schedule_; }
    std::size_t dim() const { return basis_.dim(); }

    /// Indices of segments active on [t0, t1]; the interval must not straddle a breakpoint.
    std::vector<int> active_segments(double t0, double t1) const;
    /// Segments active at the instant t (boundaries included).
    std::vector<int> active_segments_at(double t) const;

    /// Dense H(t) for inspection and tests.
    Operator build_hamiltonian(double t) const;

    /// out = H(t) * in for the given active segments. `in` and `out` hold
    /// `cols` contiguous column vectors of length dim().
    void apply(double t, const std::vector<int>& active, const cplx* in, cplx* out, std::size_t cols = 1) const;

    /// Basis states connected to `seed` by any coupling of any segment or by
    /// any jump, in increasing order. Evolution never leaves this set.
    std::vector<std::int32_t> reachable(const std::vector<std::int32_t>& seed, const LindbladModel& lindblad) const;

    /// Per-configuration loss rate: gamma_e per atom in e plus gamma_r per Rydberg atom.
    Eigen::VectorXd loss_rates(const LindbladModel& lindblad) const;

    /// One jump operator sqrt(rate) L for a single atom and source level, stored
    /// as the (from, to) basis index pairs where L acts.
    struct JumpChannel {
        double rate = 0.0;
        std::vector<std::pair<std::int32_t, std::int32_t>> moves;
    };
    /// Empty unless lindblad.target is ground.
    std::vector<JumpChannel> jump_channels(const LindbladModel& lindblad) const;

  private:
    struct Pair {
        std::int32_t upper;
        std::int32_t lower;
    };
    struct CompiledCoupling {
        std::vector<Pair> pairs;
    };
    struct CompiledShift {
        std::vector<std::int32_t> index;
        std::vector<double> count;
    };
    struct CompiledSegment {
        std::vector<CompiledCoupling> couplings;
        std::vector<CompiledShift> shifts;
    };

    BlockadedBasis basis_;
    PulseSchedule schedule_;
    std::vector<CompiledSegment> compiled_;
};

}  // namespace superatom
