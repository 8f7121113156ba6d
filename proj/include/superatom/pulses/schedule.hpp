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

#include <string>
#include <vector>

#include "superatom/core/levels.hpp"
#include "superatom/pulses/envelopes.hpp"

namespace superatom {

/// Drives |upper><lower| with (Omega(t)/2) e^{i phase} (plus h.c.) on every atom of one ensemble.
struct Coupling {
    int ensemble = 0;
    Transition transition{Level::g0, Level::e};
    Envelope envelope = ConstantEnvelope{};
    double phase = 0.0;
};

/// Rotating-frame energy of `level` (rad/s), counted once per atom of the ensemble in that level.
struct LevelShift {
    int ensemble = 0;
    Level level = Level::e;
    double energy = 0.0;
};

struct Segment {
    std::string label;
    double start = 0.0;
    double end = 0.0;
    std::vector<Coupling> couplings;
    std::vector<LevelShift> shifts;
    /// Allowed to overlap other simultaneous segments; active terms add.
    bool simultaneous = false;

    double duration() const { return end - start; }
    bool covers(double t0, double t1) const { return start <= t0 && t1 <= end; }
};

class PulseSchedule {
  public:
    PulseSchedule() = default;

    /// Throws std::invalid_argument on an empty or inverted window, non-finite
    /// numbers, a transition between equal levels, or an overlap with an
    /// existing segment unless both are marked simultaneous.
    void add(Segment segment);
    /// Adds every segment of `other` shifted by `offset`.
    void append(const PulseSchedule& other, double offset = 0.0);

    const std::vector<Segment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    double begin() const;
    double end() const;
    double duration() const { return empty() ? 0.0 : end() - begin(); }

    /// Sorted distinct segment start and end times.
    std::vector<double> breakpoints() const;
    /// Highest ensemble index referenced, or -1 for an empty schedule.
    int max_ensemble() const;
    PulseSchedule shifted(double dt) const;

  private:
    std::vector<Segment> segments_;
};

/// Transitions used by a STIRAP from a qubit level through e to a Rydberg level.
struct StirapPath {
    Transition pump{Level::g0, Level::e};
    Transition stokes{Level::e, Level::r0};
};

/// One half of the optimized sequence on the window [center - 2 T0, center + 2 T0],
/// with level e detuned by `detuning`.
Segment optimized_stirap_segment(const StirapParams& p, StirapHalf half, double center, double detuning,
                                 int ensemble = 0, const StirapPath& path = {});

/// Excitation half at t1 with detuning delta, de-excitation half at t2 with
/// -delta when `switch_detuning_sign` is set (+delta otherwise). Zero omega0
/// yields idle windows with no couplings. Throws std::invalid_argument when
/// t2 - t1 < 4 T0.
PulseSchedule double_stirap_schedule(const StirapParams& p, bool switch_detuning_sign, int ensemble = 0,
                                     const StirapPath& path = {});

/// Both Gaussian legs on a window spanning 8 tau beyond the outer centers.
PulseSchedule gaussian_stirap_schedule(const GaussianStirapParams& p, int ensemble = 0,
                                       const StirapPath& path = {});

/// Resonant constant pulse whose ideal action on (lower, upper) is R(theta, phi):
/// area |theta|, phase phi (+pi when theta > 0). Starts at `start` and lasts
/// |theta| / rabi_frequency; theta = 0 gives an empty schedule.
PulseSchedule rabi_pulse(double theta, double phi, Transition transition, double rabi_frequency,
                         double start = 0.0, int ensemble = 0);

/// Same pulse as a bare segment (no schedule wrapper), for composing programs.
Segment rabi_segment(double theta, double phi, Transition transition, double rabi_frequency, double start,
                     int ensemble = 0, std::string label = "rabi");

}  // namespace superatom
