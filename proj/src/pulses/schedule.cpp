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

#include "superatom/pulses/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace superatom {

namespace {

bool overlaps(const Segment& a, const Segment& b) { return a.start < b.end && b.start < a.end; }

}  // namespace

void PulseSchedule::add(Segment segment) {
    if (!std::isfinite(segment.start) || !std::isfinite(segment.end) || !(segment.end > segment.start)) {
        throw std::invalid_argument("segment '" + segment.label + "' needs a finite window with end > start");
    }
    for (const Coupling& c : segment.couplings) {
        if (c.transition.lower == c.transition.upper) {
            throw std::invalid_argument("coupling in '" + segment.label + "' joins a level to itself");
        }
        if (c.ensemble < 0 || !std::isfinite(c.phase)) {
            throw std::invalid_argument("coupling in '" + segment.label + "' has a bad ensemble or phase");
        }
        if (!std::isfinite(evaluate(c.envelope, 0.5 * (segment.start + segment.end)))) {
            throw std::invalid_argument("coupling in '" + segment.label + "' has a non-finite envelope");
        }
    }
    for (const LevelShift& s : segment.shifts) {
        if (s.ensemble < 0 || !std::isfinite(s.energy)) {
            throw std::invalid_argument("level shift in '" + segment.label + "' is invalid");
        }
    }
    for (const Segment& other : segments_) {
        if (overlaps(segment, other) && !(segment.simultaneous && other.simultaneous)) {
            throw std::invalid_argument("segment '" + segment.label + "' overlaps '" + other.label +
                                        "' without being marked simultaneous");
        }
    }
    segments_.push_back(std::move(segment));
}

void PulseSchedule::append(const PulseSchedule& other, double offset) {
    for (Segment s : other.segments_) {
        s.start += offset;
        s.end += offset;
        for (Coupling& c : s.couplings) {
            if (auto* o = std::get_if<OptimizedStirapEnvelope>(&c.envelope)) {
                o->center += offset;
            } else if (auto* g = std::get_if<GaussianEnvelope>(&c.envelope)) {
                g->center += offset;
            }
        }
        add(std::move(s));
    }
}

double PulseSchedule::begin() const {
    double t = std::numeric_limits<double>::infinity();
    for (const Segment& s : segments_) {
        t = std::min(t, s.start);
    }
    return t;
}

double PulseSchedule::end() const {
    double t = -std::numeric_limits<double>::infinity();
    for (const Segment& s : segments_) {
        t = std::max(t, s.end);
    }
    return t;
}

std::vector<double> PulseSchedule::breakpoints() const {
    std::vector<double> b;
    for (const Segment& s : segments_) {
        b.push_back(s.start);
        b.push_back(s.end);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

int PulseSchedule::max_ensemble() const {
    int m = -1;
    for (const Segment& s : segments_) {
        for (const Coupling& c : s.couplings) {
            m = std::max(m, c.ensemble);
        }
        for (const LevelShift& l : s.shifts) {
            m = std::max(m, l.ensemble);
        }
    }
    return m;
}

PulseSchedule PulseSchedule::shifted(double dt) const {
    PulseSchedule out;
    out.append(*this, dt);
    return out;
}

Segment optimized_stirap_segment(const StirapParams& p, StirapHalf half, double center, double detuning,
                                 int ensemble, const StirapPath& path) {
    p.validate();
    Segment s;
    s.label = half == StirapHalf::excitation ? "stirap+" : "stirap-";
    s.start = center - 2.0 * p.T0;
    s.end = center + 2.0 * p.T0;
    if (p.omega0 == 0.0) {
        return s;
    }
    OptimizedStirapEnvelope env{p.omega0, p.T0, p.n, p.lambda, center, StirapLeg::pump, half};
    s.couplings.push_back({ensemble, path.pump, env, 0.0});
    env.leg = StirapLeg::stokes;
    s.couplings.push_back({ensemble, path.stokes, env, 0.0});
    s.shifts.push_back({ensemble, path.pump.upper, detuning});
    return s;
}

PulseSchedule double_stirap_schedule(const StirapParams& p, bool switch_detuning_sign, int ensemble,
                                     const StirapPath& path) {
    p.validate();
    if (p.t2 - p.t1 < 4.0 * p.T0) {
        throw std::invalid_argument("double STIRAP halves overlap: need t2 - t1 >= 4 T0");
    }
    PulseSchedule out;
    out.add(optimized_stirap_segment(p, StirapHalf::excitation, p.t1, p.delta, ensemble, path));
    out.add(optimized_stirap_segment(p, StirapHalf::deexcitation, p.t2,
                                     switch_detuning_sign ? -p.delta : p.delta, ensemble, path));
    return out;
}

PulseSchedule gaussian_stirap_schedule(const GaussianStirapParams& p, int ensemble, const StirapPath& path) {
    p.validate();
    Segment s;
    s.label = "stirap-gauss";
    s.start = std::min(p.t1, p.t2) - 8.0 * p.tau;
    s.end = std::max(p.t1, p.t2) + 8.0 * p.tau;
    if (p.omega0 != 0.0) {
        s.couplings.push_back({ensemble, path.pump, GaussianEnvelope{p.omega0, p.tau, p.t1}, 0.0});
        s.couplings.push_back({ensemble, path.stokes, GaussianEnvelope{p.omega0, p.tau, p.t2}, 0.0});
        s.shifts.push_back({ensemble, path.pump.upper, p.delta});
    }
    PulseSchedule out;
    out.add(std::move(s));
    return out;
}

Segment rabi_segment(double theta, double phi, Transition transition, double rabi_frequency, double start,
                     int ensemble, std::string label) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("rabi pulse angles must be finite");
    }
    if (!(rabi_frequency > 0.0) || !std::isfinite(rabi_frequency)) {
        throw std::invalid_argument("rabi frequency must be positive");
    }
    Segment s;
    s.label = std::move(label);
    s.start = start;
    s.end = start + std::abs(theta) / rabi_frequency;
    const double phase = theta > 0.0 ? phi + kPi : phi;
    s.couplings.push_back({ensemble, transition, ConstantEnvelope{rabi_frequency}, phase});
    return s;
}

PulseSchedule rabi_pulse(double theta, double phi, Transition transition, double rabi_frequency, double start,
                         int ensemble) {
    PulseSchedule out;
    Segment s = rabi_segment(theta, phi, transition, rabi_frequency, start, ensemble);
    if (theta != 0.0) {
        out.add(std::move(s));
    }
    return out;
}

}  // namespace superatom
