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

#include <cmath>

#include "gtest/gtest.h"

#include "superatom/pulses/schedule.hpp"

using namespace superatom;

TEST(envelopes, optimized_center_value) {
    const StirapParams p = StirapParams::long_pulse();
    const EnvelopePair e = optimized_stirap_envelopes(p, p.t1);
    ASSERT_NEAR(e.pump / p.omega0, 0.70710678118654752, 1e-12);
    ASSERT_NEAR(e.stokes / p.omega0, 0.70710678118654752, 1e-12);
    ASSERT_EQ(p.T(), p.T0 / 2.0);
}

TEST(envelopes, optimized_tails) {
    const StirapParams p = StirapParams::long_pulse();
    for (double t : {p.t1 - 5.5 * p.T0, p.t2 + 5.5 * p.T0, p.t1 - 20.0 * p.T0}) {
        const EnvelopePair e = optimized_stirap_envelopes(p, t);
        ASSERT_LT(e.pump, 1e-10 * p.omega0);
        ASSERT_LT(e.stokes, 1e-10 * p.omega0);
    }
}

TEST(envelopes, optimized_half_symmetry) {
    const StirapParams p = StirapParams::long_pulse();
    for (double s = -4e-6; s <= 4e-6; s += 0.37e-6) {
        const double exc_pump = evaluate(OptimizedStirapEnvelope{p.omega0, p.T0, p.n, p.lambda, p.t1, StirapLeg::pump,
                                                                 StirapHalf::excitation},
                                         p.t1 + s);
        const double dex_stokes = evaluate(OptimizedStirapEnvelope{p.omega0, p.T0, p.n, p.lambda, p.t2,
                                                                   StirapLeg::stokes, StirapHalf::deexcitation},
                                           p.t2 + s);
        const double dex_pump_mirror = evaluate(OptimizedStirapEnvelope{p.omega0, p.T0, p.n, p.lambda, p.t2,
                                                                        StirapLeg::pump, StirapHalf::deexcitation},
                                                p.t2 - s);
        ASSERT_NEAR(exc_pump, dex_stokes, 1e-9 * p.omega0);
        ASSERT_NEAR(exc_pump, dex_pump_mirror, 1e-9 * p.omega0);
    }
}

TEST(envelopes, gaussian_values) {
    const GaussianStirapParams p;
    const EnvelopePair peak = gaussian_stirap_envelopes(p, p.t1);
    ASSERT_EQ(peak.pump, p.omega0);
    const EnvelopePair mid = gaussian_stirap_envelopes(p, 0.0);
    ASSERT_NEAR(mid.pump, p.omega0 * std::exp(-0.5), 1e-9);
    ASSERT_NEAR(mid.stokes, p.omega0 * std::exp(-0.5), 1e-9);
    const EnvelopePair far = gaussian_stirap_envelopes(p, 1.0);
    ASSERT_EQ(far.pump, 0.0);
    ASSERT_EQ(far.stokes, 0.0);
    // Stokes leads.
    ASSERT_GT(gaussian_stirap_envelopes(p, -1e-6).stokes, gaussian_stirap_envelopes(p, -1e-6).pump);
}

TEST(envelopes, smooth_derivatives) {
    const StirapParams p = StirapParams::long_pulse();
    const GaussianStirapParams g;
    const double h = 1e-10;
    double worst = 0.0;
    for (double t = -9e-6; t <= 9e-6; t += 1.3e-8) {
        const auto a = optimized_stirap_envelopes(p, t - h);
        const auto b = optimized_stirap_envelopes(p, t + h);
        const auto c = gaussian_stirap_envelopes(g, t - h);
        const auto d = gaussian_stirap_envelopes(g, t + h);
        worst = std::max({worst, std::abs(b.pump - a.pump) / (2 * h), std::abs(b.stokes - a.stokes) / (2 * h),
                          std::abs(d.pump - c.pump) / (2 * h), std::abs(d.stokes - c.stokes) / (2 * h)});
    }
    // Slopes stay below a few Omega0 / T0.
    ASSERT_LT(worst, 10.0 * p.omega0 / p.T0);
}

TEST(envelopes, rotation_matrix_actions) {
    const CMatrix r = rotation_matrix(kPi, 0.0);
    ASSERT_NEAR(std::abs(r(0, 0)), 0.0, 1e-15);
    ASSERT_NEAR(std::abs(r(1, 0) - cplx(0.0, 1.0)), 0.0, 1e-15);
    const CMatrix two = rotation_matrix(kTwoPi, 0.7);
    ASSERT_TRUE(two.isApprox(-CMatrix::Identity(2, 2)));
    ASSERT_TRUE(rotation_matrix(0.0, 1.3).isApprox(CMatrix::Identity(2, 2)));
    ASSERT_TRUE((rotation_matrix(1.1, 0.4) * rotation_matrix(1.1, 0.4).adjoint()).isApprox(CMatrix::Identity(2, 2)));
    // R_x(pi) = -i X, R_y(pi) = -i Y.
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    ASSERT_TRUE(rotation_x(kPi).isApprox(cplx(0, -1) * x));
    CMatrix y(2, 2);
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    ASSERT_TRUE(rotation_y(kPi).isApprox(cplx(0, -1) * y));
}

TEST(schedule, double_stirap_detuning_switch) {
    const StirapParams p = StirapParams::long_pulse();
    const PulseSchedule on = double_stirap_schedule(p, true);
    ASSERT_EQ(on.segments().size(), 2u);
    ASSERT_EQ(on.segments()[0].shifts[0].energy, p.delta);
    ASSERT_EQ(on.segments()[1].shifts[0].energy, -p.delta);
    ASSERT_EQ(on.begin(), -8e-6);
    ASSERT_EQ(on.end(), 8e-6);
    const PulseSchedule off = double_stirap_schedule(p, false);
    ASSERT_EQ(off.segments()[1].shifts[0].energy, p.delta);

    StirapParams close = p;
    close.t2 = close.t1 + 3.0 * close.T0;
    ASSERT_THROW(double_stirap_schedule(close, true), std::invalid_argument);

    StirapParams dark = p;
    dark.omega0 = 0.0;
    const PulseSchedule idle = double_stirap_schedule(dark, true);
    for (const Segment& s : idle.segments()) {
        ASSERT_TRUE(s.couplings.empty());
        ASSERT_TRUE(s.shifts.empty());
    }
}

TEST(schedule, overlap_rules) {
    PulseSchedule s;
    s.add(rabi_segment(kPi, 0.0, {Level::g1, Level::r1}, mhz(50.0), 0.0));
    ASSERT_THROW(s.add(rabi_segment(kPi, 0.0, {Level::g1, Level::r1}, mhz(50.0), 5e-9)), std::invalid_argument);
    s.add(rabi_segment(kPi, 0.0, {Level::g1, Level::r1}, mhz(50.0), 10e-9));

    Segment a = rabi_segment(kPi, 0.0, {Level::r0, Level::r1}, mhz(25.0), 0.0);
    Segment b = rabi_segment(kPi, 0.0, {Level::g0, Level::e}, mhz(25.0), 1e-9);
    a.simultaneous = b.simultaneous = true;
    PulseSchedule t;
    t.add(a);
    t.add(b);
    ASSERT_EQ(t.breakpoints().size(), 4u);

    Segment bad;
    bad.start = 1.0;
    bad.end = 1.0;
    ASSERT_THROW(t.add(bad), std::invalid_argument);
    Segment self = rabi_segment(kPi, 0.0, {Level::g0, Level::g0}, mhz(25.0), 5.0);
    ASSERT_THROW(t.add(self), std::invalid_argument);
}

TEST(schedule, rabi_pulse_area) {
    const double omega = mhz(50.0);
    for (double theta : {kPi, -kPi, 3 * kPi, kPi / 2, -2.2}) {
        const PulseSchedule s = rabi_pulse(theta, 0.3, {Level::g1, Level::r1}, omega, 1e-6);
        ASSERT_EQ(s.segments().size(), 1u);
        const Segment& seg = s.segments()[0];
        const int n = 2000;
        double area = 0.0;
        for (int i = 0; i < n; ++i) {
            area += evaluate(seg.couplings[0].envelope, seg.start + (i + 0.5) * seg.duration() / n) * seg.duration() / n;
        }
        ASSERT_NEAR(area, std::abs(theta), 1e-6 * std::abs(theta));
        ASSERT_NEAR(std::remainder(seg.couplings[0].phase - (theta > 0 ? 0.3 + kPi : 0.3), kTwoPi), 0.0, 1e-15);
    }
    ASSERT_TRUE(rabi_pulse(0.0, 0.0, {Level::g1, Level::r1}, omega).empty());
    ASSERT_THROW(rabi_pulse(kPi, 0.0, {Level::g1, Level::r1}, 0.0), std::invalid_argument);
}

TEST(schedule, append_shifts_centers) {
    const StirapParams p = StirapParams::long_pulse();
    const PulseSchedule s = double_stirap_schedule(p, true).shifted(1e-6);
    const auto& env = std::get<OptimizedStirapEnvelope>(s.segments()[0].couplings[0].envelope);
    ASSERT_NEAR(env.center, p.t1 + 1e-6, 1e-18);
    ASSERT_NEAR(s.begin(), -7e-6, 1e-18);
}
