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

#include <variant>

#include "superatom/core/types.hpp"

namespace superatom {

/// Optimized STIRAP pulse pair: hypergaussian windows F(t) = exp[-(t/T0)^(2n)]
/// with a logistic mixing angle f(t) = 1 / (1 + exp(-lambda t / T)), T = T0 / 2.
/// Frequencies are angular (rad/s), times in seconds.
struct StirapParams {
    double omega0 = mhz(50.0);
    double delta = mhz(200.0);
    double T0 = microseconds(2.0);
    int n = 3;
    double lambda = 4.0;
    double t1 = microseconds(-4.0);
    double t2 = microseconds(4.0);

    double T() const { return T0 / 2.0; }
    /// Throws std::invalid_argument on T0 <= 0, n < 1 or non-finite values.
    void validate() const;

    /// Omega0/2pi = 50 MHz, delta/2pi = 200 MHz, T0 = 2 us, n = 3, lambda = 4, t1 = -4 us, t2 = 4 us.
    static StirapParams long_pulse();
    /// T0 = 100 ns, delta/2pi = 2 GHz, Omega0/2pi = 500 MHz, t1 = -170 ns, t2 = 170 ns.
    static StirapParams short_pulse();
};

/// Conventional Gaussian pair. Index 1 is the pump (qubit <-> e) leg, index 2 the
/// Stokes (e <-> Rydberg) leg; t1 > t2 gives the counter-intuitive order.
struct GaussianStirapParams {
    double omega0 = mhz(50.0);
    double delta = mhz(200.0);
    double tau = microseconds(1.0);
    double t1 = microseconds(1.0);
    double t2 = microseconds(-1.0);

    void validate() const;
};

/// Pump (Omega_1) and Stokes (Omega_2) amplitudes at one instant.
struct EnvelopePair {
    double pump = 0.0;
    double stokes = 0.0;
};

double hypergaussian(double t, double T0, int n);
double mixing_logistic(double t, double T, double lambda);

/// Both legs of the optimized double sequence (excitation term centred at t1
/// plus de-excitation term centred at t2).
EnvelopePair optimized_stirap_envelopes(const StirapParams& p, double t);
EnvelopePair gaussian_stirap_envelopes(const GaussianStirapParams& p, double t);

enum class StirapLeg { pump, stokes };
enum class StirapHalf { excitation, deexcitation };

struct ConstantEnvelope {
    double amplitude = 0.0;
};

/// One leg of one half of the optimized sequence, centred at `center`.
struct OptimizedStirapEnvelope {
    double omega0 = 0.0;
    double T0 = 1.0;
    int n = 3;
    double lambda = 4.0;
    double center = 0.0;
    StirapLeg leg = StirapLeg::pump;
    StirapHalf half = StirapHalf::excitation;
};

struct GaussianEnvelope {
    double omega0 = 0.0;
    double tau = 1.0;
    double center = 0.0;
};

using Envelope = std::variant<ConstantEnvelope, OptimizedStirapEnvelope, GaussianEnvelope>;

double evaluate(const Envelope& envelope, double t);

/// Ideal two-level Rabi rotation
///   R(theta, phi) = [[cos(theta/2), i e^{-i phi} sin(theta/2)],
///                    [i e^{i phi} sin(theta/2), cos(theta/2)]]
/// in the (lower, upper) basis. A resonant pulse of area A and phase phi acts
/// as R(-A, phi).
CMatrix rotation_matrix(double theta, double phi);
CMatrix rotation_x(double theta);
CMatrix rotation_y(double theta);

}  // namespace superatom
