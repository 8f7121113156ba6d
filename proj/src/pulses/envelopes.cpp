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

#include "superatom/pulses/envelopes.hpp"

#include <cmath>
#include <stdexcept>

namespace superatom {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

void StirapParams::validate() const {
    require_finite(omega0, "omega0");
    require_finite(delta, "delta");
    require_finite(T0, "T0");
    require_finite(lambda, "lambda");
    require_finite(t1, "t1");
    require_finite(t2, "t2");
    if (T0 <= 0.0) {
        throw std::invalid_argument("T0 must be positive");
    }
    if (n < 1) {
        throw std::invalid_argument("hypergaussian order n must be >= 1");
    }
    if (omega0 < 0.0) {
        throw std::invalid_argument("omega0 must be nonnegative");
    }
}

StirapParams StirapParams::long_pulse() { return StirapParams{}; }

StirapParams StirapParams::short_pulse() {
    StirapParams p;
    p.omega0 = mhz(500.0);
    p.delta = mhz(2000.0);
    p.T0 = nanoseconds(100.0);
    p.t1 = nanoseconds(-170.0);
    p.t2 = nanoseconds(170.0);
    return p;
}

void GaussianStirapParams::validate() const {
    require_finite(omega0, "omega0");
    require_finite(delta, "delta");
    require_finite(tau, "tau");
    require_finite(t1, "t1");
    require_finite(t2, "t2");
    if (tau <= 0.0) {
        throw std::invalid_argument("tau must be positive");
    }
}

double hypergaussian(double t, double T0, int n) {
    const double x = t / T0;
    return std::exp(-std::pow(x * x, n));
}

double mixing_logistic(double t, double T, double lambda) {
    return 1.0 / (1.0 + std::exp(-lambda * t / T));
}

namespace {

EnvelopePair optimized_half(const StirapParams& p, double center, StirapHalf half, double t) {
    const double s = t - center;
    const double window = p.omega0 * hypergaussian(s, p.T0, p.n);
    const double angle = 0.5 * kPi * mixing_logistic(s, p.T(), p.lambda);
    if (half == StirapHalf::excitation) {
        return {window * std::sin(angle), window * std::cos(angle)};
    }
    return {window * std::cos(angle), window * std::sin(angle)};
}

}  // namespace

EnvelopePair optimized_stirap_envelopes(const StirapParams& p, double t) {
    const EnvelopePair a = optimized_half(p, p.t1, StirapHalf::excitation, t);
    const EnvelopePair b = optimized_half(p, p.t2, StirapHalf::deexcitation, t);
    return {a.pump + b.pump, a.stokes + b.stokes};
}

EnvelopePair gaussian_stirap_envelopes(const GaussianStirapParams& p, double t) {
    const double d1 = t - p.t1;
    const double d2 = t - p.t2;
    return {p.omega0 * std::exp(-d1 * d1 / (2.0 * p.tau * p.tau)),
            p.omega0 * std::exp(-d2 * d2 / (2.0 * p.tau * p.tau))};
}

double evaluate(const Envelope& envelope, double t) {
    struct Visitor {
        double t;
        double operator()(const ConstantEnvelope& c) const { return c.amplitude; }
        double operator()(const OptimizedStirapEnvelope& o) const {
            StirapParams p;
            p.omega0 = o.omega0;
            p.T0 = o.T0;
            p.n = o.n;
            p.lambda = o.lambda;
            const EnvelopePair pair = optimized_half(p, o.center, o.half, t);
            return o.leg == StirapLeg::pump ? pair.pump : pair.stokes;
        }
        double operator()(const GaussianEnvelope& g) const {
            const double d = t - g.center;
            return g.omega0 * std::exp(-d * d / (2.0 * g.tau * g.tau));
        }
    };
    return std::visit(Visitor{t}, envelope);
}

CMatrix rotation_matrix(double theta, double phi) {
    const cplx i1(0.0, 1.0);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    CMatrix r(2, 2);
    r << c, i1 * std::exp(-i1 * phi) * s, i1 * std::exp(i1 * phi) * s, c;
    return r;
}

CMatrix rotation_x(double theta) { return rotation_matrix(-theta, 0.0); }
CMatrix rotation_y(double theta) { return rotation_matrix(-theta, kPi / 2.0); }

}  // namespace superatom
