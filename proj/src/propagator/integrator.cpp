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

#include "superatom/propagator/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dop853_tableau.hpp"

namespace superatom {

namespace {

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;
constexpr double kErrorExponent = -1.0 / 8.0;

double rms_norm(const StateVector& v, const Eigen::VectorXd& scale) {
    return std::sqrt((v.cwiseAbs2().array() / scale.array().square()).sum() / static_cast<double>(v.size()));
}

double initial_step(const Rhs& f, double t0, const StateVector& y0, const StateVector& f0, double direction,
                    const IntegratorOptions& o, IntegratorStats& stats) {
    const Eigen::VectorXd scale = (o.atol + y0.cwiseAbs().array() * o.rtol).matrix();
    const double d0 = rms_norm(y0, scale);
    const double d1 = rms_norm(f0, scale);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    StateVector y1 = y0 + direction * h0 * f0;
    StateVector f1(y0.size());
    f(t0 + direction * h0, y1, f1);
    ++stats.rhs_evaluations;
    const double d2 = rms_norm(f1 - f0, scale) / h0;
    double h1 = 0.0;
    if (d1 <= 1e-15 && d2 <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
    }
    return std::min(100.0 * h0, h1);
}

}  // namespace

void dop853_integrate(const Rhs& f, double t0, double t1, StateVector& y, double& h,
                      const IntegratorOptions& o, IntegratorStats& stats, const StepGuard& guard,
                      const StepObserver& observer) {
    using namespace dop853;
    if (t1 == t0) {
        return;
    }
    const double direction = t1 > t0 ? 1.0 : -1.0;
    const Eigen::Index n = y.size();
    std::array<StateVector, kStages + 1> k;
    for (auto& v : k) {
        v.resize(n);
    }
    f(t0, y, k[0]);
    ++stats.rhs_evaluations;
    double max_step = o.max_step > 0.0 ? o.max_step : std::numeric_limits<double>::infinity();
    max_step = std::min(max_step, std::abs(t1 - t0));
    double step = std::abs(h);
    if (step == 0.0) {
        step = initial_step(f, t0, y, k[0], direction, o, stats);
    }
    step = std::min(step, max_step);

    double t = t0;
    StateVector y_stage(n);
    StateVector y_new(n);
    StateVector err5(n);
    StateVector err3(n);
    Eigen::VectorXd scale(n);
    std::size_t steps = 0;
    bool last_rejected = false;
    double last_full_step = step;

    while (direction * (t1 - t) > 0.0) {
        if (++steps > o.max_steps) {
            throw IntegrationFailure("integrator step budget exhausted", t);
        }
        const double min_step = 10.0 * std::abs(std::nextafter(t, direction * std::numeric_limits<double>::infinity()) - t);
        if (step < min_step) {
            throw IntegrationFailure("step size underflow", t);
        }
        bool clipped = false;
        double hs = step;
        if (hs >= std::abs(t1 - t)) {
            hs = std::abs(t1 - t);
            clipped = true;
        }
        const double hh = direction * hs;

        for (int s = 1; s < kStages; ++s) {
            y_stage = y;
            for (int j = 0; j < s; ++j) {
                const double a = kA[s][j];
                if (a != 0.0) {
                    y_stage.noalias() += (hh * a) * k[static_cast<std::size_t>(j)];
                }
            }
            f(t + kC[s] * hh, y_stage, k[static_cast<std::size_t>(s)]);
        }
        stats.rhs_evaluations += kStages - 1;
        y_new = y;
        err5.setZero();
        err3.setZero();
        for (int j = 0; j < kStages; ++j) {
            const auto& kj = k[static_cast<std::size_t>(j)];
            if (kB[j] != 0.0) {
                y_new.noalias() += (hh * kB[j]) * kj;
            }
            if (kE5[j] != 0.0) {
                err5.noalias() += kE5[j] * kj;
            }
            if (kE3[j] != 0.0) {
                err3.noalias() += kE3[j] * kj;
            }
        }
        const double t_new = clipped ? t1 : t + hh;

        scale = (o.atol + y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array() * o.rtol).matrix();
        const double e5 = (err5.cwiseAbs2().array() / scale.array().square()).sum();
        const double e3 = (err3.cwiseAbs2().array() / scale.array().square()).sum();
        double error = 0.0;
        if (e5 > 0.0 || e3 > 0.0) {
            error = hs * e5 / std::sqrt((e5 + 0.01 * e3) * static_cast<double>(n));
        }

        if (error <= 1.0 && guard && !guard(t, y, t_new, y_new)) {
            step = 0.5 * hs;
            last_rejected = true;
            ++stats.rejected;
            continue;
        }
        if (error <= 1.0) {
            double factor = error == 0.0 ? kMaxFactor : std::min(kMaxFactor, kSafety * std::pow(error, kErrorExponent));
            if (last_rejected) {
                factor = std::min(1.0, factor);
            }
            if (!clipped) {
                last_full_step = hs;
            }
            t = t_new;
            y.swap(y_new);
            f(t, y, k[0]);
            ++stats.rhs_evaluations;
            ++stats.accepted;
            if (observer) {
                observer(t, y);
            }
            step = std::min((clipped ? std::max(hs, last_full_step) : hs) * factor, max_step);
            last_rejected = false;
        } else {
            step = hs * std::max(kMinFactor, kSafety * std::pow(error, kErrorExponent));
            last_rejected = true;
            ++stats.rejected;
        }
    }
    h = last_full_step;
}

}  // namespace superatom
