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

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "superatom/core/types.hpp"

namespace superatom {

/// Raised when the adaptive step collapses below floating-point resolution or
/// the step budget runs out.
class IntegrationFailure : public std::runtime_error {
  public:
    IntegrationFailure(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

  private:
    double time_;
};

struct IntegratorOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    /// Zero means unbounded.
    double max_step = 0.0;
    std::size_t max_steps = 50'000'000;
};

struct IntegratorStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

using Rhs = std::function<void(double t, const StateVector& y, StateVector& dydt)>;
/// Called after each accepted step. Returning false rejects the step and halves it.
using StepGuard = std::function<bool(double t_old, const StateVector& y_old, double t_new, const StateVector& y_new)>;
using StepObserver = std::function<void(double t, const StateVector& y)>;

/// Explicit Dormand-Prince 8(5,3) with the usual combined 5th/3rd order error
/// estimate. Advances `y` from t0 to t1 exactly, landing on t1 with a clipped
/// final step. `h` carries the step size suggestion in and out (0 = choose).
void dop853_integrate(const Rhs& f, double t0, double t1, StateVector& y, double& h,
                      const IntegratorOptions& options, IntegratorStats& stats, const StepGuard& guard = {},
                      const StepObserver& observer = {});

}  // namespace superatom
