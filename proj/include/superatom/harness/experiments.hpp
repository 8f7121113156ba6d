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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "superatom/harness/config.hpp"

namespace superatom {

struct RunResult {
    /// Deterministic results; identical across reruns and thread counts.
    nlohmann::json summary;
    /// Wall-clock times per job and in total.
    nlohmann::json timing;
    /// Paths written, relative to the output directory, in write order.
    std::vector<std::string> files;
};

/// Runs one experiment and writes its tables into `out_dir` (created if
/// missing). Progress lines go to `log` when given.
///
/// Throws IntegrationFailure, ConvergenceFailure or std::runtime_error on I/O errors.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                         std::ostream* log = nullptr);

/// 1 - P of the collective Rydberg state after one optimized excitation half.
double stirap_transfer_error(const StirapParams& p, int atoms, double tol);
double gaussian_transfer_error(const GaussianStirapParams& p, int atoms, double tol);

/// Phase in (-pi, pi].
double wrap_phase(double a);

}  // namespace superatom
