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

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "superatom/gates/gates.hpp"
#include "superatom/mle/mle.hpp"
#include "superatom/tomography/experiment.hpp"

namespace superatom {

/// Invalid configuration; carries one diagnostic per offending key.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<std::string> diagnostics);
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  private:
    std::vector<std::string> diagnostics_;
};

inline constexpr double kMinTol = 1e-14;
inline constexpr double kMaxTol = 1e-8;

/// Experiment kinds. Every shipped preset is one kind with fixed parameters.
inline const std::vector<std::string> kExperimentKinds{
    "stirap_error_scan", "phase_check", "single_qubit_chi", "bell_states", "cnot_chi", "decay_scan", "hadamard_decay"};

/// A named single-qubit gate, optionally a general rotation.
struct GateSpec {
    std::string name;
    double theta = 0.0;
    double phi = 0.0;
};

GateProgram make_gate(const GateSpec& spec, const GateConfig& config);

struct ExperimentConfig {
    std::string experiment;
    std::string description;
    double budget_seconds = 0.0;
    double tol = 1e-10;
    int threads = 1;

    GateConfig gate = GateConfig::long_pulse();
    GaussianStirapParams gaussian;
    LindbladModel lindblad;
    TomographyOptions tomography;
    bool mle = true;
    ConstraintMode constraint_mode = ConstraintMode::diagonal_only;

    std::vector<int> atoms;
    std::vector<std::vector<int>> ensembles;
    std::vector<GateSpec> gates;
    std::vector<BellState> bells;
    std::vector<std::string> pulse_sets;
    bool variants = false;

    /// The document this config was parsed from, with the preset merged in.
    nlohmann::json source;
};

struct PresetInfo {
    std::string name;
    std::string description;
    double budget_seconds;
};

std::vector<PresetInfo> list_presets();
bool is_preset(const std::string& name);
/// Full JSON document of a shipped preset; throws ValidationError for unknown names.
nlohmann::json preset_json(const std::string& name);

/// Diagnostics for a config document (empty when valid). A document may name
/// a shipped preset under "preset" and override any of its keys.
std::vector<std::string> validate_config(const nlohmann::json& doc);
/// Throws ValidationError listing every diagnostic.
ExperimentConfig parse_config(const nlohmann::json& doc);
/// A preset name or a path to a JSON file.
nlohmann::json load_config_document(const std::string& preset_or_path);

}  // namespace superatom
