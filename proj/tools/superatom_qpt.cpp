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

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "superatom/harness/experiments.hpp"
#include "superatom/propagator/integrator.hpp"

using namespace superatom;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIntegration = 4;

std::filesystem::path default_out_root() {
    if (const char* env = std::getenv("SUPERATOM_QPT_OUT"); env && *env) {
        return env;
    }
    return "superatom-results";
}

std::string run_name(const std::string& target) {
    if (is_preset(target)) {
        return target;
    }
    return std::filesystem::path(target).stem().string();
}

int cmd_list() {
    for (const auto& p : list_presets()) {
        std::cout << std::left << std::setw(20) << p.name << std::right << std::setw(6) << p.budget_seconds << " s  "
                  << p.description << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& target) {
    const auto diag = validate_config(load_config_document(target));
    if (diag.empty()) {
        std::cout << target << ": ok\n";
        return 0;
    }
    for (const auto& d : diag) {
        std::cerr << target << ": " << d << "\n";
    }
    return kExitValidation;
}

int cmd_show(const std::string& target) {
    std::cout << parse_config(load_config_document(target)).source.dump(2) << "\n";
    return 0;
}

int cmd_run(const std::string& target, const std::string& out, const double* tol, const int* threads, bool quiet) {
    nlohmann::json doc = load_config_document(target);
    if (tol) {
        doc["tol"] = *tol;
    }
    if (threads) {
        doc["threads"] = *threads;
    }
    const ExperimentConfig config = parse_config(doc);
    const std::filesystem::path dir = out.empty() ? default_out_root() / run_name(target) : std::filesystem::path(out);
    const RunResult r = run_experiment(config, dir, quiet ? nullptr : &std::cerr);
    std::cout << "wrote " << r.files.size() << " files to " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulated process tomography of superatom qubits"};
    app.require_subcommand(1);

    app.add_subcommand("list", "List shipped presets");

    auto* validate = app.add_subcommand("validate", "Check a preset or config file");
    std::string validate_target;
    validate->add_option("config", validate_target, "Preset name or JSON file")->required();

    auto* show = app.add_subcommand("show", "Print the fully merged config of a preset or file");
    std::string show_target;
    show->add_option("config", show_target, "Preset name or JSON file")->required();

    auto* run = app.add_subcommand("run", "Run a preset or config file");
    std::string run_target, out;
    double tol = 0.0;
    int threads = 0;
    bool quiet = false;
    run->add_option("config", run_target, "Preset name or JSON file")->required();
    run->add_option("--out", out, "Output directory (default $SUPERATOM_QPT_OUT/<name>)");
    auto* tol_opt = run->add_option("--tol", tol, "Integrator tolerance");
    auto* threads_opt = run->add_option("--threads", threads, "Worker threads");
    run->add_flag("-q,--quiet", quiet, "No progress output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) {
            return cmd_list();
        }
        if (app.got_subcommand("validate")) {
            return cmd_validate(validate_target);
        }
        if (app.got_subcommand("show")) {
            return cmd_show(show_target);
        }
        return cmd_run(run_target, out, tol_opt->count() ? &tol : nullptr, threads_opt->count() ? &threads : nullptr,
                       quiet);
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const IntegrationFailure& e) {
        std::cerr << "integration failure: " << e.what() << "\n";
        return kExitIntegration;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
