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

#include "superatom/harness/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "superatom/core/parallel.hpp"
#include "superatom/core/states.hpp"
#include "superatom/propagator/evolve.hpp"
#include "superatom/tomography/export.hpp"

namespace superatom {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

class Output {
  public:
    explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& text) {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << text;
        if (!f) {
            throw std::runtime_error("cannot write " + (dir_ / name).string());
        }
        files.push_back(name);
    }

    void matrix(const std::string& stem, const CMatrix& m, const std::vector<std::string>& labels,
                const std::string& title) {
        std::ostringstream csv, grid;
        write_matrix_csv(csv, m, labels);
        write_matrix_grid(grid, m);
        write(stem + ".csv", csv.str());
        write(stem + ".dat", grid.str());
        write(stem + ".gp", gnuplot_heatmap_script(stem + ".dat", labels, title));
    }

    std::vector<std::string> files;

  private:
    fs::path dir_;
};

struct Job {
    std::string label;
    std::function<json()> run;
};

/// Runs the jobs on the worker pool and returns their results in job order.
std::vector<json> run_jobs(const std::vector<Job>& jobs, int threads, json& timing, std::ostream* log) {
    std::vector<json> results(jobs.size());
    std::vector<double> seconds(jobs.size(), 0.0);
    std::mutex mu;
    std::size_t done = 0;
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        const auto t0 = Clock::now();
        results[i] = jobs[i].run();
        seconds[i] = std::chrono::duration<double>(Clock::now() - t0).count();
        if (log) {
            std::lock_guard<std::mutex> lock(mu);
            ++done;
            *log << "[" << done << "/" << jobs.size() << "] " << jobs[i].label << " (" << std::fixed
                 << std::setprecision(1) << seconds[i] << " s)" << std::defaultfloat << std::endl;
        }
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        timing["jobs"].push_back({{"label", jobs[i].label}, {"seconds", seconds[i]}});
    }
    return results;
}

json report_json(const MleReport& r) {
    json j = r.to_json();
    j.erase("wall_seconds");
    return j;
}

double max_of(const json& rows, const std::string& key) {
    double m = 0.0;
    for (const auto& r : rows) {
        if (r.contains(key)) {
            m = std::max(m, r.at(key).get<double>());
        }
    }
    return m;
}

std::string ensemble_tag(const std::vector<int>& e) {
    std::string s;
    for (int n : e) {
        s += std::to_string(n);
    }
    return s;
}

GateExecutor make_executor(const std::vector<int>& sizes, const ExperimentConfig& c, const LindbladModel& l) {
    return GateExecutor(build_basis(sizes), c.gate, c.tol, l);
}

TomographyOptions job_tomography(const ExperimentConfig& c, std::size_t n_jobs) {
    TomographyOptions o = c.tomography;
    o.threads = n_jobs < static_cast<std::size_t>(c.threads) ? c.threads : 1;
    return o;
}

// ---------------------------------------------------------------------------

json stirap_error_scan(const ExperimentConfig& c, Output& out, json& timing, std::ostream* log) {
    std::vector<Job> jobs;
    for (int n : c.atoms) {
        jobs.push_back({"N=" + std::to_string(n), [&c, n] {
                            return json{{"atoms", n},
                                        {"optimized_error", stirap_transfer_error(c.gate.stirap, n, c.tol)},
                                        {"gaussian_error", gaussian_transfer_error(c.gaussian, n, c.tol)}};
                        }});
    }
    json rows = run_jobs(jobs, c.threads, timing, log);
    std::string csv = "atoms,optimized_error,gaussian_error\n";
    for (const auto& r : rows) {
        csv += std::to_string(r["atoms"].get<int>()) + "," + num(r["optimized_error"]) + "," +
               num(r["gaussian_error"]) + "\n";
    }
    out.write("stirap_error.csv", csv);
    out.write("stirap_error.gp",
              "set datafile separator ','\nset logscale y\nset xlabel 'N'\nset ylabel '1 - P1'\n"
              "plot 'stirap_error.csv' using 1:2 with linespoints title 'optimized', \\\n"
              "     '' using 1:3 with linespoints title 'gaussian'\n");
    return {{"rows", rows},
            {"max_optimized_error", max_of(rows, "optimized_error")},
            {"max_gaussian_error", max_of(rows, "gaussian_error")}};
}

json phase_check(const ExperimentConfig& c, Output& out, json& timing, std::ostream* log) {
    const StirapParams p = c.gate.stirap;
    const TimeSpan span{p.t1 - 2 * p.T0, p.t2 + 2 * p.T0};
    struct Slot {
        Trajectory switched, unswitched;
    };
    std::vector<Slot> traj(c.atoms.size());
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < c.atoms.size(); ++k) {
        const int n = c.atoms[k];
        jobs.push_back({"N=" + std::to_string(n), [&, k, n] {
                            const BlockadedBasis b = build_basis({n});
                            StateVector psi = collective_state(b, 0, Level::g0) + collective_state(b, 0, Level::g1);
                            psi.normalize();
                            EvolveOptions o;
                            o.tol = c.tol;
                            o.samples = 401;
                            json row{{"atoms", n}};
                            for (bool sw : {true, false}) {
                                const HamiltonianModel m(b, double_stirap_schedule(p, sw));
                                Trajectory tr = evolve_schrodinger(psi, m, span, o);
                                const double a = ground_phase(tr).back();
                                const std::string key = sw ? "switched" : "unswitched";
                                row["final_phase_" + key] = wrap_phase(a);
                                row["unwrapped_phase_" + key] = a;
                                row["final_p1_" + key] = tr.populations.back()[1];
                                (sw ? traj[k].switched : traj[k].unswitched) = std::move(tr);
                            }
                            return row;
                        }});
    }
    json rows = run_jobs(jobs, c.threads, timing, log);
    std::string csv = "atoms,final_phase_switched,final_phase_unswitched,final_p1_switched,final_p1_unswitched\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        csv += std::to_string(r["atoms"].get<int>()) + "," + num(r["final_phase_switched"]) + "," +
               num(r["final_phase_unswitched"]) + "," + num(r["final_p1_switched"]) + "," +
               num(r["final_p1_unswitched"]) + "\n";
        for (bool sw : {true, false}) {
            std::ostringstream s;
            write_trajectory_csv(s, sw ? traj[k].switched : traj[k].unswitched);
            out.write("trajectory_N" + std::to_string(c.atoms[k]) + (sw ? "_switched" : "_unswitched") + ".csv",
                      s.str());
        }
    }
    out.write("phase_check.csv", csv);
    out.write("phase_check.gp",
              "set datafile separator ','\nset key autotitle columnhead\nset xlabel 't (s)'\n"
              "set multiplot layout 2,1\nplot 'trajectory_N1_switched.csv' using 1:3 with lines\n"
              "plot 'trajectory_N1_switched.csv' using 1:4 with lines, 'trajectory_N1_unswitched.csv' using 1:4 "
              "with lines\nunset multiplot\n");
    double max_switched = 0.0;
    for (const auto& r : rows) {
        max_switched = std::max(max_switched, std::abs(r["final_phase_switched"].get<double>()));
    }
    return {{"rows", rows}, {"max_abs_phase_switched", max_switched}};
}

json single_qubit_chi(const ExperimentConfig& c, Output& out, json& timing, std::ostream* log) {
    struct Slot {
        CMatrix chi, ideal, mle;
        TomographyRecord record;
    };
    std::vector<std::pair<int, GateSpec>> cases;
    for (int n : c.atoms) {
        for (const auto& g : c.gates) {
            cases.emplace_back(n, g);
        }
    }
    std::vector<Slot> slots(cases.size());
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& [n, g] = cases[k];
        jobs.push_back({"N=" + std::to_string(n) + " " + g.name, [&, k] {
                            const auto& [n, g] = cases[k];
                            const GateExecutor ex = make_executor({n}, c, c.lindblad);
                            const GateProgram prog = make_gate(g, c.gate);
                            const SimulatedTomography tomo(ex, job_tomography(c, cases.size()));
                            Slot& s = slots[k];
                            s.chi = tomo.process(prog, &s.record);
                            s.ideal = ideal_chi(prog.ideal);
                            json row{{"atoms", n}, {"gate", g.name}, {"error", 1.0 - fidelity(s.chi, s.ideal)}};
                            if (c.mle) {
                                const MleResult r = mle_chi(s.chi, c.constraint_mode);
                                s.mle = r.matrix;
                                row["error_mle"] = 1.0 - fidelity(s.mle, s.ideal);
                                row["mle"] = report_json(r.report);
                            }
                            return row;
                        }});
    }
    json rows = run_jobs(jobs, c.threads, timing, log);
    std::string csv = c.mle ? "atoms,gate,error,error_mle\n" : "atoms,gate,error\n";
    const auto labels = pauli_labels(1);
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& r = rows[k];
        const std::string stem = "N" + std::to_string(cases[k].first) + "_" + cases[k].second.name;
        csv += std::to_string(cases[k].first) + "," + cases[k].second.name + "," + num(r["error"]);
        csv += c.mle ? "," + num(r["error_mle"]) + "\n" : "\n";
        out.matrix(stem + "_chi", slots[k].chi, labels, stem + " chi");
        if (c.mle) {
            out.matrix(stem + "_chi_mle", slots[k].mle, labels, stem + " chi (MLE)");
        }
        std::ostringstream rec;
        write_record_csv(rec, slots[k].record);
        out.write(stem + "_record.csv", rec.str());
        if (k < c.gates.size()) {
            out.matrix(cases[k].second.name + "_chi_ideal", slots[k].ideal, labels, cases[k].second.name + " ideal");
        }
    }
    out.write("errors.csv", csv);
    return {{"rows", rows}, {"max_error", max_of(rows, "error")}, {"max_error_mle", max_of(rows, "error_mle")}};
}

json bell_states(const ExperimentConfig& c, Output& out, json& timing, std::ostream* log) {
    struct Slot {
        CMatrix rho, mle;
        TomographyRecord record;
    };
    std::vector<std::pair<std::vector<int>, BellState>> cases;
    for (const auto& e : c.ensembles) {
        for (BellState b : c.bells) {
            cases.emplace_back(e, b);
        }
    }
    std::vector<Slot> slots(cases.size());
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        jobs.push_back({"(" + ensemble_tag(cases[k].first) + ") " + bell_name(cases[k].second), [&, k] {
                            const auto& [e, b] = cases[k];
                            const GateExecutor ex = make_executor(e, c, c.lindblad);
                            const SimulatedTomography tomo(ex, job_tomography(c, cases.size()));
                            Slot& s = slots[k];
                            s.rho = tomo.state(bell_program(b, c.gate), &s.record);
                            const CMatrix ideal = bell_state_density(b);
                            json row{{"ensembles", e},
                                     {"bell", bell_name(b)},
                                     {"error", 1.0 - fidelity(s.rho, ideal)}};
                            if (c.mle) {
                                const MleResult r = mle_density(s.rho);
                                s.mle = r.matrix;
                                row["error_mle"] = 1.0 - fidelity(s.mle, ideal);
                                row["mle"] = report_json(r.report);
                            }
                            return row;
                        }});
    }
    json rows = run_jobs(jobs, c.threads, timing, log);
    std::string csv = c.mle ? "n_control,n_target,bell,error,error_mle\n" : "n_control,n_target,bell,error\n";
    const auto labels = state_labels(2);
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& r = rows[k];
        const auto& e = cases[k].first;
        const std::string name = bell_name(cases[k].second);
        const std::string stem = "bell_" + ensemble_tag(e) + "_" + name;
        csv += std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + name + "," + num(r["error"]);
        csv += c.mle ? "," + num(r["error_mle"]) + "\n" : "\n";
        out.matrix(stem + "_rho", slots[k].rho, labels, stem);
        if (c.mle) {
            out.matrix(stem + "_rho_mle", slots[k].mle, labels, stem + " (MLE)");
        }
        std::ostringstream rec;
        write_record_csv(rec, slots[k].record);
        out.write(stem + "_record.csv", rec.str());
    }
    out.write("errors.csv", csv);
    return {{"rows", rows}, {"max_error", max_of(rows, "error")}, {"max_error_mle", max_of(rows, "error_mle")}};
}

json cnot_chi(const ExperimentConfig& c, Output& out, json& timing, std::ostream* log) {
    struct Slot {
        CMatrix chi, mle;
        TomographyRecord record;
    };
    const CMatrix ideal = ideal_chi(cnot_type_matrix());
    std::vector<Slot> slots(c.ensembles.size());
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < c.ensembles.size(); ++k) {
        jobs.push_back({"(" + ensemble_tag(c.ensembles[k]) + ")", [&, k] {
                            const GateExecutor ex = make_executor(c.ensembles[k], c, c.lindblad);
                            const SimulatedTomography tomo(ex, job_tomography(c, c.ensembles.size()));
                            Slot& s = slots[k];
                            s.chi = tomo.process(cnot_type(c.gate), &s.record);
                            json row{{"ensembles", c.ensembles[k]}, {"error", 1.0 - fidelity(s.chi, ideal)}};
                            if (c.mle) {
                                const MleResult r = mle_chi(s.chi, c.constraint_mode);
                                s.mle = r.matrix;
                                row["error_mle"] = 1.0 - fidelity(s.mle, ideal);
                                row["constraint_mode"] = constraint_mode_name(c.constraint_mode);
                                row["mle"] = report_json(r.report);
                            }
                            return row;
                        }});
    }
    json rows = run_jobs(jobs, c.threads, timing, log);
    std::string csv = c.mle ? "n_control,n_target,error,error_mle\n" : "n_control,n_target,error\n";
    const auto labels = pauli_labels(2);
    out.matrix("cnot_chi_ideal", ideal, labels, "CNOT-type ideal");
    for (std::size_t k = 0; k < c.ensembles.size(); ++k) {
        const auto& e = c.ensembles[k];
        const std::string stem = "cnot_" + ensemble_tag(e);
        csv += std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + num(rows[k]["error"]);
        csv += c.mle ? "," + num(rows[k]["error_mle"]) + "\n" : "\n";
        out.matrix(stem + "_chi", slots[k].chi, labels, stem + " chi");
        if (c.mle) {
            out.matrix(stem + "_chi_mle", slots[k].mle, labels, stem + " chi (MLE)");
        }
        std::ostringstream rec;
        write_record_csv(rec, slots[k].record);
        out.write(stem + "_record.csv", rec.str());
    }
    out.write("errors.csv", csv);
    return {{"rows", rows}, {"max_error", max_of(rows, "error")}, {"max_error_mle", max_of(rows, "error_mle")}};
}

json decay_scan(const ExperimentConfig& c, Output& out, json& timing, std::ostream* log) {
    std::vector<std::pair<std::string, int>> cases;
    for (const auto& set : c.pulse_sets) {
        for (int n : c.atoms) {
            cases.emplace_back(set, n);
        }
    }
    std::vector<Job> jobs;
    for (const auto& [set, n] : cases) {
        jobs.push_back({set + " N=" + std::to_string(n), [&c, set, n] {
                            StirapParams p = set == "short" ? StirapParams::short_pulse() : StirapParams::long_pulse();
                            if (set == (c.source.value("pulses", "long"))) {
                                p = c.gate.stirap;
                            }
                            const BlockadedBasis b = build_basis({n});
                            PulseSchedule s;
                            s.add(optimized_stirap_segment(p, StirapHalf::excitation, p.t1, p.delta));
                            const HamiltonianModel m(b, s);
                            const TimeSpan span{s.begin(), s.end()};
                            const StateVector g = collective_state(b, 0, Level::g0);
                            const StateVector r = collective_state(b, 0, Level::r0);

                            const StateVector clean = propagate(g, m, span, c.tol);
                            LindbladModel sink = c.lindblad;
                            sink.target = DecayTarget::sink;
                            const StateVector lossy = propagate(g, m, span, c.tol, sink);
                            json row{{"pulse_set", set},
                                     {"atoms", n},
                                     {"error_no_decay", 1.0 - std::norm(r.dot(clean))},
                                     {"error_sink", 1.0 - std::norm(r.dot(lossy))}};
                            if (c.lindblad.has_jumps()) {
                                const CMatrix rho = propagate_density(g * g.adjoint(), m, span, c.tol, c.lindblad);
                                row["error"] = 1.0 - rydberg_population(rho, b);
                                row["error_symmetric"] = 1.0 - (r.adjoint() * rho * r)(0, 0).real();
                            } else {
                                row["error"] = 1.0 - rydberg_population(lossy, b);
                                row["error_symmetric"] = row["error_sink"];
                            }
                            return row;
                        }});
    }
    json rows = run_jobs(jobs, c.threads, timing, log);
    std::string csv = "pulse_set,atoms,error,error_symmetric,error_sink,error_no_decay\n";
    json series = json::object();
    for (const auto& r : rows) {
        csv += r["pulse_set"].get<std::string>() + "," + std::to_string(r["atoms"].get<int>()) + "," + num(r["error"]) +
               "," + num(r["error_symmetric"]) + "," + num(r["error_sink"]) + "," + num(r["error_no_decay"]) + "\n";
        const std::string set = r["pulse_set"];
        if (!series.contains(set)) {
            series[set] = json::object();
        }
        series[set]["max_error"] = std::max(series[set].value("max_error", 0.0), r["error"].get<double>());
        const double ratio = r["error"].get<double>() / std::max(r["error_no_decay"].get<double>(), 1e-300);
        series[set]["min_ratio_to_no_decay"] =
            std::min(series[set].value("min_ratio_to_no_decay", std::numeric_limits<double>::infinity()), ratio);
    }
    out.write("decay_scan.csv", csv);
    out.write("decay_scan.gp",
              "set datafile separator ','\nset logscale y\nset xlabel 'N'\nset ylabel '1 - P'\n"
              "plot 'decay_scan.csv' using (stringcolumn(1) eq 'long' ? $2 : 1/0):3 with points title 'long', \\\n"
              "     '' using (stringcolumn(1) eq 'short' ? $2 : 1/0):3 with points title 'short'\n");
    return {{"rows", rows},
            {"decay_target", c.lindblad.target == DecayTarget::ground ? "ground" : "sink"},
            {"series", series}};
}

json hadamard_decay(const ExperimentConfig& c, Output& out, json& timing, std::ostream* log) {
    struct Variant {
        std::string name;
        TomographyOptions tomography;
        LindbladModel lindblad;
    };
    std::vector<Variant> variants{{"primary", c.tomography, c.lindblad}};
    if (c.variants) {
        Variant v{"ideal_preparation", c.tomography, c.lindblad};
        v.tomography.ideal_preparation = true;
        v.tomography.physical_analysis = false;
        v.tomography.readout = Readout::collective;
        variants.push_back(v);
        v = {"ideal_analysis", c.tomography, c.lindblad};
        v.tomography.ideal_preparation = false;
        v.tomography.physical_analysis = false;
        v.tomography.readout = Readout::collective;
        variants.push_back(v);
        v = {"counting_readout", c.tomography, c.lindblad};
        v.tomography.ideal_preparation = false;
        v.tomography.physical_analysis = true;
        v.tomography.readout = Readout::counting;
        variants.push_back(v);
        v = {"sink_decay", c.tomography, c.lindblad};
        v.lindblad.target = DecayTarget::sink;
        variants.push_back(v);
    }
    struct Slot {
        CMatrix chi, mle;
        TomographyRecord record;
    };
    std::vector<std::pair<int, std::size_t>> cases;
    for (int n : c.atoms) {
        for (std::size_t v = 0; v < variants.size(); ++v) {
            cases.emplace_back(n, v);
        }
    }
    std::vector<Slot> slots(cases.size());
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        jobs.push_back(
            {"N=" + std::to_string(cases[k].first) + " " + variants[cases[k].second].name, [&, k] {
                 const auto& [n, vi] = cases[k];
                 const Variant& v = variants[vi];
                 const GateExecutor ex = make_executor({n}, c, v.lindblad);
                 TomographyOptions o = v.tomography;
                 o.threads = job_tomography(c, cases.size()).threads;
                 const SimulatedTomography tomo(ex, o);
                 const GateProgram h = hadamard(c.gate);
                 Slot& s = slots[k];
                 s.chi = tomo.process(h, &s.record);
                 const CMatrix ideal = ideal_chi(h.ideal);
                 json row{{"atoms", n}, {"variant", v.name}, {"error", 1.0 - fidelity(s.chi, ideal)}};
                 if (c.mle) {
                     const MleResult r = mle_chi(s.chi, c.constraint_mode);
                     s.mle = r.matrix;
                     row["error_mle"] = 1.0 - fidelity(s.mle, ideal);
                     row["mle"] = report_json(r.report);
                 }
                 return row;
             }});
    }
    json rows = run_jobs(jobs, c.threads, timing, log);
    std::string csv = c.mle ? "atoms,variant,error,error_mle\n" : "atoms,variant,error\n";
    const auto labels = pauli_labels(1);
    json primary = json::object();
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& r = rows[k];
        const std::string& name = variants[cases[k].second].name;
        const std::string stem = "N" + std::to_string(cases[k].first) + "_" + name;
        csv += std::to_string(cases[k].first) + "," + name + "," + num(r["error"]);
        csv += c.mle ? "," + num(r["error_mle"]) + "\n" : "\n";
        out.matrix(stem + "_chi", slots[k].chi, labels, "hadamard " + stem);
        if (c.mle) {
            out.matrix(stem + "_chi_mle", slots[k].mle, labels, "hadamard " + stem + " (MLE)");
        }
        std::ostringstream rec;
        write_record_csv(rec, slots[k].record);
        out.write(stem + "_record.csv", rec.str());
        if (name == "primary") {
            primary[std::to_string(cases[k].first)] = r["error"];
        }
    }
    out.write("errors.csv", csv);
    return {{"rows", rows}, {"primary_error", primary}};
}

}  // namespace

double wrap_phase(double a) {
    double w = std::remainder(a, kTwoPi);
    if (w <= -kPi) {
        w += kTwoPi;
    }
    return w;
}

double stirap_transfer_error(const StirapParams& p, int atoms, double tol) {
    const BlockadedBasis b = build_basis({atoms});
    PulseSchedule s;
    s.add(optimized_stirap_segment(p, StirapHalf::excitation, p.t1, p.delta));
    const HamiltonianModel m(b, s);
    const StateVector out = propagate(collective_state(b, 0, Level::g0), m, {s.begin(), s.end()}, tol);
    return 1.0 - std::norm(collective_state(b, 0, Level::r0).dot(out));
}

double gaussian_transfer_error(const GaussianStirapParams& p, int atoms, double tol) {
    const BlockadedBasis b = build_basis({atoms});
    const PulseSchedule s = gaussian_stirap_schedule(p);
    const HamiltonianModel m(b, s);
    const StateVector out = propagate(collective_state(b, 0, Level::g0), m, {s.begin(), s.end()}, tol);
    return 1.0 - std::norm(collective_state(b, 0, Level::r0).dot(out));
}

RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream* log) {
    Output out(out_dir);
    RunResult result;
    result.timing = {{"experiment", config.experiment}, {"threads", config.threads}, {"jobs", json::array()}};
    const auto t0 = Clock::now();
    if (log) {
        *log << config.experiment << ": " << config.description << std::endl;
    }
    json body;
    const std::string& k = config.experiment;
    if (k == "stirap_error_scan") {
        body = stirap_error_scan(config, out, result.timing, log);
    } else if (k == "phase_check") {
        body = phase_check(config, out, result.timing, log);
    } else if (k == "single_qubit_chi") {
        body = single_qubit_chi(config, out, result.timing, log);
    } else if (k == "bell_states") {
        body = bell_states(config, out, result.timing, log);
    } else if (k == "cnot_chi") {
        body = cnot_chi(config, out, result.timing, log);
    } else if (k == "decay_scan") {
        body = decay_scan(config, out, result.timing, log);
    } else if (k == "hadamard_decay") {
        body = hadamard_decay(config, out, result.timing, log);
    } else {
        throw ValidationError({"experiment: unknown kind '" + k + "'"});
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();

    result.summary = {{"experiment", k}, {"description", config.description}, {"tol", config.tol}};
    result.summary.update(body);
    out.write("config.json", config.source.dump(2) + "\n");
    out.write("summary.json", result.summary.dump(2) + "\n");
    result.timing["total_seconds"] = seconds;
    result.timing["budget_seconds"] = config.budget_seconds;
    result.timing["within_budget"] = config.budget_seconds <= 0.0 || seconds <= config.budget_seconds;
    out.write("timing.json", result.timing.dump(2) + "\n");
    if (log && config.budget_seconds > 0.0 && seconds > config.budget_seconds) {
        *log << "warning: run took " << seconds << " s, budget " << config.budget_seconds << " s" << std::endl;
    }
    result.files = out.files;
    return result;
}

}  // namespace superatom
