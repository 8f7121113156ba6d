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

#include "superatom/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <set>

namespace superatom {

namespace {

using nlohmann::json;

std::string join_lines(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& d : v) {
        s += "\n  " + d;
    }
    return s;
}

/// Typed access to one JSON object that records diagnostics instead of throwing.
class Reader {
  public:
    Reader(const json& obj, std::string path, std::vector<std::string>& diag)
        : obj_(obj), path_(std::move(path)), diag_(diag) {
        if (!obj_.is_object()) {
            error("", "must be an object");
        }
    }

    ~Reader() {
        if (!obj_.is_object()) {
            return;
        }
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.count(key)) {
                diag_.push_back(where(key) + ": unknown key");
            }
        }
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return obj_.is_object() && obj_.contains(key);
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return obj_.at(key);
    }

    void number(const std::string& key, double& out, double lo, double hi) {
        if (!has(key)) {
            return;
        }
        const json& v = obj_.at(key);
        if (!v.is_number()) {
            error(key, "must be a number");
            return;
        }
        const double x = v.get<double>();
        if (!(x >= lo && x <= hi)) {
            error(key, "must be in [" + fmt(lo) + ", " + fmt(hi) + "], got " + fmt(x));
            return;
        }
        out = x;
    }

    void integer(const std::string& key, int& out, int lo, int hi) {
        if (!has(key)) {
            return;
        }
        const json& v = obj_.at(key);
        if (!v.is_number_integer()) {
            error(key, "must be an integer");
            return;
        }
        const auto x = v.get<long long>();
        if (x < lo || x > hi) {
            error(key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(x));
            return;
        }
        out = static_cast<int>(x);
    }

    void boolean(const std::string& key, bool& out) {
        if (!has(key)) {
            return;
        }
        if (!obj_.at(key).is_boolean()) {
            error(key, "must be true or false");
            return;
        }
        out = obj_.at(key).get<bool>();
    }

    void text(const std::string& key, std::string& out) {
        if (!has(key)) {
            return;
        }
        if (!obj_.at(key).is_string()) {
            error(key, "must be a string");
            return;
        }
        out = obj_.at(key).get<std::string>();
    }

    bool choice(const std::string& key, std::string& out, const std::vector<std::string>& allowed) {
        std::string v;
        if (!has(key)) {
            return false;
        }
        text(key, v);
        for (const auto& a : allowed) {
            if (a == v) {
                out = v;
                return true;
            }
        }
        std::string list;
        for (const auto& a : allowed) {
            list += (list.empty() ? "" : ", ") + a;
        }
        error(key, "must be one of {" + list + "}, got '" + v + "'");
        return false;
    }

    std::string where(const std::string& key) const {
        if (path_.empty()) {
            return key;
        }
        return key.empty() ? path_ : path_ + "." + key;
    }

    void error(const std::string& key, const std::string& msg) { diag_.push_back(where(key) + ": " + msg); }

    static std::string fmt(double x) {
        std::ostringstream s;
        s << x;
        return s.str();
    }

  private:
    const json& obj_;
    std::string path_;
    std::vector<std::string>& diag_;
    std::set<std::string> seen_;
};

const std::vector<std::string> kGateNames{"identity", "empty", "rotation", "hadamard", "not_x", "not_y", "not_z"};

struct Preset {
    const char* name;
    const char* description;
    double budget;
    json doc;
};

const std::vector<Preset>& presets() {
    static const std::vector<Preset> p = [] {
        std::vector<Preset> v;
        v.push_back({"stirap_error_scan",
                     "Population-transfer error 1-P1 of one STIRAP sequence, optimized vs Gaussian pulses, N=1..5",
                     120,
                     {{"experiment", "stirap_error_scan"}, {"atoms", {1, 2, 3, 4, 5}}}});
        v.push_back({"phase_check",
                     "P1(t) and ground-state phase through double STIRAP with and without the detuning sign switch",
                     120,
                     {{"experiment", "phase_check"}, {"atoms", {1, 2, 3, 4}}}});
        v.push_back({"single_qubit_chi",
                     "Process tomography of identity, NOT-X, NOT-Y, NOT-Z and Hadamard for N=1..4",
                     600,
                     {{"experiment", "single_qubit_chi"},
                      {"atoms", {1, 2, 3, 4}},
                      {"gates", {"identity", "not_x", "not_y", "not_z", "hadamard"}},
                      {"mle", {{"enabled", true}, {"constraint_mode", "full"}}}}});
        v.push_back({"bell_states",
                     "Bell-state generation and two-qubit state tomography for ensemble sizes (1,1), (1,2), (2,1), (2,2)",
                     1800,
                     {{"experiment", "bell_states"},
                      {"ensembles", {{1, 1}, {1, 2}, {2, 1}, {2, 2}}},
                      {"bell", {"phip", "phim", "psip", "psim"}}}});
        v.push_back({"cnot_chi",
                     "Two-qubit process tomography of the CNOT-type gate, configuration (1,1)",
                     3600,
                     {{"experiment", "cnot_chi"},
                      {"ensembles", {{1, 1}}},
                      {"mle", {{"enabled", true}, {"constraint_mode", "diagonal_only"}}}}});
        v.push_back({"decay_scan",
                     "STIRAP population error with intermediate and Rydberg decay, long and short pulse sets, N=1..4",
                     300,
                     {{"experiment", "decay_scan"},
                      {"atoms", {1, 2, 3, 4}},
                      {"pulse_sets", {"long", "short"}},
                      {"tol", 1e-9},
                      {"decay", {{"gamma_e_mhz", 5.0}, {"gamma_r_khz", 0.8}, {"target", "ground"}}}}});
        v.push_back({"hadamard_decay",
                     "Hadamard process tomography with decay, short pulses, 600 ns blockade window, N=1,2",
                     1200,
                     {{"experiment", "hadamard_decay"},
                      {"atoms", {1, 2}},
                      {"pulses", "short"},
                      {"variants", true},
                      {"decay", {{"gamma_e_mhz", 5.0}, {"gamma_r_khz", 0.8}, {"target", "ground"}}},
                      {"tomography", {{"analysis", "physical"}, {"preparation", "physical"}}},
                      {"mle", {{"enabled", true}, {"constraint_mode", "full"}}}}});
        for (auto& p : v) {
            p.doc["description"] = p.description;
            p.doc["budget_seconds"] = p.budget;
        }
        return v;
    }();
    return p;
}

json merged_document(const json& doc, std::vector<std::string>& diag) {
    if (!doc.is_object()) {
        diag.push_back("config must be a JSON object");
        return json::object();
    }
    if (!doc.contains("preset")) {
        return doc;
    }
    if (!doc.at("preset").is_string() || !is_preset(doc.at("preset").get<std::string>())) {
        diag.push_back("preset: unknown preset " + doc.at("preset").dump());
        return json::object();
    }
    json base = preset_json(doc.at("preset").get<std::string>());
    json patch = doc;
    patch.erase("preset");
    base.merge_patch(patch);
    return base;
}

void read_stirap(Reader& r, StirapParams& p) {
    double omega = p.omega0 / mhz(1.0), delta = p.delta / mhz(1.0), t0 = p.T0 / microseconds(1.0);
    double t1 = p.t1 / microseconds(1.0), t2 = p.t2 / microseconds(1.0);
    r.number("omega0_mhz", omega, 0.0, 1e5);
    r.number("delta_mhz", delta, -1e5, 1e5);
    r.number("T0_us", t0, 1e-6, 1e3);
    r.integer("n", p.n, 1, 20);
    r.number("lambda", p.lambda, 1e-3, 1e3);
    r.number("t1_us", t1, -1e3, 1e3);
    r.number("t2_us", t2, -1e3, 1e3);
    p.omega0 = mhz(omega);
    p.delta = mhz(delta);
    p.T0 = microseconds(t0);
    p.t1 = microseconds(t1);
    p.t2 = microseconds(t2);
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> diagnostics)
    : std::runtime_error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {}

GateProgram make_gate(const GateSpec& spec, const GateConfig& config) {
    if (spec.name == "identity") {
        GateProgram g = single_qubit_rotation(0.0, 0.0, config);
        g.name = "identity";
        return g;
    }
    if (spec.name == "empty") {
        return identity_gate();
    }
    if (spec.name == "rotation") {
        return single_qubit_rotation(spec.theta, spec.phi, config);
    }
    if (spec.name == "hadamard") {
        return hadamard(config);
    }
    if (spec.name == "not_x") {
        return not_x(config);
    }
    if (spec.name == "not_y") {
        return not_y(config);
    }
    if (spec.name == "not_z") {
        return not_z(config);
    }
    throw std::invalid_argument("unknown gate '" + spec.name + "'");
}

std::vector<PresetInfo> list_presets() {
    std::vector<PresetInfo> out;
    for (const auto& p : presets()) {
        out.push_back({p.name, p.description, p.budget});
    }
    return out;
}

bool is_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (name == p.name) {
            return true;
        }
    }
    return false;
}

nlohmann::json preset_json(const std::string& name) {
    for (const auto& p : presets()) {
        if (name == p.name) {
            return p.doc;
        }
    }
    throw ValidationError({"unknown preset '" + name + "'"});
}

nlohmann::json load_config_document(const std::string& preset_or_path) {
    if (is_preset(preset_or_path)) {
        return json{{"preset", preset_or_path}};
    }
    std::ifstream in(preset_or_path);
    if (!in) {
        throw ValidationError({"'" + preset_or_path + "' is neither a preset nor a readable file"});
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError({preset_or_path + ": " + e.what()});
    }
}

std::vector<std::string> validate_config(const nlohmann::json& doc) {
    try {
        parse_config(doc);
    } catch (const ValidationError& e) {
        return e.diagnostics();
    }
    return {};
}

ExperimentConfig parse_config(const nlohmann::json& input) {
    std::vector<std::string> diag;
    const json doc = merged_document(input, diag);
    if (!diag.empty()) {
        throw ValidationError(diag);
    }
    ExperimentConfig c;
    c.source = doc;
    {
        Reader r(doc, "", diag);
        if (!r.has("experiment")) {
            r.error("experiment", "missing");
        } else {
            r.choice("experiment", c.experiment, kExperimentKinds);
        }
        r.text("description", c.description);
        r.number("budget_seconds", c.budget_seconds, 0.0, 1e7);
        r.number("tol", c.tol, kMinTol, kMaxTol);
        r.integer("threads", c.threads, 1, 256);

        std::string pulses = "long";
        r.choice("pulses", pulses, {"long", "short"});
        c.gate = pulses == "short" ? GateConfig::short_pulse() : GateConfig::long_pulse();
        if (r.has("stirap")) {
            Reader s(r.raw("stirap"), "stirap", diag);
            read_stirap(s, c.gate.stirap);
        }
        if (r.has("gate")) {
            Reader g(r.raw("gate"), "gate", diag);
            double rabi = c.gate.rabi_frequency / mhz(1.0), mw = c.gate.microwave_frequency / mhz(1.0);
            double gap = c.gate.gap / microseconds(1.0), span = c.gate.blockade_span / microseconds(1.0);
            g.number("rabi_mhz", rabi, 1e-3, 1e5);
            g.number("microwave_mhz", mw, 1e-3, 1e5);
            g.number("gap_us", gap, 0.0, 1e3);
            g.number("blockade_span_us", span, 0.0, 1e3);
            std::string layout = c.gate.layout == GateLayout::compact ? "compact" : "sequential";
            g.choice("layout", layout, {"sequential", "compact"});
            c.gate.rabi_frequency = mhz(rabi);
            c.gate.microwave_frequency = mhz(mw);
            c.gate.gap = microseconds(gap);
            c.gate.blockade_span = microseconds(span);
            c.gate.layout = layout == "compact" ? GateLayout::compact : GateLayout::sequential;
        }
        try {
            c.gate.validate();
        } catch (const std::invalid_argument& e) {
            r.error("gate", e.what());
        }
        if (r.has("gaussian")) {
            Reader g(r.raw("gaussian"), "gaussian", diag);
            double omega = c.gaussian.omega0 / mhz(1.0), delta = c.gaussian.delta / mhz(1.0);
            double tau = c.gaussian.tau / microseconds(1.0), t1 = c.gaussian.t1 / microseconds(1.0),
                   t2 = c.gaussian.t2 / microseconds(1.0);
            g.number("omega0_mhz", omega, 0.0, 1e5);
            g.number("delta_mhz", delta, -1e5, 1e5);
            g.number("tau_us", tau, 1e-6, 1e3);
            g.number("t1_us", t1, -1e3, 1e3);
            g.number("t2_us", t2, -1e3, 1e3);
            c.gaussian.omega0 = mhz(omega);
            c.gaussian.delta = mhz(delta);
            c.gaussian.tau = microseconds(tau);
            c.gaussian.t1 = microseconds(t1);
            c.gaussian.t2 = microseconds(t2);
        }
        if (r.has("decay")) {
            Reader d(r.raw("decay"), "decay", diag);
            double ge = 0.0, gr = 0.0;
            d.number("gamma_e_mhz", ge, 0.0, 1e4);
            d.number("gamma_r_khz", gr, 0.0, 1e7);
            std::string target = "sink";
            d.choice("target", target, {"sink", "ground"});
            c.lindblad.gamma_e = mhz(ge);
            c.lindblad.gamma_r = khz(gr);
            c.lindblad.target = target == "ground" ? DecayTarget::ground : DecayTarget::sink;
        }
        if (r.has("tomography")) {
            Reader t(r.raw("tomography"), "tomography", diag);
            std::string analysis = "ideal", prep = "physical", readout = "collective";
            t.choice("analysis", analysis, {"ideal", "physical"});
            t.choice("preparation", prep, {"ideal", "physical"});
            t.choice("readout", readout, {"collective", "counting"});
            t.integer("shots", c.tomography.shots, 0, 1000000000);
            int seed = 1;
            t.integer("seed", seed, 0, 2147483647);
            c.tomography.physical_analysis = analysis == "physical";
            c.tomography.ideal_preparation = prep == "ideal";
            c.tomography.readout = readout == "counting" ? Readout::counting : Readout::collective;
            c.tomography.seed = static_cast<std::uint64_t>(seed);
            if (c.tomography.readout == Readout::counting && !c.tomography.physical_analysis) {
                t.error("readout", "counting readout needs analysis = physical");
            }
        }
        if (r.has("mle")) {
            Reader m(r.raw("mle"), "mle", diag);
            m.boolean("enabled", c.mle);
            std::string mode = constraint_mode_name(c.constraint_mode);
            m.choice("constraint_mode", mode, {"full", "diagonal_only"});
            c.constraint_mode = parse_constraint_mode(mode);
        }
        if (r.has("atoms")) {
            const json& a = r.raw("atoms");
            if (!a.is_array() || a.empty()) {
                r.error("atoms", "must be a non-empty array");
            } else {
                for (const auto& x : a) {
                    if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > BlockadedBasis::kDefaultMaxAtoms) {
                        r.error("atoms", "entries must be integers in [1, " + std::to_string(BlockadedBasis::kDefaultMaxAtoms) + "]");
                        break;
                    }
                    c.atoms.push_back(x.get<int>());
                }
            }
        }
        if (r.has("ensembles")) {
            const json& a = r.raw("ensembles");
            bool ok = a.is_array() && !a.empty();
            for (const auto& e : a) {
                ok = ok && e.is_array() && e.size() == 2;
                int total = 0;
                std::vector<int> sizes;
                for (const auto& x : e) {
                    ok = ok && x.is_number_integer() && x.get<int>() >= 1;
                    if (ok) {
                        total += x.get<int>();
                        sizes.push_back(x.get<int>());
                    }
                }
                ok = ok && total <= BlockadedBasis::kDefaultMaxAtoms;
                if (!ok) {
                    break;
                }
                c.ensembles.push_back(sizes);
            }
            if (!ok) {
                r.error("ensembles", "must be a non-empty array of [n_control, n_target] pairs with at most " +
                                         std::to_string(BlockadedBasis::kDefaultMaxAtoms) + " atoms in total");
            }
        }
        if (r.has("gates")) {
            const json& a = r.raw("gates");
            if (!a.is_array() || a.empty()) {
                r.error("gates", "must be a non-empty array");
            } else {
                for (std::size_t k = 0; k < a.size(); ++k) {
                    GateSpec g;
                    if (a[k].is_string()) {
                        g.name = a[k].get<std::string>();
                    } else {
                        Reader gr(a[k], "gates[" + std::to_string(k) + "]", diag);
                        gr.text("name", g.name);
                        gr.number("theta", g.theta, -100.0, 100.0);
                        gr.number("phi", g.phi, -100.0, 100.0);
                    }
                    if (std::find(kGateNames.begin(), kGateNames.end(), g.name) == kGateNames.end()) {
                        r.error("gates", "unknown gate '" + g.name + "'");
                    } else {
                        c.gates.push_back(g);
                    }
                }
            }
        }
        if (r.has("bell")) {
            const json& a = r.raw("bell");
            if (!a.is_array() || a.empty()) {
                r.error("bell", "must be a non-empty array");
            } else {
                for (const auto& x : a) {
                    try {
                        c.bells.push_back(parse_bell(x.get<std::string>()));
                    } catch (const std::exception&) {
                        r.error("bell", "entries must be one of phip, phim, psip, psim");
                        break;
                    }
                }
            }
        }
        if (r.has("pulse_sets")) {
            const json& a = r.raw("pulse_sets");
            if (!a.is_array() || a.empty()) {
                r.error("pulse_sets", "must be a non-empty array");
            } else {
                for (const auto& x : a) {
                    if (!x.is_string() || (x != "long" && x != "short")) {
                        r.error("pulse_sets", "entries must be 'long' or 'short'");
                        break;
                    }
                    c.pulse_sets.push_back(x.get<std::string>());
                }
            }
        }
        r.boolean("variants", c.variants);
    }

    const std::string& k = c.experiment;
    auto need = [&](bool ok, const std::string& key) {
        if (!ok) {
            diag.push_back(key + ": required by experiment '" + k + "'");
        }
    };
    if (k == "stirap_error_scan" || k == "phase_check" || k == "single_qubit_chi" || k == "decay_scan" ||
        k == "hadamard_decay") {
        need(!c.atoms.empty(), "atoms");
    }
    if (k == "single_qubit_chi") {
        need(!c.gates.empty(), "gates");
    }
    if (k == "bell_states") {
        need(!c.ensembles.empty(), "ensembles");
        need(!c.bells.empty(), "bell");
    }
    if (k == "cnot_chi") {
        need(!c.ensembles.empty(), "ensembles");
    }
    if (k == "decay_scan") {
        need(!c.pulse_sets.empty(), "pulse_sets");
        need(c.lindblad.active(), "decay");
    }
    if (!diag.empty()) {
        throw ValidationError(diag);
    }
    return c;
}

}  // namespace superatom
