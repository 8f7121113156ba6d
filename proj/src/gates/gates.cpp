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

#include "superatom/gates/gates.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace superatom {

namespace {

std::string qlabel(int qubit, const char* what) { return "q" + std::to_string(qubit) + ":" + what; }

void check_register(int qubit, int n_qubits) {
    if (n_qubits < 1 || n_qubits > 2 || qubit < 0 || qubit >= n_qubits) {
        throw std::invalid_argument("gate programs address one of at most two qubits");
    }
}

/// Pulses 1-5 on one ensemble; pulse 5 has area |pulse5_theta|.
PulseSchedule five_pulse_block(const GateConfig& c, int qubit, double theta, double phi, double pulse5_theta) {
    c.validate();
    const double omega = c.rabi_frequency;
    Segment p1 = rabi_segment(-kPi, 0.0, c.blockade, omega, 0.0, qubit, qlabel(qubit, "pulse1"));
    Segment p5 = rabi_segment(pulse5_theta, 0.0, c.blockade, omega, 0.0, qubit, qlabel(qubit, "pulse5"));
    const bool has_p3 = theta != 0.0;
    Segment p3;
    if (has_p3) {
        p3 = rabi_segment(theta, phi, c.rydberg, c.microwave_frequency, 0.0, qubit, qlabel(qubit, "pulse3"));
    }
    PulseSchedule out;
    if (c.layout == GateLayout::sequential) {
        double t = 0.0;
        auto place = [&](Segment s) {
            const double d = s.duration();
            s.start = t;
            s.end = t + d;
            t = s.end + c.gap;
            out.add(std::move(s));
        };
        place(p1);
        Segment up = optimized_stirap_segment(c.stirap, StirapHalf::excitation, t + 2.0 * c.stirap.T0, c.stirap.delta,
                                              qubit, c.stirap_path);
        up.label = qlabel(qubit, "pulse2");
        up.start = t;
        t = up.end + c.gap;
        out.add(std::move(up));
        if (has_p3) {
            place(p3);
        }
        Segment down = optimized_stirap_segment(c.stirap, StirapHalf::deexcitation, t + 2.0 * c.stirap.T0,
                                                -c.stirap.delta, qubit, c.stirap_path);
        down.label = qlabel(qubit, "pulse4");
        down.start = t;
        t = down.end + c.gap;
        out.add(std::move(down));
        place(p5);
        return out;
    }

    // Compact: everything around t = 0, then shifted to start at zero.
    const double half_span = 0.5 * c.blockade_span;
    auto at = [](Segment s, double start) {
        const double d = s.duration();
        s.start = start;
        s.end = start + d;
        s.simultaneous = true;
        return s;
    };
    PulseSchedule centred;
    centred.add(at(p1, -half_span - p1.duration()));
    Segment up = optimized_stirap_segment(c.stirap, StirapHalf::excitation, c.stirap.t1, c.stirap.delta, qubit,
                                          c.stirap_path);
    up.label = qlabel(qubit, "pulse2");
    up.simultaneous = true;
    centred.add(std::move(up));
    if (has_p3) {
        centred.add(at(p3, -0.5 * p3.duration()));
    }
    Segment down = optimized_stirap_segment(c.stirap, StirapHalf::deexcitation, c.stirap.t2, -c.stirap.delta, qubit,
                                            c.stirap_path);
    down.label = qlabel(qubit, "pulse4");
    down.simultaneous = true;
    centred.add(std::move(down));
    centred.add(at(p5, half_span));
    out.append(centred, -centred.begin());
    return out;
}

PulseSchedule single_pulse(const Segment& s) {
    PulseSchedule out;
    Segment t = s;
    const double d = t.duration();
    t.start = 0.0;
    t.end = d;
    out.add(std::move(t));
    return out;
}

}  // namespace

void GateConfig::validate() const {
    stirap.validate();
    if (!(rabi_frequency > 0.0) || !(microwave_frequency > 0.0)) {
        throw std::invalid_argument("gate Rabi frequencies must be positive");
    }
    if (!(gap >= 0.0) || !(blockade_span >= 0.0)) {
        throw std::invalid_argument("gate timings must be nonnegative");
    }
    if (blockade.lower == blockade.upper || rydberg.lower == rydberg.upper) {
        throw std::invalid_argument("gate transitions must join distinct levels");
    }
}

GateConfig GateConfig::long_pulse() { return GateConfig{}; }

GateConfig GateConfig::short_pulse() {
    GateConfig c;
    c.stirap = StirapParams::short_pulse();
    c.layout = GateLayout::compact;
    c.blockade_span = nanoseconds(600.0);
    return c;
}

GateProgram then(const GateProgram& first, const GateProgram& second) {
    if (first.n_qubits != second.n_qubits) {
        throw std::invalid_argument("cannot chain programs on registers of different size");
    }
    GateProgram out;
    out.name = first.name + "+" + second.name;
    out.n_qubits = first.n_qubits;
    out.schedule = first.schedule;
    out.schedule.append(second.schedule, first.duration());
    out.ideal = second.ideal * first.ideal;
    return out;
}

CMatrix embed_unitary(const CMatrix& u, int qubit, int n_qubits) {
    check_register(qubit, n_qubits);
    if (n_qubits == 1) {
        return u;
    }
    const CMatrix id = CMatrix::Identity(2, 2);
    return qubit == 0 ? kron(u, id) : kron(id, u);
}

GateProgram single_qubit_rotation(double theta, double phi, const GateConfig& config, int qubit, int n_qubits) {
    check_register(qubit, n_qubits);
    GateProgram g;
    g.name = "rotation";
    g.n_qubits = n_qubits;
    g.schedule = five_pulse_block(config, qubit, theta, phi, -3.0 * kPi);
    g.ideal = embed_unitary(rotation_matrix(theta, phi), qubit, n_qubits);
    return g;
}

GateProgram hadamard(const GateConfig& config, int qubit, int n_qubits) {
    check_register(qubit, n_qubits);
    GateProgram g;
    g.name = "hadamard";
    g.n_qubits = n_qubits;
    g.schedule = five_pulse_block(config, qubit, kPi / 2, kPi / 2, -kPi);
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    g.ideal = embed_unitary(h / std::sqrt(2.0), qubit, n_qubits);
    return g;
}

GateProgram not_x(const GateConfig& config, int qubit, int n_qubits) {
    GateProgram g = single_qubit_rotation(kPi, 0.0, config, qubit, n_qubits);
    g.name = "not_x";
    return g;
}

GateProgram not_y(const GateConfig& config, int qubit, int n_qubits) {
    GateProgram g = single_qubit_rotation(kPi, kPi / 2, config, qubit, n_qubits);
    g.name = "not_y";
    return g;
}

GateProgram not_z(const GateConfig& config, int qubit, int n_qubits) {
    check_register(qubit, n_qubits);
    config.validate();
    GateProgram g;
    g.name = "not_z";
    g.n_qubits = n_qubits;
    g.schedule = single_pulse(
        rabi_segment(-kTwoPi, 0.0, config.blockade, config.rabi_frequency, 0.0, qubit, qlabel(qubit, "pulse1")));
    g.ideal = embed_unitary(pauli(4), qubit, n_qubits);
    return g;
}

GateProgram identity_gate(int qubit, int n_qubits) {
    check_register(qubit, n_qubits);
    GateProgram g;
    g.name = "identity";
    g.n_qubits = n_qubits;
    g.ideal = CMatrix::Identity(1 << n_qubits, 1 << n_qubits);
    return g;
}

CMatrix cnot_type_matrix() {
    CMatrix u = CMatrix::Zero(4, 4);
    u(1, 0) = u(0, 1) = 1.0;
    u(2, 2) = u(3, 3) = 1.0;
    return u;
}

GateProgram cnot_type(const GateConfig& config) {
    config.validate();
    GateProgram g;
    g.name = "cnot_type";
    g.n_qubits = 2;
    const Segment p1 = rabi_segment(-kPi, 0.0, config.blockade, config.rabi_frequency, 0.0, 0, "q0:pulse1");
    const Segment p7 = rabi_segment(-kPi, kPi / 2, config.blockade, config.rabi_frequency, 0.0, 0, "q0:pulse7");
    g.schedule = single_pulse(p1);
    const PulseSchedule target = five_pulse_block(config, 1, kPi, 0.0, -3.0 * kPi);
    g.schedule.append(target, g.schedule.end() + config.gap);
    g.schedule.append(single_pulse(p7), g.schedule.end() + config.gap);
    g.ideal = cnot_type_matrix();
    return g;
}

GateProgram prepare_basis_state(BasisPrep which, const GateConfig& config, int qubit, int n_qubits) {
    GateProgram g;
    switch (which) {
        case BasisPrep::H:
            g = identity_gate(qubit, n_qubits);
            break;
        case BasisPrep::V:
            g = single_qubit_rotation(-kPi, kPi / 2, config, qubit, n_qubits);
            break;
        case BasisPrep::D:
            g = single_qubit_rotation(-kPi / 2, kPi / 2, config, qubit, n_qubits);
            break;
        case BasisPrep::R:
            g = single_qubit_rotation(kPi / 2, 0.0, config, qubit, n_qubits);
            break;
    }
    g.name = "prep_" + prep_name(which);
    return g;
}

GateProgram bell_program(BellState which, const GateConfig& config) {
    bool c1 = false;
    bool t1 = false;
    switch (which) {
        case BellState::psi_plus:
            break;
        case BellState::phi_plus:
            t1 = true;
            break;
        case BellState::psi_minus:
            c1 = true;
            break;
        case BellState::phi_minus:
            c1 = t1 = true;
            break;
    }
    GateProgram g = identity_gate(0, 2);
    if (c1) {
        g = then(g, prepare_basis_state(BasisPrep::V, config, 0, 2));
    }
    if (t1) {
        g = then(g, prepare_basis_state(BasisPrep::V, config, 1, 2));
    }
    g = then(g, hadamard(config, 0, 2));
    g = then(g, cnot_type(config));
    g.name = "bell_" + bell_name(which);
    return g;
}

std::string bell_name(BellState which) {
    switch (which) {
        case BellState::phi_plus:
            return "phip";
        case BellState::phi_minus:
            return "phim";
        case BellState::psi_plus:
            return "psip";
        case BellState::psi_minus:
            return "psim";
    }
    return "?";
}

BellState parse_bell(const std::string& name) {
    for (BellState b : {BellState::phi_plus, BellState::phi_minus, BellState::psi_plus, BellState::psi_minus}) {
        if (name == bell_name(b)) {
            return b;
        }
    }
    throw std::invalid_argument("unknown Bell state '" + name + "'");
}

std::string prep_name(BasisPrep which) {
    switch (which) {
        case BasisPrep::H:
            return "H";
        case BasisPrep::V:
            return "V";
        case BasisPrep::D:
            return "D";
        case BasisPrep::R:
            return "R";
    }
    return "?";
}

GateExecutor::GateExecutor(BlockadedBasis basis, GateConfig config, double tol, LindbladModel lindblad)
    : basis_(std::move(basis)), config_(std::move(config)), tol_(tol), lindblad_(lindblad) {
    config_.validate();
    lindblad_.validate();
    std::map<int, double> cache;
    std::vector<double> phases;
    for (int size : basis_.ensemble_sizes()) {
        auto it = cache.find(size);
        if (it == cache.end()) {
            it = cache.emplace(size, calibrate_frame_phase(config_, size, tol_)).first;
        }
        phases.push_back(it->second);
    }
    frame_ = std::make_unique<LogicalFrame>(basis_, phases);
}

double GateExecutor::calibrate_frame_phase(const GateConfig& config, int size, double tol) {
    const BlockadedBasis b = build_basis({size});
    const GateProgram g = single_qubit_rotation(kPi / 2, 0.0, config);
    const HamiltonianModel m(b, g.schedule);
    const StateVector out = propagate(collective_state(b, 0, Level::g0), m, {0.0, g.duration()}, tol);
    const StateVector bare = LogicalFrame(b).project(out);
    return std::arg(bare[1] / (cplx(0.0, 1.0) * bare[0]));
}

StateVector GateExecutor::run(const GateProgram& program, const StateVector& physical) const {
    if (program.schedule.empty()) {
        return physical;
    }
    const HamiltonianModel m(basis_, program.schedule);
    return propagate(physical, m, {0.0, program.duration()}, tol_, lindblad_);
}

CMatrix GateExecutor::run(const GateProgram& program, const CMatrix& physical) const {
    if (program.schedule.empty()) {
        return physical;
    }
    const HamiltonianModel m(basis_, program.schedule);
    return propagate_density(physical, m, {0.0, program.duration()}, tol_, lindblad_);
}

StateVector GateExecutor::run_logical(const GateProgram& program, const StateVector& logical_in) const {
    if (program.n_qubits != basis_.n_ensembles()) {
        throw std::invalid_argument("program register does not match the basis");
    }
    return frame_->project(run(program, frame_->embed(logical_in)));
}

CMatrix GateExecutor::run_logical_density(const GateProgram& program, const StateVector& logical_in) const {
    if (lindblad_.has_jumps()) {
        if (program.n_qubits != basis_.n_ensembles()) {
            throw std::invalid_argument("program register does not match the basis");
        }
        const StateVector in = frame_->embed(logical_in);
        return frame_->project(run(program, CMatrix(in * in.adjoint())));
    }
    const StateVector a = run_logical(program, logical_in);
    return a * a.adjoint();
}

}  // namespace superatom
