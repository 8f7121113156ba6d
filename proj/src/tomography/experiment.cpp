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

#include "superatom/tomography/experiment.hpp"

#include <random>

#include "superatom/core/parallel.hpp"
#include "superatom/core/states.hpp"

namespace superatom {

namespace {

std::string join_settings(const std::vector<Analysis>& settings) {
    std::string s;
    for (std::size_t q = 0; q < settings.size(); ++q) {
        if (q) {
            s += ' ';
        }
        s += analysis_name(settings[q]);
    }
    return s;
}

StateVector ideal_prep_ket(BasisPrep p) {
    const double s = 1.0 / std::sqrt(2.0);
    StateVector v(2);
    switch (p) {
        case BasisPrep::H:
            v << 1, 0;
            break;
        case BasisPrep::V:
            v << 0, 1;
            break;
        case BasisPrep::D:
            v << s, s;
            break;
        case BasisPrep::R:
            v << s, cplx(0.0, s);
            break;
    }
    return v;
}

}  // namespace

GateProgram analysis_program(Analysis a, const GateConfig& config, int qubit, int n_qubits) {
    switch (a) {
        case Analysis::I:
            return identity_gate(qubit, n_qubits);
        case Analysis::Ry:
            return single_qubit_rotation(kPi / 2, kPi / 2, config, qubit, n_qubits);
        case Analysis::Rx:
            return single_qubit_rotation(-kPi / 2, 0.0, config, qubit, n_qubits);
    }
    return identity_gate(qubit, n_qubits);
}

Populations sample_populations(const Populations& exact, int shots, std::uint64_t seed, std::uint64_t stream) {
    if (shots <= 0) {
        return exact;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    Populations out(exact.size());
    int remaining = shots;
    double remaining_p = 1.0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
        const double p = remaining_p > 0 ? std::clamp(exact[k] / remaining_p, 0.0, 1.0) : 0.0;
        const int count = remaining > 0 ? std::binomial_distribution<int>(remaining, p)(rng) : 0;
        out[k] = static_cast<double>(count) / shots;
        remaining -= count;
        remaining_p -= exact[k];
    }
    return out;
}

SimulatedTomography::SimulatedTomography(const GateExecutor& executor, TomographyOptions options)
    : executor_(executor), options_(options), n_qubits_(executor.basis().n_ensembles()) {
    if (n_qubits_ != 1 && n_qubits_ != 2) {
        throw std::invalid_argument("tomography supports one or two qubits");
    }
    if (options_.readout == Readout::counting && !options_.physical_analysis) {
        throw std::invalid_argument("counting readout needs physically simulated analysis rotations");
    }
    if (options_.shots < 0) {
        throw std::invalid_argument("shots must be nonnegative");
    }
}

SimulatedTomography::Register SimulatedTomography::initial(const StateVector& logical) const {
    Register r;
    r.psi = executor_.frame().embed(logical);
    if (executor_.lindblad().has_jumps()) {
        r.rho = r.psi * r.psi.adjoint();
        r.psi.resize(0);
        r.mixed = true;
    }
    return r;
}

SimulatedTomography::Register SimulatedTomography::evolve(const GateProgram& program, const Register& in) const {
    Register out;
    out.mixed = in.mixed;
    if (in.mixed) {
        out.rho = executor_.run(program, in.rho);
    } else {
        out.psi = executor_.run(program, in.psi);
    }
    return out;
}

SimulatedTomography::Register SimulatedTomography::prepared_output(const std::vector<BasisPrep>& preps,
                                                                   const GateProgram& gate) const {
    if (static_cast<int>(preps.size()) != n_qubits_) {
        throw std::invalid_argument("one preparation per qubit is required");
    }
    if (options_.ideal_preparation) {
        StateVector in = ideal_prep_ket(preps[0]);
        for (int q = 1; q < n_qubits_; ++q) {
            in = kron(in, ideal_prep_ket(preps[static_cast<std::size_t>(q)]));
        }
        return evolve(gate, initial(in));
    }
    GateProgram program = identity_gate(0, n_qubits_);
    for (int q = 0; q < n_qubits_; ++q) {
        program = then(program, prepare_basis_state(preps[static_cast<std::size_t>(q)], executor_.config(), q, n_qubits_));
    }
    program = then(program, gate);
    const auto dim = static_cast<Eigen::Index>(executor_.frame().logical_dim());
    return evolve(program, initial(StateVector::Unit(dim, 0)));
}

Populations SimulatedTomography::readout(const Register& physical, const std::vector<Analysis>& settings,
                                         std::uint64_t stream) const {
    Register reg = physical;
    std::vector<Analysis> remaining = settings;
    if (options_.physical_analysis) {
        for (int q = 0; q < n_qubits_; ++q) {
            reg = evolve(analysis_program(settings[static_cast<std::size_t>(q)], executor_.config(), q, n_qubits_), reg);
            remaining[static_cast<std::size_t>(q)] = Analysis::I;
        }
    }
    if (options_.readout == Readout::counting) {
        const CMatrix rho = reg.mixed ? reg.rho : CMatrix(reg.psi * reg.psi.adjoint());
        return sample_populations(counting_populations(rho, executor_.basis()), options_.shots, options_.seed, stream);
    }
    CMatrix block;
    if (reg.mixed) {
        block = executor_.frame().project(reg.rho);
    } else {
        const StateVector a = executor_.frame().project(reg.psi);
        block = a * a.adjoint();
    }
    return sample_populations(ideal_readout(block, remaining), options_.shots, options_.seed, stream);
}

CMatrix SimulatedTomography::reconstruct(const Register& physical, const std::string& label, std::uint64_t stream,
                                         std::vector<TomographyRow>* rows) const {
    auto measure = [&](std::vector<Analysis> settings) {
        std::uint64_t setting_index = 0;
        for (Analysis a : settings) {
            setting_index = 3 * setting_index + static_cast<std::uint64_t>(a);
        }
        Populations p = readout(physical, settings, 16 * stream + setting_index);
        if (rows) {
            rows->push_back({label, join_settings(settings), p});
        }
        return p;
    };
    if (n_qubits_ == 1) {
        return state_tomo_1q([&](Analysis a) { return measure({a}); });
    }
    return state_tomo_2q([&](Analysis a, Analysis b) { return measure({a, b}); });
}

CMatrix SimulatedTomography::state(const GateProgram& program, TomographyRecord* record) const {
    const auto dim = static_cast<Eigen::Index>(executor_.frame().logical_dim());
    const Register out = evolve(program, initial(StateVector::Unit(dim, 0)));
    std::vector<TomographyRow> rows;
    const CMatrix rho = reconstruct(out, "-", 0, record ? &rows : nullptr);
    if (record) {
        record->n_qubits = n_qubits_;
        record->rows.insert(record->rows.end(), rows.begin(), rows.end());
    }
    return rho;
}

CMatrix SimulatedTomography::process(const GateProgram& gate, TomographyRecord* record) const {
    const std::size_t n_inputs = n_qubits_ == 1 ? 4 : 16;
    std::vector<CMatrix> outputs(n_inputs);
    std::vector<std::vector<TomographyRow>> rows(n_inputs);
    parallel_for(n_inputs, options_.threads, [&](std::size_t k) {
        std::vector<BasisPrep> preps;
        std::string label;
        if (n_qubits_ == 1) {
            preps = {kBasisPreps[k]};
        } else {
            preps = {kBasisPreps[k / 4], kBasisPreps[k % 4]};
        }
        for (BasisPrep p : preps) {
            label += prep_name(p);
        }
        outputs[k] = reconstruct(prepared_output(preps, gate), label, k + 1, record ? &rows[k] : nullptr);
    });
    if (record) {
        record->n_qubits = n_qubits_;
        for (const auto& r : rows) {
            record->rows.insert(record->rows.end(), r.begin(), r.end());
        }
    }
    if (n_qubits_ == 1) {
        return chi_from_outputs_1q({outputs[0], outputs[1], outputs[2], outputs[3]});
    }
    std::array<CMatrix, 16> out;
    std::copy(outputs.begin(), outputs.end(), out.begin());
    return chi_from_outputs_2q(out);
}

}  // namespace superatom
