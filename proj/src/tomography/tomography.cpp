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

#include "superatom/tomography/tomography.hpp"

#include <cmath>

#include "superatom/core/states.hpp"

namespace superatom {

namespace {

const cplx kI(0.0, 1.0);

void check_matrix(const CMatrix& m, Eigen::Index n, const char* what) {
    if (m.rows() != n || m.cols() != n) {
        throw InvalidRecord(std::string(what) + " has the wrong dimension");
    }
    if (!m.allFinite()) {
        throw InvalidRecord(std::string(what) + " has non-finite entries");
    }
}

/// Sign of outcome bit b when reading sigma_i: +1 for the identity, (-1)^b otherwise.
double outcome_sign(int pauli_index, int bit) { return (pauli_index == 1 || bit == 0) ? 1.0 : -1.0; }

/// Lambda of the block formula, in the basis {I, X, -iY, Z}.
CMatrix block_lambda() {
    CMatrix l = CMatrix::Zero(4, 4);
    l.topLeftCorner(2, 2) = CMatrix::Identity(2, 2);
    l.topRightCorner(2, 2) = pauli(2);
    l.bottomLeftCorner(2, 2) = pauli(2);
    l.bottomRightCorner(2, 2) = -CMatrix::Identity(2, 2);
    return 0.5 * l;
}

/// Per-element factor taking {I, X, -iY, Z} coefficients to {I, X, Y, Z}.
const std::array<cplx, 4> kBasisFactor{1.0, 1.0, cplx(0.0, -1.0), 1.0};

CMatrix to_sigma_basis(const CMatrix& chi, int n_qubits) {
    const auto d = chi.rows();
    Eigen::VectorXcd c(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        c[k] = n_qubits == 1 ? kBasisFactor[static_cast<std::size_t>(k)]
                             : kBasisFactor[static_cast<std::size_t>(k / 4)] * kBasisFactor[static_cast<std::size_t>(k % 4)];
    }
    return c.asDiagonal() * chi * c.conjugate().asDiagonal();
}

}  // namespace

std::string analysis_name(Analysis a) {
    switch (a) {
        case Analysis::I:
            return "I";
        case Analysis::Ry:
            return "Ry(-pi/2)";
        case Analysis::Rx:
            return "Rx(pi/2)";
    }
    return "?";
}

CMatrix analysis_unitary(Analysis a) {
    switch (a) {
        case Analysis::I:
            return CMatrix::Identity(2, 2);
        case Analysis::Ry:
            return rotation_y(-kPi / 2);
        case Analysis::Rx:
            return rotation_x(kPi / 2);
    }
    return CMatrix::Identity(2, 2);
}

Analysis analysis_for_pauli(int index) {
    switch (index) {
        case 1:
        case 4:
            return Analysis::I;
        case 2:
            return Analysis::Ry;
        case 3:
            return Analysis::Rx;
        default:
            throw std::invalid_argument("Pauli index must be 1..4");
    }
}

void check_populations(const Populations& p, std::size_t expected_size) {
    if (p.size() != expected_size) {
        throw InvalidRecord("population row has " + std::to_string(p.size()) + " entries, expected " +
                            std::to_string(expected_size));
    }
    double total = 0.0;
    for (double v : p) {
        if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
            throw InvalidRecord("population outside [0, 1]");
        }
        total += v;
    }
    if (total > 1.0 + 1e-9) {
        throw InvalidRecord("populations sum above 1");
    }
}

DensityMatrix state_tomo_1q(const Measure1q& measure) {
    std::array<double, 5> lambda{};
    const Populations id = measure(Analysis::I);
    check_populations(id, 2);
    lambda[1] = id[0] + id[1];
    lambda[4] = id[0] - id[1];
    const Populations ry = measure(Analysis::Ry);
    check_populations(ry, 2);
    lambda[2] = ry[0] - ry[1];
    const Populations rx = measure(Analysis::Rx);
    check_populations(rx, 2);
    lambda[3] = rx[0] - rx[1];
    CMatrix rho = CMatrix::Zero(2, 2);
    for (int i = 1; i <= 4; ++i) {
        rho += 0.5 * lambda[static_cast<std::size_t>(i)] * pauli(i);
    }
    return rho;
}

DensityMatrix state_tomo_2q(const Measure2q& measure) {
    // One readout per distinct setting pair.
    std::array<std::array<Populations, 3>, 3> cache;
    auto readout = [&](Analysis a, Analysis b) -> const Populations& {
        Populations& slot = cache[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (slot.empty()) {
            slot = measure(a, b);
            check_populations(slot, 4);
        }
        return slot;
    };
    CMatrix rho = CMatrix::Zero(4, 4);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            const Populations& p = readout(analysis_for_pauli(i), analysis_for_pauli(j));
            double lambda = 0.0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    lambda += outcome_sign(i, a) * outcome_sign(j, b) * p[static_cast<std::size_t>(2 * a + b)];
                }
            }
            rho += 0.25 * lambda * kron(pauli(i), pauli(j));
        }
    }
    return rho;
}

Populations ideal_readout(const CMatrix& rho, const std::vector<Analysis>& settings) {
    CMatrix u = analysis_unitary(settings.at(0));
    for (std::size_t q = 1; q < settings.size(); ++q) {
        u = kron(u, analysis_unitary(settings[q]));
    }
    if (u.rows() != rho.rows()) {
        throw std::invalid_argument("one analysis setting per qubit is required");
    }
    const CMatrix out = u * rho * u.adjoint();
    Populations p(static_cast<std::size_t>(out.rows()));
    for (Eigen::Index k = 0; k < out.rows(); ++k) {
        p[static_cast<std::size_t>(k)] = std::max(0.0, out(k, k).real());
    }
    return p;
}

CMatrix basis_state_density(BasisPrep which) {
    CMatrix r(2, 2);
    switch (which) {
        case BasisPrep::H:
            r << 1, 0, 0, 0;
            break;
        case BasisPrep::V:
            r << 0, 0, 0, 1;
            break;
        case BasisPrep::D:
            r << 0.5, 0.5, 0.5, 0.5;
            break;
        case BasisPrep::R:
            r << 0.5, -0.5 * kI, 0.5 * kI, 0.5;
            break;
    }
    return r;
}

const CMatrix& preparation_transform_1q() {
    static const CMatrix m = [] {
        const cplx a(0.5, 0.5);
        CMatrix t(4, 4);
        t << 1, 0, 0, 0,
             -a, -a, 1, kI,
             -std::conj(a), -std::conj(a), 1, -kI,
             0, 1, 0, 0;
        return t;
    }();
    return m;
}

const CMatrix& preparation_transform_2q() {
    static const CMatrix m = [] {
        const CMatrix& s = preparation_transform_1q();
        CMatrix t = CMatrix::Zero(16, 16);
        // |i><j| with i = 2 a + b, j = 2 a' + b' factors as |a><a'| (x) |b><b'|.
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const int ka = 2 * (i / 2) + j / 2;
                const int kb = 2 * (i % 2) + j % 2;
                for (int A = 0; A < 4; ++A) {
                    for (int B = 0; B < 4; ++B) {
                        t(4 * i + j, 4 * A + B) = s(ka, A) * s(kb, B);
                    }
                }
            }
        }
        return t;
    }();
    return m;
}

CMatrix pauli_basis_operator(int k, int n_qubits) {
    if (n_qubits == 1 && k >= 0 && k < 4) {
        return pauli(k + 1);
    }
    if (n_qubits == 2 && k >= 0 && k < 16) {
        return kron(pauli(k / 4 + 1), pauli(k % 4 + 1));
    }
    throw std::invalid_argument("operator basis index out of range");
}

CMatrix chi_from_outputs_1q(const std::array<CMatrix, 4>& outputs) {
    for (const CMatrix& m : outputs) {
        check_matrix(m, 2, "output density matrix");
    }
    const CMatrix& t = preparation_transform_1q();
    std::array<CMatrix, 4> unit;
    for (int k = 0; k < 4; ++k) {
        unit[static_cast<std::size_t>(k)] = CMatrix::Zero(2, 2);
        for (int A = 0; A < 4; ++A) {
            unit[static_cast<std::size_t>(k)] += t(k, A) * outputs[static_cast<std::size_t>(A)];
        }
    }
    CMatrix block(4, 4);
    block.topLeftCorner(2, 2) = unit[0];
    block.topRightCorner(2, 2) = unit[1];
    block.bottomLeftCorner(2, 2) = unit[2];
    block.bottomRightCorner(2, 2) = unit[3];
    const CMatrix l = block_lambda();
    return to_sigma_basis(l * block * l, 1);
}

CMatrix chi_from_outputs_2q(const std::array<CMatrix, 16>& outputs) {
    for (const CMatrix& m : outputs) {
        check_matrix(m, 4, "output density matrix");
    }
    const CMatrix& t = preparation_transform_2q();
    CMatrix block = CMatrix::Zero(16, 16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CMatrix u = CMatrix::Zero(4, 4);
            for (int k = 0; k < 16; ++k) {
                u += t(4 * i + j, k) * outputs[static_cast<std::size_t>(k)];
            }
            block.block(4 * i, 4 * j, 4, 4) = u;
        }
    }
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    const CMatrix p = kron(CMatrix::Identity(2, 2), kron(m, CMatrix::Identity(2, 2)));
    const CMatrix l1 = block_lambda();
    const CMatrix k = p * kron(l1, l1);
    return to_sigma_basis(k.transpose() * block * k, 2);
}

CMatrix process_tomo_1q(const ProcessOutputs1q& outputs) {
    std::array<CMatrix, 4> out;
    for (std::size_t a = 0; a < 4; ++a) {
        out[a] = outputs(kBasisPreps[a]);
    }
    return chi_from_outputs_1q(out);
}

CMatrix process_tomo_2q(const ProcessOutputs2q& outputs) {
    std::array<CMatrix, 16> out;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            out[4 * a + b] = outputs(kBasisPreps[a], kBasisPreps[b]);
        }
    }
    return chi_from_outputs_2q(out);
}

CMatrix ideal_chi(const CMatrix& u) {
    if (!((u.rows() == 2 || u.rows() == 4) && u.cols() == u.rows())) {
        throw std::invalid_argument("ideal_chi expects a 2x2 or 4x4 unitary");
    }
    if (!u.allFinite() || (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm() > 1e-10) {
        throw std::invalid_argument("ideal_chi input is not unitary");
    }
    if (u.rows() == 2) {
        return process_tomo_1q([&](BasisPrep a) { return CMatrix(u * basis_state_density(a) * u.adjoint()); });
    }
    return process_tomo_2q([&](BasisPrep a, BasisPrep b) {
        const CMatrix rho = kron(basis_state_density(a), basis_state_density(b));
        return CMatrix(u * rho * u.adjoint());
    });
}

CMatrix apply_chi(const CMatrix& chi, const CMatrix& rho) {
    const int n_qubits = chi.rows() == 4 ? 1 : 2;
    if (!(chi.rows() == 4 || chi.rows() == 16) || rho.rows() != (n_qubits == 1 ? 2 : 4)) {
        throw std::invalid_argument("apply_chi dimension mismatch");
    }
    std::vector<CMatrix> e;
    for (int k = 0; k < chi.rows(); ++k) {
        e.push_back(pauli_basis_operator(k, n_qubits));
    }
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (int i = 0; i < chi.rows(); ++i) {
        const CMatrix left = e[static_cast<std::size_t>(i)] * rho;
        for (int j = 0; j < chi.cols(); ++j) {
            if (chi(i, j) != cplx(0.0)) {
                out += chi(i, j) * left * e[static_cast<std::size_t>(j)].adjoint();
            }
        }
    }
    return out;
}

double fidelity(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("fidelity needs matrices of equal dimensions");
    }
    const Eigen::JacobiSVD<CMatrix> svd(a - b);
    return 1.0 - 0.5 * svd.singularValues().sum();
}

DensityMatrix bell_state_density(BellState which) {
    StateVector v = StateVector::Zero(4);
    const double s = 1.0 / std::sqrt(2.0);
    switch (which) {
        case BellState::phi_plus:
            v[0] = s;
            v[3] = s;
            break;
        case BellState::phi_minus:
            v[0] = s;
            v[3] = -s;
            break;
        case BellState::psi_plus:
            v[1] = s;
            v[2] = s;
            break;
        case BellState::psi_minus:
            v[1] = s;
            v[2] = -s;
            break;
    }
    return v * v.adjoint();
}

}  // namespace superatom
