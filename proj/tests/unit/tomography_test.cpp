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

#include <gtest/gtest.h>

#include <random>

#include "superatom/core/states.hpp"
#include "superatom/tomography/tomography.hpp"

using namespace superatom;

namespace {

CMatrix random_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            z(i, j) = cplx(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    return qr.householderQ();
}

CMatrix random_density(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            z(i, j) = cplx(g(rng), g(rng));
        }
    }
    CMatrix r = z * z.adjoint();
    return r / r.trace();
}

// chi_mn = u_m conj(u_n) with u_k = Tr(E_k^dag U) / d.
CMatrix pauli_expansion_chi(const CMatrix& u) {
    const int n_qubits = u.rows() == 2 ? 1 : 2;
    const int m = n_qubits == 1 ? 4 : 16;
    Eigen::VectorXcd c(m);
    for (int k = 0; k < m; ++k) {
        c[k] = (pauli_basis_operator(k, n_qubits).adjoint() * u).trace() / static_cast<double>(u.rows());
    }
    return c * c.adjoint();
}

}  // namespace

TEST(tomography, preparation_transform_recovers_matrix_units) {
    const CMatrix& t = preparation_transform_1q();
    for (int k = 0; k < 4; ++k) {
        CMatrix unit = CMatrix::Zero(2, 2);
        for (int a = 0; a < 4; ++a) {
            unit += t(k, a) * basis_state_density(kBasisPreps[static_cast<std::size_t>(a)]);
        }
        CMatrix expected = CMatrix::Zero(2, 2);
        expected(k / 2, k % 2) = 1.0;
        ASSERT_LT((unit - expected).norm(), 1e-14) << k;
    }
}

TEST(tomography, two_qubit_transform_recovers_matrix_units) {
    const CMatrix& t = preparation_transform_2q();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CMatrix unit = CMatrix::Zero(4, 4);
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    unit += t(4 * i + j, 4 * a + b) *
                            kron(basis_state_density(kBasisPreps[static_cast<std::size_t>(a)]),
                                 basis_state_density(kBasisPreps[static_cast<std::size_t>(b)]));
                }
            }
            CMatrix expected = CMatrix::Zero(4, 4);
            expected(i, j) = 1.0;
            ASSERT_LT((unit - expected).norm(), 1e-13) << i << "," << j;
        }
    }
}

TEST(tomography, two_qubit_transform_printed_rows) {
    const CMatrix& t = preparation_transform_2q();
    const cplx a(0.5, 0.5);
    const cplx i(0.0, 1.0);
    // |00><01|: -a HH - a HV + HD + i HR.
    ASSERT_LT(std::abs(t(1, 0) + a), 1e-15);
    ASSERT_LT(std::abs(t(1, 1) + a), 1e-15);
    ASSERT_LT(std::abs(t(1, 2) - 1.0), 1e-15);
    ASSERT_LT(std::abs(t(1, 3) - i), 1e-15);
    ASSERT_LT(std::abs(t(1, 4)), 1e-15);
    // |00><10|: -a HH - a VH + DH + i RH.
    ASSERT_LT(std::abs(t(2, 0) + a), 1e-15);
    ASSERT_LT(std::abs(t(2, 4) + a), 1e-15);
    ASSERT_LT(std::abs(t(2, 8) - 1.0), 1e-15);
    ASSERT_LT(std::abs(t(2, 12) - i), 1e-15);
}

TEST(tomography, single_qubit_chi_matches_pauli_expansion) {
    std::mt19937_64 rng(11);
    std::vector<CMatrix> gates{CMatrix::Identity(2, 2), pauli(2), pauli(3), pauli(4), rotation_x(kPi / 2),
                               rotation_matrix(0.7, 1.3)};
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    gates.push_back(h / std::sqrt(2.0));
    for (int k = 0; k < 20; ++k) {
        gates.push_back(random_unitary(2, rng));
    }
    for (const CMatrix& u : gates) {
        const CMatrix chi = ideal_chi(u);
        ASSERT_LT((chi - pauli_expansion_chi(u)).norm(), 1e-13);
        ASSERT_NEAR(chi.trace().real(), 1.0, 1e-13);
    }
}

TEST(tomography, two_qubit_chi_matches_pauli_expansion) {
    std::mt19937_64 rng(12);
    std::vector<CMatrix> gates{CMatrix::Identity(4, 4), cnot_type_matrix(), kron(pauli(2), pauli(3)),
                               kron(rotation_y(0.3), rotation_x(1.1))};
    for (int k = 0; k < 10; ++k) {
        gates.push_back(random_unitary(4, rng));
    }
    for (const CMatrix& u : gates) {
        ASSERT_LT((ideal_chi(u) - pauli_expansion_chi(u)).norm(), 1e-12);
    }
}

TEST(tomography, cnot_type_chi_pattern) {
    const CMatrix chi = ideal_chi(cnot_type_matrix());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
    v[0] = 0.5;
    v[1] = 0.5;
    v[12] = -0.5;
    v[13] = 0.5;
    const CMatrix expected = (v * v.transpose()).cast<cplx>();
    ASSERT_LT((chi - expected).norm(), 1e-13);
    // Global phase does not change chi.
    ASSERT_LT((ideal_chi(cplx(0.0, 1.0) * cnot_type_matrix()) - expected).norm(), 1e-13);
}

TEST(tomography, chi_reproduces_channel) {
    std::mt19937_64 rng(13);
    for (int d : {2, 4}) {
        for (int k = 0; k < 5; ++k) {
            const CMatrix u = random_unitary(d, rng);
            const CMatrix rho = random_density(d, rng);
            const CMatrix out = apply_chi(ideal_chi(u), rho);
            ASSERT_LT((out - u * rho * u.adjoint()).norm(), 1e-12);
        }
    }
}

TEST(tomography, chi_of_mixed_channel_is_linear) {
    // Dephasing: rho -> (1 - p) rho + p Z rho Z gives chi = diag(1 - p, 0, 0, p).
    const double p = 0.2;
    const CMatrix chi = process_tomo_1q([&](BasisPrep a) {
        const CMatrix r = basis_state_density(a);
        return CMatrix((1 - p) * r + p * pauli(4) * r * pauli(4));
    });
    CMatrix expected = CMatrix::Zero(4, 4);
    expected(0, 0) = 1 - p;
    expected(3, 3) = p;
    ASSERT_LT((chi - expected).norm(), 1e-14);
}

TEST(tomography, state_tomography_round_trip) {
    std::mt19937_64 rng(14);
    for (int k = 0; k < 10; ++k) {
        const CMatrix r1 = random_density(2, rng);
        const CMatrix got1 = state_tomo_1q([&](Analysis a) { return ideal_readout(r1, {a}); });
        ASSERT_LT((got1 - r1).norm(), 1e-13);
        const CMatrix r2 = random_density(4, rng);
        int calls = 0;
        const CMatrix got2 = state_tomo_2q([&](Analysis a, Analysis b) {
            ++calls;
            return ideal_readout(r2, {a, b});
        });
        ASSERT_LT((got2 - r2).norm(), 1e-13);
        ASSERT_EQ(calls, 9);
    }
}

TEST(tomography, bell_states) {
    for (BellState b : {BellState::phi_plus, BellState::phi_minus, BellState::psi_plus, BellState::psi_minus}) {
        const CMatrix r = bell_state_density(b);
        const CMatrix got = state_tomo_2q([&](Analysis x, Analysis y) { return ideal_readout(r, {x, y}); });
        ASSERT_NEAR(fidelity(got, r), 1.0, 1e-13);
        ASSERT_NEAR((r * r).trace().real(), 1.0, 1e-14);
    }
    ASSERT_NEAR(fidelity(bell_state_density(BellState::phi_plus), bell_state_density(BellState::psi_plus)), 0.0,
                1e-14);
}

TEST(tomography, fidelity_properties) {
    std::mt19937_64 rng(15);
    const CMatrix a = random_density(4, rng);
    const CMatrix b = random_density(4, rng);
    ASSERT_NEAR(fidelity(a, a), 1.0, 1e-15);
    ASSERT_NEAR(fidelity(a, b), fidelity(b, a), 1e-13);
    ASSERT_LE(fidelity(a, b), 1.0);
    ASSERT_GE(fidelity(a, b), 0.0);
    ASSERT_THROW(fidelity(a, CMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(tomography, invalid_records) {
    ASSERT_THROW(state_tomo_1q([](Analysis) { return Populations{1.2, 0.0}; }), InvalidRecord);
    ASSERT_THROW(state_tomo_1q([](Analysis) { return Populations{0.7, 0.6}; }), InvalidRecord);
    ASSERT_THROW(state_tomo_1q([](Analysis) { return Populations{0.5}; }), InvalidRecord);
    ASSERT_THROW(state_tomo_2q([](Analysis, Analysis) { return Populations{-0.1, 0.2, 0.3, 0.1}; }), InvalidRecord);
    ASSERT_THROW(process_tomo_1q([](BasisPrep) { return CMatrix(CMatrix::Identity(3, 3)); }), InvalidRecord);
    ASSERT_THROW(process_tomo_1q([](BasisPrep) {
                     CMatrix m = CMatrix::Identity(2, 2);
                     m(0, 1) = std::nan("");
                     return m;
                 }),
                 InvalidRecord);
    ASSERT_THROW(ideal_chi(CMatrix::Identity(3, 3)), std::invalid_argument);
    ASSERT_THROW(ideal_chi(2.0 * CMatrix::Identity(2, 2)), std::invalid_argument);
    // Leakage lowers the total without invalidating the record.
    const CMatrix r = state_tomo_1q([](Analysis) { return Populations{0.5, 0.45}; });
    ASSERT_NEAR(r.trace().real(), 0.95, 1e-15);
}

TEST(tomography, product_state_factorizes) {
    std::mt19937_64 rng(16);
    for (int k = 0; k < 5; ++k) {
        const CMatrix a = random_density(2, rng);
        const CMatrix b = random_density(2, rng);
        const CMatrix joint = state_tomo_2q([&](Analysis x, Analysis y) { return ideal_readout(kron(a, b), {x, y}); });
        const CMatrix ra = state_tomo_1q([&](Analysis x) { return ideal_readout(a, {x}); });
        const CMatrix rb = state_tomo_1q([&](Analysis x) { return ideal_readout(b, {x}); });
        ASSERT_LT((joint - kron(ra, rb)).norm(), 1e-13);
    }
}

TEST(tomography, state_examples) {
    const CMatrix h = state_tomo_1q([](Analysis a) { return ideal_readout(basis_state_density(BasisPrep::H), {a}); });
    ASSERT_LT((h - basis_state_density(BasisPrep::H)).norm(), 1e-15);
    // (|0> + |1>)/sqrt(2): lambda = (1, 1, 0, 0).
    CMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    const CMatrix d = state_tomo_1q([&](Analysis a) { return ideal_readout(plus, {a}); });
    ASSERT_LT((d - basis_state_density(BasisPrep::D)).norm(), 1e-15);

    CMatrix psi_plus = CMatrix::Zero(4, 4);
    psi_plus(1, 1) = psi_plus(2, 2) = psi_plus(1, 2) = psi_plus(2, 1) = 0.5;
    const CMatrix got = state_tomo_2q([&](Analysis x, Analysis y) { return ideal_readout(psi_plus, {x, y}); });
    ASSERT_LT((got - psi_plus).norm(), 1e-14);
    ASSERT_LT((bell_state_density(BellState::psi_plus) - psi_plus).norm(), 1e-15);
    ASSERT_LT(bell_state_density(BellState::psi_minus)(1, 2).real(), -0.49);
}

TEST(tomography, ideal_chi_examples) {
    const CMatrix id = ideal_chi(CMatrix::Identity(2, 2));
    CMatrix e = CMatrix::Zero(4, 4);
    e(0, 0) = 1.0;
    ASSERT_LT((id - e).norm(), 1e-14);

    const CMatrix x = ideal_chi(pauli(2));
    e.setZero();
    e(1, 1) = 1.0;
    ASSERT_LT((x - e).norm(), 1e-14);

    // H = (sigma_x + sigma_z)/sqrt(2): weight 1/2 on the {x, z} block only.
    CMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    const CMatrix chi = ideal_chi(h);
    e.setZero();
    e(1, 1) = e(1, 3) = e(3, 1) = e(3, 3) = 0.5;
    ASSERT_LT((chi - e).norm(), 1e-14);

    const CMatrix id2 = ideal_chi(CMatrix::Identity(4, 4));
    ASSERT_NEAR(id2(0, 0).real(), 1.0, 1e-14);
    ASSERT_NEAR(id2.norm(), 1.0, 1e-14);
}
