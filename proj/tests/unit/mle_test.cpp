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
#include "superatom/mle/mle.hpp"
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

CMatrix random_hermitian(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            z(i, j) = cplx(g(rng), g(rng));
        }
    }
    return 0.5 * (z + z.adjoint());
}

double min_eigenvalue(const CMatrix& m) {
    return Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

CMatrix cnot_chi() {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
    v[0] = 0.5;
    v[1] = 0.5;
    v[12] = -0.5;
    v[13] = 0.5;
    return (v * v.transpose()).cast<cplx>();
}

void check_gradient(const CMatrix& measured, MleProblem problem, ConstraintMode mode, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const auto n = measured.rows() * measured.rows();
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd t(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            t[k] = g(rng);
        }
        const ObjectiveValue v = objective_and_constraints(t, measured, problem, mode);
        const double h = 1e-6;
        for (Eigen::Index k = 0; k < n; ++k) {
            Eigen::VectorXd tp = t;
            Eigen::VectorXd tm = t;
            tp[k] += h;
            tm[k] -= h;
            const ObjectiveValue vp = objective_and_constraints(tp, measured, problem, mode);
            const ObjectiveValue vm = objective_and_constraints(tm, measured, problem, mode);
            const double fd = (vp.delta - vm.delta) / (2 * h);
            ASSERT_NEAR(v.gradient[k], fd, 1e-5 * std::max(1.0, std::abs(fd))) << "param " << k;
            for (Eigen::Index c = 0; c < v.constraints.size(); ++c) {
                const double fdc = (vp.constraints[c] - vm.constraints[c]) / (2 * h);
                ASSERT_NEAR(v.constraint_jacobian(c, k), fdc, 1e-5 * std::max(1.0, std::abs(fdc)));
            }
        }
    }
}

}  // namespace

TEST(mle, cholesky_round_trip) {
    std::mt19937_64 rng(21);
    for (int d : {2, 4, 16}) {
        CMatrix z = random_hermitian(d, rng);
        CMatrix m = z * z.adjoint();
        const Eigen::VectorXd t = cholesky_params(m);
        const CMatrix tm = cholesky_factor(t, d);
        ASSERT_LT((tm.adjoint() * tm - m).norm(), 1e-10 * m.norm());
        ASSERT_LT(tm.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm(), 1e-300);
    }
    // Rank one: zero pivots.
    const CMatrix chi = cnot_chi();
    const CMatrix tm = cholesky_factor(cholesky_params(chi), 16);
    ASSERT_LT((tm.adjoint() * tm - chi).norm(), 1e-14);
}

TEST(mle, gradient_matches_finite_differences) {
    std::mt19937_64 rng(22);
    check_gradient(random_hermitian(2, rng), MleProblem::density, ConstraintMode::full, rng);
    check_gradient(random_hermitian(4, rng), MleProblem::density, ConstraintMode::full, rng);
    check_gradient(random_hermitian(4, rng), MleProblem::process, ConstraintMode::full, rng);
    check_gradient(random_hermitian(16, rng), MleProblem::process, ConstraintMode::diagonal_only, rng);
}

TEST(mle, two_qubit_full_constraint_gradient) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    const CMatrix m = random_hermitian(16, rng);
    Eigen::VectorXd t(256);
    for (auto& x : t) {
        x = g(rng);
    }
    const ObjectiveValue v = objective_and_constraints(t, m, MleProblem::process, ConstraintMode::full);
    ASSERT_EQ(v.constraints.size(), 16);
    const double h = 1e-6;
    for (Eigen::Index k = 0; k < 256; k += 17) {
        Eigen::VectorXd tp = t;
        Eigen::VectorXd tm = t;
        tp[k] += h;
        tm[k] -= h;
        const auto vp = objective_and_constraints(tp, m, MleProblem::process, ConstraintMode::full);
        const auto vm = objective_and_constraints(tm, m, MleProblem::process, ConstraintMode::full);
        const double fd = (vp.delta - vm.delta) / (2 * h);
        ASSERT_NEAR(v.gradient[k], fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
}

TEST(mle, objective_zero_at_exact_parameters) {
    const CMatrix chi = cnot_chi();
    const ObjectiveValue v =
        objective_and_constraints(cholesky_params(chi), chi, MleProblem::process, ConstraintMode::full);
    ASSERT_LT(v.delta, 1e-28);
    ASSERT_LT(v.constraints.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(mle, trace_preservation_of_ideal_unitaries) {
    std::mt19937_64 rng(24);
    for (int d : {2, 4}) {
        for (int k = 0; k < 5; ++k) {
            const CMatrix chi = ideal_chi(random_unitary(d, rng));
            ASSERT_LT((trace_preservation_matrix(chi) - CMatrix::Identity(d, d)).norm(), 1e-12);
        }
    }
    // A lossy channel is not trace preserving.
    CMatrix lossy = CMatrix::Zero(4, 4);
    lossy(0, 0) = 0.9;
    ASSERT_NEAR(trace_preservation_matrix(lossy)(0, 0).real(), 0.9, 1e-15);
}

TEST(mle, physical_density_is_unchanged) {
    std::mt19937_64 rng(25);
    for (int d : {2, 4}) {
        CMatrix z = random_hermitian(d, rng);
        CMatrix rho = z * z.adjoint();
        rho /= rho.trace().real();
        const MleResult r = mle_density(rho);
        ASSERT_LT(r.report.residual, 1e-16);
        ASSERT_LT((r.matrix - rho).norm(), 1e-8);
    }
    CMatrix pure = CMatrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    ASSERT_LT(mle_density(pure).report.residual, 1e-16);
}

TEST(mle, negative_eigenvalue_density) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.1;
    m(1, 1) = -0.1;
    const MleResult r = mle_density(m);
    // Oracle: grid search over diag(p, 1 - p).
    double best_p = 0.0;
    double best = 1e300;
    for (int k = 0; k <= 100000; ++k) {
        const double p = k / 100000.0;
        const double v = (p - 1.1) * (p - 1.1) + (1 - p + 0.1) * (1 - p + 0.1);
        if (v < best) {
            best = v;
            best_p = p;
        }
    }
    CMatrix oracle = CMatrix::Zero(2, 2);
    oracle(0, 0) = best_p;
    oracle(1, 1) = 1 - best_p;
    ASSERT_LT((r.matrix - oracle).norm(), 1e-6);
    ASSERT_NEAR(r.matrix.trace().real(), 1.0, 1e-12);
}

TEST(mle, density_output_is_physical) {
    std::mt19937_64 rng(26);
    for (int d : {2, 4}) {
        for (int k = 0; k < 5; ++k) {
            const CMatrix m = random_hermitian(d, rng);
            const MleResult r = mle_density(m);
            ASSERT_GE(min_eigenvalue(r.matrix), -1e-9);
            ASSERT_NEAR(r.matrix.trace().real(), 1.0, 1e-12);
            ASSERT_LT((r.matrix - r.matrix.adjoint()).norm(), 1e-12);
            const MleResult again = mle_density(r.matrix);
            ASSERT_LT((again.matrix - r.matrix).norm(), 1e-8);
        }
    }
}

TEST(mle, ideal_chi_is_unchanged) {
    const CMatrix id = ideal_chi(CMatrix::Identity(2, 2));
    const MleResult r = mle_chi(id, ConstraintMode::full);
    ASSERT_LT(r.report.residual, 1e-16);
    ASSERT_LT((r.matrix - id).norm(), 1e-12);

    const MleResult c = mle_chi(cnot_chi(), ConstraintMode::diagonal_only);
    ASSERT_LT((c.matrix - cnot_chi()).norm(), 1e-8);
}

TEST(mle, perturbed_cnot_chi) {
    CMatrix m = cnot_chi();
    m(5, 5) += 0.01;
    const MleResult r = mle_chi(m, ConstraintMode::diagonal_only);
    ASSERT_GE(min_eigenvalue(r.matrix), -1e-9);
    const CMatrix a = trace_preservation_matrix(r.matrix);
    for (int k = 0; k < 4; ++k) {
        ASSERT_NEAR(a(k, k).real(), 1.0, 1e-8);
    }
    ASSERT_LE((r.matrix - m).norm(), 0.02);
    const MleResult again = mle_chi(r.matrix, ConstraintMode::diagonal_only);
    ASSERT_LT((again.matrix - r.matrix).norm(), 1e-8);
}

TEST(mle, unphysical_chi_full_mode) {
    std::mt19937_64 rng(27);
    for (int k = 0; k < 5; ++k) {
        CMatrix m = ideal_chi(random_unitary(2, rng)) + 0.05 * random_hermitian(4, rng);
        const MleResult r = mle_chi(m, ConstraintMode::full);
        ASSERT_GE(min_eigenvalue(r.matrix), -1e-9);
        ASSERT_LT((trace_preservation_matrix(r.matrix) - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-8);
        const MleResult again = mle_chi(r.matrix, ConstraintMode::full);
        ASSERT_LT((again.matrix - r.matrix).norm(), 1e-8);
    }
}

TEST(mle, rejects_bad_input) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    ASSERT_THROW(mle_density(m), std::invalid_argument);
    ASSERT_THROW(mle_chi(CMatrix::Identity(3, 3), ConstraintMode::full), std::invalid_argument);
    ASSERT_THROW(parse_constraint_mode("some"), std::invalid_argument);
}

TEST(mle, budget_exhaustion_reports_best_iterate) {
    MleOptions o;
    o.max_outer = 1;
    o.max_evaluations = 3;
    CMatrix m = cnot_chi();
    m(5, 5) += 0.3;
    m(0, 0) -= 0.2;
    try {
        mle_chi(m, ConstraintMode::full, o);
        FAIL() << "expected ConvergenceFailure";
    } catch (const ConvergenceFailure& e) {
        ASSERT_EQ(e.best().matrix.rows(), 16);
        ASSERT_FALSE(e.best().report.converged);
    }
}
