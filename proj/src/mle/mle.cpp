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

#include "superatom/mle/mle.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "superatom/core/states.hpp"

namespace superatom {

namespace {

int factor_dim_from_params(Eigen::Index n) {
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) {
        throw std::invalid_argument("parameter count must be a perfect square");
    }
    return d;
}

CMatrix hermitian_input(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) {
        throw std::invalid_argument("MLE input must be a finite square matrix");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-6) {
        throw std::invalid_argument("MLE input is not Hermitian");
    }
    return 0.5 * (m + m.adjoint());
}

/// Projection start: negative eigenvalues clipped, trace rescaled to one.
CMatrix clipped(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
    if (w.sum() <= 0.0) {
        w.setOnes();
    }
    w /= w.sum();
    return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

/// d/dt of Re Tr(W T^dag T) is Re Tr(H T^dag dT) with H = W + W^dag.
Eigen::VectorXd param_gradient(const CMatrix& h, const CMatrix& t) {
    const Eigen::Index d = t.rows();
    const CMatrix g = h * t.adjoint();
    Eigen::VectorXd out(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out[i] = g(i, i).real();
    }
    Eigen::Index k = d;
    for (Eigen::Index i = 1; i < d; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            out[k++] = g(j, i).real();
            out[k++] = -g(j, i).imag();
        }
    }
    return out;
}

std::vector<CMatrix> operator_basis(int n_qubits) {
    std::vector<CMatrix> e;
    if (n_qubits == 1) {
        for (int k = 1; k <= 4; ++k) {
            e.push_back(pauli(k));
        }
    } else {
        for (int a = 1; a <= 4; ++a) {
            for (int b = 1; b <= 4; ++b) {
                e.push_back(kron(pauli(a), pauli(b)));
            }
        }
    }
    return e;
}

int qubits_for_chi(Eigen::Index n) {
    if (n == 4) {
        return 1;
    }
    if (n == 16) {
        return 2;
    }
    throw std::invalid_argument("process matrices must be 4x4 or 16x16");
}

/// Constraint k is Re Tr(W_k chi) - target_k.
struct ConstraintSet {
    std::vector<CMatrix> w;
    std::vector<double> target;
};

ConstraintSet build_constraints(int n_qubits, ConstraintMode mode) {
    const auto e = operator_basis(n_qubits);
    const int d = n_qubits == 1 ? 2 : 4;
    const auto m = static_cast<Eigen::Index>(e.size());
    // q[a][b](n, m) = (E_n^dag E_m)_ab, so A_ab = Tr(q[a][b] chi).
    std::vector<std::vector<CMatrix>> q(static_cast<std::size_t>(d), std::vector<CMatrix>(static_cast<std::size_t>(d), CMatrix::Zero(m, m)));
    for (Eigen::Index n = 0; n < m; ++n) {
        for (Eigen::Index k = 0; k < m; ++k) {
            const CMatrix p = e[static_cast<std::size_t>(n)].adjoint() * e[static_cast<std::size_t>(k)];
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    q[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](n, k) = p(a, b);
                }
            }
        }
    }
    ConstraintSet c;
    for (int a = 0; a < d; ++a) {
        c.w.push_back(q[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)]);
        c.target.push_back(1.0);
    }
    if (mode == ConstraintMode::full) {
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                const CMatrix& qab = q[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                c.w.push_back(qab);
                c.target.push_back(0.0);
                c.w.push_back(cplx(0.0, -1.0) * qab);
                c.target.push_back(0.0);
            }
        }
    }
    return c;
}

ObjectiveValue evaluate(const Eigen::VectorXd& t, const CMatrix& measured, MleProblem problem,
                        const ConstraintSet* constraints) {
    const int d = factor_dim_from_params(t.size());
    if (d != measured.rows()) {
        throw std::invalid_argument("parameter vector does not match the measured matrix");
    }
    const CMatrix tm = cholesky_factor(t, d);
    const CMatrix s = tm.adjoint() * tm;
    ObjectiveValue v;
    if (problem == MleProblem::density) {
        const double tr = s.trace().real();
        const CMatrix r = s / tr - measured;
        v.delta = r.squaredNorm();
        const double c = (r * s).trace().real() / (tr * tr);
        const CMatrix w = (2.0 / tr) * r - 2.0 * c * CMatrix::Identity(d, d);
        v.gradient = param_gradient(2.0 * w, tm);
        v.constraints.resize(0);
        v.constraint_jacobian.resize(0, t.size());
        return v;
    }
    const CMatrix r = s - measured;
    v.delta = r.squaredNorm();
    v.gradient = param_gradient(4.0 * r, tm);
    const std::size_t nc = constraints ? constraints->w.size() : 0;
    v.constraints.resize(static_cast<Eigen::Index>(nc));
    v.constraint_jacobian.resize(static_cast<Eigen::Index>(nc), t.size());
    for (std::size_t k = 0; k < nc; ++k) {
        const CMatrix& w = constraints->w[k];
        v.constraints[static_cast<Eigen::Index>(k)] = (w * s).trace().real() - constraints->target[k];
        v.constraint_jacobian.row(static_cast<Eigen::Index>(k)) = param_gradient(w + w.adjoint(), tm).transpose();
    }
    return v;
}

struct Merit {
    double value;
    Eigen::VectorXd gradient;
    ObjectiveValue raw;
};

MleResult optimize(const CMatrix& measured, const CMatrix& start, MleProblem problem, const ConstraintSet* constraints,
                   const MleOptions& options) {
    const auto t_begin = std::chrono::steady_clock::now();
    Eigen::VectorXd t = cholesky_params(start);
    const auto n = t.size();
    const Eigen::Index nc = constraints ? static_cast<Eigen::Index>(constraints->w.size()) : 0;
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(nc);
    double mu = options.initial_penalty;
    MleReport report;
    bool budget_hit = false;

    auto merit = [&](const Eigen::VectorXd& x) {
        Merit m{0.0, {}, evaluate(x, measured, problem, constraints)};
        ++report.evaluations;
        m.value = m.raw.delta;
        m.gradient = m.raw.gradient;
        if (nc > 0) {
            const Eigen::VectorXd& c = m.raw.constraints;
            m.value += lambda.dot(c) + 0.5 * mu * c.squaredNorm();
            m.gradient += m.raw.constraint_jacobian.transpose() * (lambda + mu * c);
        }
        return m;
    };

    const int outer_limit = nc > 0 ? options.max_outer : 1;
    ObjectiveValue last = evaluate(t, measured, problem, constraints);
    for (int outer = 0; outer < outer_limit; ++outer) {
        ++report.outer_iterations;
        const int eval_start = report.evaluations;
        Merit cur = merit(t);
        Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
        int stall = 0;
        while (true) {
            if (cur.gradient.cwiseAbs().maxCoeff() <= options.gtol || cur.value <= 1e-32) {
                break;
            }
            if (report.evaluations - eval_start >= options.max_evaluations) {
                budget_hit = true;
                break;
            }
            Eigen::VectorXd p = -hinv * cur.gradient;
            double slope = p.dot(cur.gradient);
            if (!(slope < 0.0)) {
                hinv.setIdentity();
                p = -cur.gradient;
                slope = p.dot(cur.gradient);
            }
            double step = 1.0;
            Merit next = merit(t + step * p);
            while (!(next.value <= cur.value + 1e-4 * step * slope) && step > 1e-20 &&
                   report.evaluations - eval_start < options.max_evaluations) {
                step *= 0.5;
                next = merit(t + step * p);
            }
            if (!(next.value <= cur.value)) {
                if (hinv.isIdentity()) {
                    break;
                }
                hinv.setIdentity();
                continue;
            }
            ++report.inner_iterations;
            const Eigen::VectorXd s = step * p;
            const Eigen::VectorXd y = next.gradient - cur.gradient;
            const double sy = s.dot(y);
            if (sy > 1e-300) {
                const double rho = 1.0 / sy;
                const Eigen::VectorXd hy = hinv * y;
                hinv += ((sy + y.dot(hy)) * rho * rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
            }
            const double decrease = cur.value - next.value;
            t += s;
            cur = std::move(next);
            if (decrease <= options.ftol * std::max(std::abs(cur.value), 1e-300) || decrease <= 1e-34) {
                if (++stall >= 3) {
                    break;
                }
            } else {
                stall = 0;
            }
        }
        last = cur.raw;
        if (nc == 0) {
            break;
        }
        const double violation = last.constraints.cwiseAbs().maxCoeff();
        if (violation <= 1e-2 * options.constraint_tol) {
            break;
        }
        lambda += mu * last.constraints;
        mu *= options.penalty_growth;
    }

    const int d = factor_dim_from_params(n);
    const CMatrix tm = cholesky_factor(t, d);
    MleResult result;
    result.matrix = tm.adjoint() * tm;
    if (problem == MleProblem::density) {
        result.matrix /= result.matrix.trace().real();
    }
    report.residual = last.delta;
    report.constraint_violation = nc > 0 ? last.constraints.cwiseAbs().maxCoeff() : 0.0;
    report.converged = report.constraint_violation <= options.constraint_tol;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    result.report = report;
    if (!report.converged) {
        throw ConvergenceFailure("MLE constraint violation " + std::to_string(report.constraint_violation) +
                                     (budget_hit ? " after exhausting the evaluation budget" : ""),
                                 result);
    }
    return result;
}

}  // namespace

std::string constraint_mode_name(ConstraintMode m) { return m == ConstraintMode::full ? "full" : "diagonal_only"; }

ConstraintMode parse_constraint_mode(const std::string& s) {
    if (s == "full") {
        return ConstraintMode::full;
    }
    if (s == "diagonal_only") {
        return ConstraintMode::diagonal_only;
    }
    throw std::invalid_argument("unknown constraint mode '" + s + "'");
}

nlohmann::json MleReport::to_json() const {
    return {{"residual", residual},
            {"constraint_violation", constraint_violation},
            {"outer_iterations", outer_iterations},
            {"inner_iterations", inner_iterations},
            {"evaluations", evaluations},
            {"wall_seconds", wall_seconds},
            {"converged", converged}};
}

CMatrix cholesky_factor(const Eigen::VectorXd& t, int d) {
    if (t.size() != static_cast<Eigen::Index>(d) * d) {
        throw std::invalid_argument("parameter vector must have d^2 entries");
    }
    CMatrix m = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        m(i, i) = t[i];
    }
    Eigen::Index k = d;
    for (int i = 1; i < d; ++i) {
        for (int j = 0; j < i; ++j) {
            m(i, j) = cplx(t[k], t[k + 1]);
            k += 2;
        }
    }
    return m;
}

Eigen::VectorXd cholesky_params(const CMatrix& m) {
    const auto d = m.rows();
    // T^dag T = m with T lower triangular: factor the index-reversed matrix as L L^dag.
    CMatrix rev(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            rev(i, j) = m(d - 1 - i, d - 1 - j);
        }
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    CMatrix l = CMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        double diag = rev(j, j).real();
        for (Eigen::Index k = 0; k < j; ++k) {
            diag -= std::norm(l(j, k));
        }
        if (diag <= 1e-14 * scale) {
            continue;
        }
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (Eigen::Index i = j + 1; i < d; ++i) {
            cplx v = rev(i, j);
            for (Eigen::Index k = 0; k < j; ++k) {
                v -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = v / ljj;
        }
    }
    // m = J L L^dag J = U U^dag with U = J L J upper; T = U^dag.
    CMatrix t(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            t(i, j) = std::conj(l(d - 1 - j, d - 1 - i));
        }
    }
    Eigen::VectorXd out(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out[i] = t(i, i).real();
    }
    Eigen::Index k = d;
    for (Eigen::Index i = 1; i < d; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            out[k++] = t(i, j).real();
            out[k++] = t(i, j).imag();
        }
    }
    return out;
}

ObjectiveValue objective_and_constraints(const Eigen::VectorXd& t, const CMatrix& measured, MleProblem problem,
                                         ConstraintMode mode) {
    if (problem == MleProblem::density) {
        return evaluate(t, measured, problem, nullptr);
    }
    const ConstraintSet c = build_constraints(qubits_for_chi(measured.rows()), mode);
    return evaluate(t, measured, problem, &c);
}

CMatrix trace_preservation_matrix(const CMatrix& chi) {
    const auto e = operator_basis(qubits_for_chi(chi.rows()));
    CMatrix a = CMatrix::Zero(e[0].rows(), e[0].cols());
    for (std::size_t m = 0; m < e.size(); ++m) {
        for (std::size_t n = 0; n < e.size(); ++n) {
            const cplx c = chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
            if (c != cplx(0.0)) {
                a += c * e[n].adjoint() * e[m];
            }
        }
    }
    return a;
}

MleResult mle_density(const CMatrix& measured, const MleOptions& options) {
    const CMatrix m = hermitian_input(measured);
    return optimize(m, clipped(m), MleProblem::density, nullptr, options);
}

MleResult mle_chi(const CMatrix& measured, ConstraintMode mode, const MleOptions& options) {
    const CMatrix m = hermitian_input(measured);
    const ConstraintSet c = build_constraints(qubits_for_chi(m.rows()), mode);
    return optimize(m, clipped(m), MleProblem::process, &c, options);
}

}  // namespace superatom
