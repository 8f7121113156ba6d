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

#include <json.hpp>

#include "superatom/core/types.hpp"

namespace superatom {

enum class ConstraintMode {
    /// Every element of sum chi_mn E_n^dag E_m = I.
    full,
    /// Only the diagonal elements.
    diagonal_only,
};

std::string constraint_mode_name(ConstraintMode m);
ConstraintMode parse_constraint_mode(const std::string& s);

struct MleOptions {
    int max_outer = 12;
    double initial_penalty = 10.0;
    double penalty_growth = 10.0;
    /// Objective evaluations per inner minimization.
    int max_evaluations = 10000;
    /// Inner stop: relative decrease of the merit below this.
    double ftol = 1e-12;
    double gtol = 1e-12;
    /// Required max |constraint| at exit.
    double constraint_tol = 1e-8;
};

struct MleReport {
    double residual = 0.0;
    double constraint_violation = 0.0;
    int outer_iterations = 0;
    int inner_iterations = 0;
    int evaluations = 0;
    double wall_seconds = 0.0;
    bool converged = false;

    nlohmann::json to_json() const;
};

struct MleResult {
    CMatrix matrix;
    MleReport report;
};

/// Thrown when the optimizer runs out of budget; carries the best iterate.
class ConvergenceFailure : public std::runtime_error {
  public:
    ConvergenceFailure(const std::string& what, MleResult best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const MleResult& best() const { return best_; }

  private:
    MleResult best_;
};

/// Lower-triangular T with real diagonal t_1..t_d followed by (re, im) pairs
/// of the strictly lower entries, row by row.
CMatrix cholesky_factor(const Eigen::VectorXd& t, int d);
/// Parameters t with T^dag T = m for a PSD m (zero pivots give zero columns).
Eigen::VectorXd cholesky_params(const CMatrix& m);

/// Closest trace-one PSD matrix in the least-squares sense. The input must be
/// Hermitian within 1e-6 (it is symmetrized); otherwise std::invalid_argument.
MleResult mle_density(const CMatrix& measured, const MleOptions& options = {});

/// Closest PSD process matrix satisfying the trace-preservation constraints.
MleResult mle_chi(const CMatrix& measured, ConstraintMode mode, const MleOptions& options = {});

enum class MleProblem { density, process };

struct ObjectiveValue {
    double delta = 0.0;
    Eigen::VectorXd constraints;
    /// d delta / d t.
    Eigen::VectorXd gradient;
    /// Row k is d constraint_k / d t.
    Eigen::MatrixXd constraint_jacobian;
};

/// Delta(t) and the constraint residuals (none for densities, whose trace is
/// normalized inside the objective).
ObjectiveValue objective_and_constraints(const Eigen::VectorXd& t, const CMatrix& measured, MleProblem problem,
                                         ConstraintMode mode = ConstraintMode::full);

/// sum_mn chi_mn E_n^dag E_m for the Pauli operator basis.
CMatrix trace_preservation_matrix(const CMatrix& chi);

}  // namespace superatom
