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

#include <complex>

#include <Eigen/Dense>

namespace superatom {

using cplx = std::complex<double>;

/// Complex amplitudes over a basis (physical configurations or logical 2^n states).
using StateVector = Eigen::VectorXcd;

/// Square complex matrix. Used for density matrices, operators, and process matrices.
using CMatrix = Eigen::MatrixXcd;
using DensityMatrix = CMatrix;
using Operator = CMatrix;

using RowMajorCMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Angular frequency (rad/s) for a value quoted as f/2pi in MHz.
constexpr double mhz(double f_over_2pi_mhz) { return kTwoPi * 1e6 * f_over_2pi_mhz; }
constexpr double khz(double f_over_2pi_khz) { return kTwoPi * 1e3 * f_over_2pi_khz; }
constexpr double microseconds(double t) { return t * 1e-6; }
constexpr double nanoseconds(double t) { return t * 1e-9; }

}  // namespace superatom
