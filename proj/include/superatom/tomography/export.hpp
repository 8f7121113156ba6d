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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "superatom/core/types.hpp"
#include "superatom/tomography/experiment.hpp"

namespace superatom {

/// Operator-basis labels in chi ordering: I, X, Y, Z or II, IX, ..., ZZ.
std::vector<std::string> pauli_labels(int n_qubits);
/// Computational-state labels: 0, 1 or 00, 01, 10, 11.
std::vector<std::string> state_labels(int n_qubits);

/// Rows of interleaved real,imag columns with a header of column labels.
void write_matrix_csv(std::ostream& out, const CMatrix& m, const std::vector<std::string>& labels);
/// gnuplot `matrix nonuniform`-free grid: blocks "i j re im abs" separated by blank lines.
void write_matrix_grid(std::ostream& out, const CMatrix& m);
/// Heat-map script stub for a grid written by write_matrix_grid.
std::string gnuplot_heatmap_script(const std::string& grid_file, const std::vector<std::string>& labels,
                                   const std::string& title);

nlohmann::json matrix_to_json(const CMatrix& m, const std::vector<std::string>& labels);
CMatrix matrix_from_json(const nlohmann::json& j);

void write_record_csv(std::ostream& out, const TomographyRecord& record);
nlohmann::json record_to_json(const TomographyRecord& record);

}  // namespace superatom
