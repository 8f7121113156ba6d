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

#include "superatom/tomography/export.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace superatom {

namespace {

const char* const kPauliNames[4] = {"I", "X", "Y", "Z"};

}  // namespace

std::vector<std::string> pauli_labels(int n_qubits) {
    std::vector<std::string> out;
    if (n_qubits == 1) {
        for (const char* p : kPauliNames) {
            out.emplace_back(p);
        }
    } else {
        for (const char* a : kPauliNames) {
            for (const char* b : kPauliNames) {
                out.push_back(std::string(a) + b);
            }
        }
    }
    return out;
}

std::vector<std::string> state_labels(int n_qubits) {
    if (n_qubits == 1) {
        return {"0", "1"};
    }
    return {"00", "01", "10", "11"};
}

void write_matrix_csv(std::ostream& out, const CMatrix& m, const std::vector<std::string>& labels) {
    out << std::setprecision(17);
    out << "row";
    for (const auto& l : labels) {
        out << ",re_" << l << ",im_" << l;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << labels.at(static_cast<std::size_t>(i));
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << ',' << m(i, j).real() << ',' << m(i, j).imag();
        }
        out << '\n';
    }
}

void write_matrix_grid(std::ostream& out, const CMatrix& m) {
    out << std::setprecision(17);
    out << "# i j re im abs\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << i << ' ' << j << ' ' << m(i, j).real() << ' ' << m(i, j).imag() << ' ' << std::abs(m(i, j))
                << '\n';
        }
        out << '\n';
    }
}

std::string gnuplot_heatmap_script(const std::string& grid_file, const std::vector<std::string>& labels,
                                   const std::string& title) {
    std::ostringstream s;
    s << "set title '" << title << "'\n";
    s << "set view map\nset size square\nunset key\n";
    s << "set xtics (";
    for (std::size_t k = 0; k < labels.size(); ++k) {
        s << (k ? ", " : "") << '"' << labels[k] << "\" " << k;
    }
    s << ")\nset ytics (";
    for (std::size_t k = 0; k < labels.size(); ++k) {
        s << (k ? ", " : "") << '"' << labels[k] << "\" " << k;
    }
    s << ")\n";
    s << "splot '" << grid_file << "' using 2:1:3 with image\n";
    return s.str();
}

nlohmann::json matrix_to_json(const CMatrix& m, const std::vector<std::string>& labels) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        nlohmann::json c = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r.push_back(m(i, j).real());
            c.push_back(m(i, j).imag());
        }
        re.push_back(r);
        im.push_back(c);
    }
    return {{"basis", labels}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const auto n = static_cast<Eigen::Index>(re.size());
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            m(i, k) = cplx(re.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>(),
                           im.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>());
        }
    }
    return m;
}

void write_record_csv(std::ostream& out, const TomographyRecord& record) {
    out << std::setprecision(17);
    out << "preparation,analysis";
    for (const auto& l : state_labels(record.n_qubits)) {
        out << ",P" << l;
    }
    out << ",leakage\n";
    for (const auto& row : record.rows) {
        double total = 0;
        out << row.preparation << ',' << row.analysis;
        for (double p : row.populations) {
            out << ',' << p;
            total += p;
        }
        out << ',' << 1.0 - total << '\n';
    }
}

nlohmann::json record_to_json(const TomographyRecord& record) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : record.rows) {
        rows.push_back({{"preparation", row.preparation}, {"analysis", row.analysis}, {"populations", row.populations}});
    }
    return {{"n_qubits", record.n_qubits}, {"outcomes", state_labels(record.n_qubits)}, {"rows", rows}};
}

}  // namespace superatom
