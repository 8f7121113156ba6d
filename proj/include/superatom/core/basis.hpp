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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "superatom/core/levels.hpp"

namespace superatom {

/// Multi-atom configuration space under perfect Rydberg blockade.
///
/// Atoms are numbered consecutively across ensembles (ensemble 0 first).
/// Configurations are per-atom level assignments, kept only when at most one
/// atom in the whole system sits in a Rydberg level, and ordered
/// lexicographically by per-atom level index. That ordering is part of the
/// CSV dump format.
class BlockadedBasis {
  public:
    static constexpr int kDefaultMaxAtoms = 6;

    explicit BlockadedBasis(std::vector<int> ensemble_sizes, int max_atoms = kDefaultMaxAtoms);

    int n_atoms() const { return n_atoms_; }
    int n_ensembles() const { return static_cast<int>(ensemble_sizes_.size()); }
    const std::vector<int>& ensemble_sizes() const { return ensemble_sizes_; }
    int ensemble_size(int ensemble) const;
    std::size_t dim() const { return dim_; }

    std::span<const Level> config(std::size_t index) const;
    Level level_of(std::size_t index, int atom) const { return configs_[index * n_atoms_ + atom]; }

    /// Index of a configuration, or nullopt when it is blockaded away.
    std::optional<std::size_t> index_of(std::span<const Level> config) const;

    int ensemble_of_atom(int atom) const { return atom_ensemble_[atom]; }
    /// First atom index and one-past-last atom index of an ensemble.
    std::pair<int, int> atom_range(int ensemble) const;

    /// 3^N + 2 N 3^(N-1): the closed-form count of blockaded configurations.
    static std::size_t closed_form_dim(int n_atoms);

  private:
    std::vector<int> ensemble_sizes_;
    std::vector<int> atom_ensemble_;
    int n_atoms_ = 0;
    std::size_t dim_ = 0;
    std::vector<Level> configs_;
    // Dense lookup from base-5 encoded configuration to basis index, -1 when absent.
    std::vector<std::int32_t> lookup_;
};

BlockadedBasis build_basis(const std::vector<int>& ensemble_sizes);

}  // namespace superatom
