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

#include "superatom/core/basis.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace superatom {

namespace {

std::size_t encode(std::span<const Level> config) {
    std::size_t code = 0;
    for (Level l : config) {
        code = code * kNumLevels + static_cast<std::size_t>(l);
    }
    return code;
}

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

}  // namespace

BlockadedBasis::BlockadedBasis(std::vector<int> ensemble_sizes, int max_atoms)
    : ensemble_sizes_(std::move(ensemble_sizes)) {
    if (ensemble_sizes_.empty()) {
        throw std::invalid_argument("basis needs at least one ensemble");
    }
    for (int s : ensemble_sizes_) {
        if (s < 1) {
            throw std::invalid_argument("ensemble size must be >= 1, got " + std::to_string(s));
        }
    }
    n_atoms_ = std::accumulate(ensemble_sizes_.begin(), ensemble_sizes_.end(), 0);
    if (n_atoms_ > max_atoms) {
        throw std::invalid_argument("total atom count " + std::to_string(n_atoms_) +
                                    " exceeds the configured maximum " + std::to_string(max_atoms));
    }
    for (int k = 0; k < n_ensembles(); ++k) {
        atom_ensemble_.insert(atom_ensemble_.end(), ensemble_sizes_[k], k);
    }

    const std::size_t full = ipow(kNumLevels, n_atoms_);
    lookup_.assign(full, -1);
    std::vector<Level> config(n_atoms_, Level::g0);
    for (std::size_t code = 0; code < full; ++code) {
        // Decode in lexicographic order: the most significant digit is atom 0.
        std::size_t rest = code;
        int rydberg = 0;
        for (int a = n_atoms_ - 1; a >= 0; --a) {
            config[a] = static_cast<Level>(rest % kNumLevels);
            rest /= kNumLevels;
            rydberg += LevelScheme::is_rydberg(config[a]) ? 1 : 0;
        }
        if (rydberg > 1) {
            continue;
        }
        lookup_[code] = static_cast<std::int32_t>(dim_);
        configs_.insert(configs_.end(), config.begin(), config.end());
        ++dim_;
    }
}

int BlockadedBasis::ensemble_size(int ensemble) const {
    if (ensemble < 0 || ensemble >= n_ensembles()) {
        throw std::invalid_argument("ensemble index " + std::to_string(ensemble) + " out of range");
    }
    return ensemble_sizes_[ensemble];
}

std::span<const Level> BlockadedBasis::config(std::size_t index) const {
    return {configs_.data() + index * n_atoms_, static_cast<std::size_t>(n_atoms_)};
}

std::optional<std::size_t> BlockadedBasis::index_of(std::span<const Level> config) const {
    if (static_cast<int>(config.size()) != n_atoms_) {
        return std::nullopt;
    }
    const std::int32_t i = lookup_[encode(config)];
    if (i < 0) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(i);
}

std::pair<int, int> BlockadedBasis::atom_range(int ensemble) const {
    ensemble_size(ensemble);
    int first = 0;
    for (int k = 0; k < ensemble; ++k) {
        first += ensemble_sizes_[k];
    }
    return {first, first + ensemble_sizes_[ensemble]};
}

std::size_t BlockadedBasis::closed_form_dim(int n_atoms) {
    if (n_atoms < 1) {
        return 0;
    }
    return ipow(3, n_atoms) + 2 * static_cast<std::size_t>(n_atoms) * ipow(3, n_atoms - 1);
}

BlockadedBasis build_basis(const std::vector<int>& ensemble_sizes) {
    return BlockadedBasis(ensemble_sizes);
}

}  // namespace superatom
