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

#include <array>
#include <cstdint>
#include <string_view>

namespace superatom {

/// Single-atom levels: qubit states g0 = |0>, g1 = |1>, intermediate e, Rydberg r0, r1.
enum class Level : std::uint8_t { g0 = 0, g1 = 1, e = 2, r0 = 3, r1 = 4 };

inline constexpr int kNumLevels = 5;

/// The five-level ladder shared by every atom. Labels are unique and the
/// Rydberg set is {r0, r1}.
struct LevelScheme {
    static constexpr std::array<Level, kNumLevels> levels{Level::g0, Level::g1, Level::e, Level::r0,
                                                          Level::r1};
    static constexpr std::array<Level, 2> rydberg_set{Level::r0, Level::r1};

    static constexpr bool is_rydberg(Level l) { return l == Level::r0 || l == Level::r1; }
    static constexpr int index(Level l) { return static_cast<int>(l); }
};

std::string_view level_label(Level level);

/// Parses "g0", "g1", "e", "r0", "r1". Throws std::invalid_argument otherwise.
Level parse_level(std::string_view label);

/// Ordered level pair (lower, upper) driven by a coupling.
struct Transition {
    Level lower;
    Level upper;

    friend bool operator==(const Transition&, const Transition&) = default;
};

}  // namespace superatom
