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

#include "superatom/core/levels.hpp"

#include <stdexcept>
#include <string>

namespace superatom {

std::string_view level_label(Level level) {
    switch (level) {
        case Level::g0:
            return "g0";
        case Level::g1:
            return "g1";
        case Level::e:
            return "e";
        case Level::r0:
            return "r0";
        case Level::r1:
            return "r1";
    }
    return "?";
}

Level parse_level(std::string_view label) {
    for (Level l : LevelScheme::levels) {
        if (level_label(l) == label) {
            return l;
        }
    }
    throw std::invalid_argument("unknown level label '" + std::string(label) + "'");
}

}  // namespace superatom
