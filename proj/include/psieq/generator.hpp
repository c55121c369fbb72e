// Copyright 2026 The psieq Authors
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

#ifndef PSIEQ_GENERATOR_HPP
#define PSIEQ_GENERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "psieq/game.hpp"

namespace psieq {

enum class Family { random, parallel, grid, series_parallel };

const char* to_string(Family family);
Family parse_family(std::string_view text);

/// Random instance parameters. Weights are (uniform integer in [1,
/// weight_max]) / (uniform integer in [1, weight_den]) times 2^j with j
/// uniform in [0, weight_spread]. Each coefficient is non-zero with
/// probability `density` and then uniform in [1, coeff_max]; every resource
/// gets at least one non-zero coefficient. Explicit strategies are distinct
/// uniform non-empty subsets of at most `max_strategy_size` resources.
struct GeneratorSpec {
    Family family = Family::random;
    std::size_t players = 2;
    int degree = 1;
    std::size_t resources = 3;          // random, parallel
    std::size_t strategies = 2;         // random: per player
    std::size_t max_strategy_size = 2;  // random
    std::size_t rows = 3;               // grid
    std::size_t cols = 3;               // grid
    std::size_t sp_edges = 6;           // series_parallel
    unsigned weight_max = 3;
    unsigned weight_den = 1;
    unsigned weight_spread = 0;
    unsigned coeff_max = 3;
    double density = 0.7;
};

struct GeneratedInstance {
    Game game;
    State initial;
};

/// Deterministic for a given (spec, seed). Throws on infeasible specs.
GeneratedInstance generate(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace psieq

#endif  // PSIEQ_GENERATOR_HPP
