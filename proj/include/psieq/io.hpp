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

#ifndef PSIEQ_IO_HPP
#define PSIEQ_IO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "psieq/dynamics.hpp"
#include "psieq/game.hpp"
#include "psieq/solver.hpp"

namespace psieq {

using Json = nlohmann::json;

/// Instance or state text that failed to parse or validate.
class ParseError : public Error {
public:
    explicit ParseError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// Parses and validates an instance file. Errors carry the JSON path of the
/// offending value (or the line and column for syntax errors).
Game parse_instance(std::string_view text);
Json instance_to_json(const Game& game);
std::string serialize_instance(const Game& game);

/// State file: {"strategies": {player-id: index | [id, ...]}}. Explicit
/// players use a strategy index or a resource-id list; network players use
/// an edge-id path. A solve report is accepted too (its "final_state").
State parse_state(const Game& game, std::string_view text);
Json state_to_json(const Game& game, const State& state);

/// {"exact": "p/q", "decimal": "..."}; the exact string is authoritative.
Json rational_json(const Scalar& x);
Scalar rational_from_json(const Json& j);

Json params_to_json(const SolverParams& params);
Json move_to_json(const Game& game, const MoveRecord& move);
Json equilibrium_to_json(const Game& game, const EquilibriumReport& report);

Json solve_report(const Game& game, const SolverParams& params, const SolveResult& result,
                  const EquilibriumReport& verification, const AuditReport& audit);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace psieq

#endif  // PSIEQ_IO_HPP
