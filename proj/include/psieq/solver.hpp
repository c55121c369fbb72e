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

#ifndef PSIEQ_SOLVER_HPP
#define PSIEQ_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psieq/dynamics.hpp"
#include "psieq/game.hpp"
#include "psieq/potential.hpp"

namespace psieq {

enum class MoverPolicy { max_cost, min_id };

const char* to_string(MoverPolicy policy);
MoverPolicy parse_policy(std::string_view text);

enum class MoveKind { phase0, q_move, p_move };

const char* to_string(MoveKind kind);

struct SolverOptions {
    Mode mode = Mode::psi;
    Scalar gamma;
    std::uint64_t move_cap = 10'000'000;
    bool force = false;  // accept gamma outside the admissible range
    MoverPolicy policy = MoverPolicy::max_cost;
};

/// Largest admissible gamma: psi mode 1/10 (d = 1) or 1/(8 theta_d(2));
/// weighted mode 1/(4 d! theta_d(2 (d!)^2)).
Scalar max_gamma(int degree, Mode mode);

struct SolverParams {
    Mode mode = Mode::psi;
    int degree = 1;
    std::size_t players = 0;
    Scalar gamma;
    Scalar c_min;
    Scalar c_max;
    unsigned m = 1;
    Scalar g;
    Scalar q;
    Scalar p;
    std::vector<Scalar> b;  // b_0 .. b_m, b_i = c_max g^{-i}
    std::uint64_t move_cap = 10'000'000;
    MoverPolicy policy = MoverPolicy::max_cost;
    bool forced = false;  // gamma outside the admissible range: guarantees void

    /// m n g gamma^{-2}
    Scalar move_bound() const;

    /// Certified approximation factor in the mode's own cost:
    /// psi (1+2g)/(1-2g) p, weighted 6 (d!)^2 theta_d(2 (d!)^2).
    Scalar rho_bound() const;

    /// Factor certified for the weighted congestion game: d! times the psi
    /// bound in psi mode, rho_bound() in weighted mode.
    Scalar rho_bound_weighted() const;
};

SolverParams derive_params(const Game& game, const State& initial, const SolverOptions& options);

struct MoveRecord {
    int phase = 0;
    std::size_t player = 0;
    Strategy from;
    Strategy to;
    Scalar cost_before;  // in the mode's cost
    Scalar cost_after;
    Scalar psi_cost_after;
    Scalar potential_before;  // Psi-game potential
    Scalar potential_after;
    MoveKind kind = MoveKind::phase0;
};

struct PhaseSummary {
    int phase = 0;
    std::vector<std::size_t> movers;     // R_i, in order of first move
    std::vector<std::size_t> finalized;  // added to F at the end of the phase
    std::size_t first_move = 0;          // index into MoveLog::moves
    std::size_t move_count = 0;
    State end;                           // S^i
};

struct MoveLog {
    State initial;
    std::vector<MoveRecord> moves;
    std::vector<PhaseSummary> phases;  // phases[i] describes phase i
    std::vector<int> finalized_at;     // per player, -1 if never finalized
};

struct SolveResult {
    State final_state;
    MoveLog log;
};

/// Admission rule of one phase. Phase 0 admits q-moves of players with cost
/// >= b_1; phase i >= 1 admits p-moves at cost >= b_i and q-moves at cost in
/// [b_{i+1}, b_i) for players outside F.
struct PhaseContext {
    int phase = 0;
    const PlayerSet* finalized = nullptr;
    std::optional<Scalar> p_floor;  // b_i
    Scalar q_floor;                 // b_{i+1} (b_1 in phase 0)
    std::optional<Scalar> q_ceiling;
    Scalar q;
    Scalar p;

    static PhaseContext for_phase(const SolverParams& params, int phase, const PlayerSet& finalized);
};

struct Mover {
    std::size_t player = 0;
    Scalar cost;
    BestResponse response;
    MoveKind kind = MoveKind::phase0;
};

/// Eligible player to move next, or nullopt when the phase is over.
/// max_cost picks the highest current cost (ties by player id); min_id
/// picks the smallest player id.
std::optional<Mover> select_mover(const TrackedState& state, const PhaseContext& context,
                                  Mode mode, MoverPolicy policy);

SolveResult solve(const Game& game, const State& initial, const SolverParams& params);

struct AuditReport {
    bool passed = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
};

/// Replays the log and re-checks the guarantees a correct run must satisfy:
/// strict potential decrease per move, the per-phase bound
/// Phi_{R_i}(S^{i-1}) <= n b_i / gamma, the last-move bound on
/// Phi_{R_i}(S^i), the (1 + 2 gamma) cost drift and (1 - 2 gamma) deviation
/// drift of finalized players (deviations only for explicit players), the
/// phase-0 exit condition, termination and the move-count bound.
AuditReport audit_log(const Game& game, const MoveLog& log, const SolverParams& params);

}  // namespace psieq

#endif  // PSIEQ_SOLVER_HPP
