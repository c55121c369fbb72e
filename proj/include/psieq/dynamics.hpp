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

#ifndef PSIEQ_DYNAMICS_HPP
#define PSIEQ_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "psieq/game.hpp"
#include "psieq/potential.hpp"
#include "psieq/psi.hpp"

namespace psieq {

/// Per-resource Psi aggregates (kmax = d + 1) of the current load multisets.
class LoadProfile {
public:
    LoadProfile(const Game& game, const State& state);

    /// The pseudo-state in which no player takes part.
    static LoadProfile empty(const Game& game);

    void add(const Scalar& weight, const Strategy& strategy);
    void remove(const Scalar& weight, const Strategy& strategy);

    const PsiAggregate& operator[](std::size_t resource) const { return aggs_[resource]; }
    std::size_t size() const { return aggs_.size(); }

    /// sum_k a_{e,k}/(k+1) Psi_{k+1}(N_e)
    Scalar resource_potential(std::size_t resource) const;
    Scalar potential() const;

    bool operator==(const LoadProfile& other) const { return aggs_ == other.aggs_; }

private:
    explicit LoadProfile(const Game& game);

    const Game* game_;
    std::vector<PsiAggregate> aggs_;
};

/// Price each resource would charge player u if u used it, given the other
/// players' loads. `current` is u's strategy in the profile (nullptr when u
/// is not placed, as in the pseudo-state).
///   psi:      w_u sum_k a_{e,k} Psi_k(N_e(S_{-u}) + {w_u})
///   weighted: w_u sum_k a_{e,k} (L(N_e(S_{-u})) + w_u)^k
std::vector<Scalar> resource_prices(const Game& game, const LoadProfile& loads, std::size_t u,
                                    const Strategy* current, Mode mode);

struct BestResponse {
    Strategy strategy;
    Scalar cost;
};

/// Cost-minimising strategy for u. Explicit players are enumerated; network
/// players get a shortest path under resource_prices(). Ties keep `current`,
/// then prefer the smallest strategy (explicit) or the path found first by
/// a label-setting search that settles nodes in index order (network).
BestResponse best_response(const Game& game, const LoadProfile& loads, std::size_t u,
                           const Strategy* current, Mode mode);
BestResponse best_response(const Game& game, const State& state, std::size_t u, Mode mode);

/// BR_u(0): u's best response when nobody else takes part.
BestResponse solo_best_response(const Game& game, std::size_t u, Mode mode);

bool is_valid_strategy(const Game& game, std::size_t u, const Strategy& strategy);

/// Cost of u in (S_{-u}, s').
Scalar deviation_cost(const Game& game, const State& state, std::size_t u,
                      const Strategy& strategy, Mode mode);

/// (S_{-u}, s'), after checking that s' is one of u's strategies.
State apply_move(const Game& game, const State& state, std::size_t u, const Strategy& strategy);

/// A state together with its load aggregates, kept in sync move by move.
class TrackedState {
public:
    TrackedState(const Game& game, State state);

    const Game& game() const { return *game_; }
    const State& state() const { return state_; }
    const LoadProfile& loads() const { return loads_; }

    Scalar cost(std::size_t u, Mode mode) const;
    Scalar deviation_cost(std::size_t u, const Strategy& strategy, Mode mode) const;
    BestResponse best_response(std::size_t u, Mode mode) const;
    Scalar potential() const { return potential_; }

    /// Moves u to `strategy`, updating only the resources in the symmetric
    /// difference.
    void apply_move(std::size_t u, const Strategy& strategy);

private:
    const Game* game_;
    State state_;
    LoadProfile loads_;
    Scalar potential_;
};

struct PlayerRatio {
    std::size_t player = 0;
    Scalar cost;
    Scalar best_cost;
    std::optional<Scalar> ratio;  // nullopt: the best deviation costs 0 (unbounded)
};

struct EquilibriumReport {
    std::vector<PlayerRatio> players;
    std::optional<Scalar> rho_achieved;  // nullopt: unbounded

    bool within(const Scalar& rho) const { return rho_achieved && *rho_achieved <= rho; }
};

/// ratio_u = cost_u(S) / cost_u(S_{-u}, BR_u(S)), or 1 when BR does not improve;
/// rho_achieved is the maximum over `subset` (1 for an empty subset).
EquilibriumReport verify_approx_equilibrium(const Game& game, const State& state, Mode mode,
                                            const PlayerSet& subset);
EquilibriumReport verify_approx_equilibrium(const Game& game, const State& state, Mode mode);

}  // namespace psieq

#endif  // PSIEQ_DYNAMICS_HPP
