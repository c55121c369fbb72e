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

#ifndef PSIEQ_ORACLE_HPP
#define PSIEQ_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psieq/game.hpp"
#include "psieq/potential.hpp"

namespace psieq {

inline constexpr std::uint64_t kDefaultEnumerationCap = 200'000;

/// Worker count for oracle sweeps: PSIEQ_THREADS if set, else the hardware
/// concurrency.
unsigned oracle_threads();

/// Runs body(i) for i in [0, count) on up to oracle_threads() workers.
void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& body);

/// All states of an explicit game, in mixed-radix order (player 0 is the most
/// significant digit; digits are strategy indices).
class StateSpace {
public:
    StateSpace(const Game& game, std::uint64_t cap = kDefaultEnumerationCap);

    std::uint64_t size() const { return size_; }
    State at(std::uint64_t index) const;
    std::uint64_t index_of(const State& state) const;

    std::size_t digit(std::uint64_t index, std::size_t player) const;
    std::uint64_t with_digit(std::uint64_t index, std::size_t player, std::size_t digit) const;

    class iterator {
    public:
        iterator(const StateSpace* space, std::uint64_t index) : space_(space), index_(index) {}
        State operator*() const { return space_->at(index_); }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        bool operator==(const iterator& other) const { return index_ == other.index_; }

    private:
        const StateSpace* space_;
        std::uint64_t index_;
    };
    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, size_}; }

private:
    const Game* game_;
    std::vector<std::uint64_t> stride_;
    std::uint64_t size_ = 1;
};

/// Throws when a player has a network strategy space or the state count
/// exceeds `cap`.
StateSpace enumerate_states(const Game& game, std::uint64_t cap = kDefaultEnumerationCap);

/// All simple source-target paths of a network player; throws past `cap`.
std::vector<Strategy> simple_paths(const Game& game, std::size_t player,
                                   std::uint64_t cap = kDefaultEnumerationCap);

/// The same game with every network player's paths listed explicitly.
Game explicit_form(const Game& game, std::uint64_t path_cap = kDefaultEnumerationCap);

/// States whose rho_achieved is at most rho (every state when rho is nullopt).
std::vector<State> exact_equilibria(const Game& game, Mode mode, const std::optional<Scalar>& rho,
                                    std::uint64_t cap = kDefaultEnumerationCap);

struct PotentialMinimum {
    State state;
    Scalar value;
};

/// Global minimiser of Phi; the first in enumeration order on ties.
PotentialMinimum min_potential_state(const Game& game, std::uint64_t cap = kDefaultEnumerationCap);

/// max over rho-approximate equilibria S (Psi-game) of Phi(S) / Phi(S*).
Scalar measure_stretch(const Game& game, const Scalar& rho,
                       std::uint64_t cap = kDefaultEnumerationCap);

/// Improvement-move graph over all states.
struct DynamicsGraph {
    std::uint64_t nodes = 0;
    std::vector<std::vector<std::uint64_t>> successors;
    std::uint64_t edges = 0;
    std::vector<std::uint64_t> sinks;
    bool acyclic = true;
    std::vector<std::uint64_t> cycle_witness;  // s_0, ..., s_k = s_0 when cyclic
};

DynamicsGraph dynamics_graph(const Game& game, Mode mode,
                             std::uint64_t cap = kDefaultEnumerationCap);

struct PartialStretchReport {
    std::size_t samples = 0;
    std::size_t comparisons = 0;
    std::vector<std::string> violations;
};

/// Samples R and states S that are rho-approximate equilibria for R, and
/// checks Phi_R(S) <= theta_d(rho) Phi_R(S*) for every S* that agrees with S
/// outside R.
PartialStretchReport check_partial_stretch(const Game& game, const Scalar& rho,
                                           std::size_t samples, std::uint64_t seed,
                                           std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace psieq

#endif  // PSIEQ_ORACLE_HPP
