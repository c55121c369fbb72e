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

#ifndef PSIEQ_POTENTIAL_HPP
#define PSIEQ_POTENTIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "psieq/game.hpp"
#include "psieq/scalar.hpp"

namespace psieq {

/// Which cost a computation uses: the Psi-game cost c^ or the weighted
/// congestion game cost c.
enum class Mode { psi, weighted };

const char* to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Subset of a game's players.
class PlayerSet {
public:
    PlayerSet() = default;
    static PlayerSet none(std::size_t n) { return PlayerSet(n, false); }
    static PlayerSet all(std::size_t n) { return PlayerSet(n, true); }
    static PlayerSet of(std::size_t n, std::initializer_list<std::size_t> members);
    static PlayerSet of(std::size_t n, const std::vector<std::size_t>& members);

    std::size_t universe() const { return bits_.size(); }
    bool contains(std::size_t u) const { return bits_.at(u); }
    void insert(std::size_t u) { bits_.at(u) = true; }
    void erase(std::size_t u) { bits_.at(u) = false; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::vector<std::size_t> members() const;

    bool subset_of(const PlayerSet& other) const;
    PlayerSet minus(const PlayerSet& other) const;
    PlayerSet complement() const;

    bool operator==(const PlayerSet&) const = default;

private:
    PlayerSet(std::size_t n, bool value) : bits_(n, value) {}
    std::vector<bool> bits_;
};

// Costs and potentials below are computed from scratch from the load
// multisets of the given state.

/// c_u(S) = w_u sum_{e in s_u} sum_k a_{e,k} L(N_e(S))^k
Scalar cost_weighted(const Game& game, const State& state, std::size_t u);

/// c^_u(S) = w_u sum_{e in s_u} sum_k a_{e,k} Psi_k(N_e(S))
Scalar cost_psi(const Game& game, const State& state, std::size_t u);

Scalar cost(const Game& game, const State& state, std::size_t u, Mode mode);

/// Phi(S) = sum_e sum_k a_{e,k}/(k+1) Psi_{k+1}(N_e(S))
Scalar potential(const Game& game, const State& state);

/// Phi^A(S): the potential of the subgame where only the players of A take part.
Scalar subgame_potential(const Game& game, const State& state, const PlayerSet& players);

/// Phi^A_B(S) = Phi^A(S) - Phi^{A \ B}(S). Throws unless B is a subset of A.
Scalar partial_potential(const Game& game, const State& state, const PlayerSet& subgame,
                         const PlayerSet& part);

/// Phi_B(S) = Phi^N_B(S).
Scalar partial_potential(const Game& game, const State& state, const PlayerSet& part);

/// Rational upper bound on sqrt(5) with error below 1e-32.
const Scalar& sqrt5_upper();

/// Upper bound theta_d(rho) on the rho-stretch of the potential.
///   d = 1:  (3 + sqrt 5)/2 + 6 (rho - 1), rho in [1, 11/10]
///   d >= 2: rho (rho + 1)^d (d + 1)^(d + 1), rho >= 1
/// For d = 1 the square root is replaced by sqrt5_upper(), so the result
/// never undershoots the real bound.
Scalar theta(int d, const Scalar& rho);

/// xi_eps = (1 + 1/eps)^d d^d - 1
Scalar xi(const Scalar& eps, int d);

}  // namespace psieq

#endif  // PSIEQ_POTENTIAL_HPP
