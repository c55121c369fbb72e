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

#ifndef PSIEQ_GAME_HPP
#define PSIEQ_GAME_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psieq/scalar.hpp"

namespace psieq {

/// A non-empty set of resources, kept as sorted distinct resource indices.
struct Strategy {
    std::vector<std::size_t> resources;

    bool contains(std::size_t resource) const;
    auto operator<=>(const Strategy&) const = default;
};

/// Builds a strategy from arbitrary indices; sorts and rejects duplicates.
Strategy make_strategy(std::vector<std::size_t> resources);

struct Resource {
    std::string id;
    std::vector<Scalar> coeffs;  // a_0 .. a_d
};

struct Edge {
    std::string id;
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t resource = 0;
};

struct Network {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
};

struct Route {
    std::size_t source = 0;
    std::size_t target = 0;
};

struct Player {
    std::string id;
    Scalar weight;
    std::vector<Strategy> strategies;  // explicit strategy space
    std::optional<Route> route;        // network strategy space

    bool is_network() const { return route.has_value(); }
};

/// Weighted congestion game with polynomial latencies of degree `degree`.
/// The same data describes the corresponding Psi-game.
struct Game {
    int degree = 1;
    std::vector<Resource> resources;
    std::vector<Player> players;
    std::optional<Network> network;

    std::size_t num_players() const { return players.size(); }
    std::size_t num_resources() const { return resources.size(); }

    std::optional<std::size_t> find_resource(std::string_view id) const;
    std::optional<std::size_t> find_player(std::string_view id) const;
    std::optional<std::size_t> find_node(std::string_view id) const;

    // True when every player has an explicit strategy list.
    bool is_explicit() const;

    // Edge carrying each resource, or npos when the resource is not on an edge.
    std::vector<std::size_t> edge_of_resource() const;
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// One strategy per player, indexed like Game::players.
struct State {
    std::vector<Strategy> choice;

    bool operator==(const State&) const = default;
};

std::vector<std::string> validate(const Game& game);
std::vector<std::string> validate_state(const Game& game, const State& state);

/// Network players: true iff `strategy` is the resource set of a simple
/// source-target path.
bool is_route_path(const Game& game, const Route& route, const Strategy& strategy);

/// Orders the edges of a route strategy from source to target.
std::vector<std::size_t> route_edges(const Game& game, const Route& route,
                                     const Strategy& strategy);

/// N_e(S): weights of the players whose strategy contains the resource.
std::vector<Scalar> resource_load_multiset(const Game& game, const State& state,
                                           std::size_t resource);
std::vector<Scalar> resource_load_multiset(const Game& game, const State& state,
                                           std::string_view resource_id);

/// (S_{-u}, s')
State with_strategy(const State& state, std::size_t player, const Strategy& strategy);

/// Resources used by exactly one of the two strategies.
std::vector<std::size_t> symmetric_difference(const Strategy& a, const Strategy& b);

}  // namespace psieq

#endif  // PSIEQ_GAME_HPP
