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

#include "psieq/game.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace psieq {

bool Strategy::contains(std::size_t resource) const {
    return std::binary_search(resources.begin(), resources.end(), resource);
}

Strategy make_strategy(std::vector<std::size_t> resources) {
    std::sort(resources.begin(), resources.end());
    if (std::adjacent_find(resources.begin(), resources.end()) != resources.end()) {
        throw Error("strategy resources must be distinct");
    }
    return Strategy{std::move(resources)};
}

std::optional<std::size_t> Game::find_resource(std::string_view id) const {
    for (std::size_t i = 0; i < resources.size(); ++i) {
        if (resources[i].id == id) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> Game::find_player(std::string_view id) const {
    for (std::size_t i = 0; i < players.size(); ++i) {
        if (players[i].id == id) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> Game::find_node(std::string_view id) const {
    if (!network) return std::nullopt;
    for (std::size_t i = 0; i < network->nodes.size(); ++i) {
        if (network->nodes[i] == id) return i;
    }
    return std::nullopt;
}

bool Game::is_explicit() const {
    return std::none_of(players.begin(), players.end(),
                        [](const Player& p) { return p.is_network(); });
}

std::vector<std::size_t> Game::edge_of_resource() const {
    std::vector<std::size_t> out(resources.size(), npos);
    if (!network) return out;
    for (std::size_t i = 0; i < network->edges.size(); ++i) {
        const auto r = network->edges[i].resource;
        if (r < out.size()) out[r] = i;
    }
    return out;
}

namespace {

bool all_zero(const Resource& r) {
    return std::all_of(r.coeffs.begin(), r.coeffs.end(),
                       [](const Scalar& a) { return sgn(a) == 0; });
}

// Nodes reachable from `source`, optionally only along zero-latency edges.
std::vector<bool> reachable(const Game& game, std::size_t source, bool zero_only) {
    const auto& net = *game.network;
    std::vector<bool> seen(net.nodes.size(), false);
    std::queue<std::size_t> todo;
    seen[source] = true;
    todo.push(source);
    while (!todo.empty()) {
        const auto v = todo.front();
        todo.pop();
        for (const auto& e : net.edges) {
            if (e.from != v || seen[e.to]) continue;
            if (zero_only && !all_zero(game.resources[e.resource])) continue;
            seen[e.to] = true;
            todo.push(e.to);
        }
    }
    return seen;
}

template <typename T, typename Key>
void check_unique(const std::vector<T>& items, Key key, const std::string& what,
                  std::vector<std::string>& out) {
    std::set<std::string> seen;
    for (const auto& item : items) {
        if (!seen.insert(key(item)).second) {
            out.push_back("duplicate " + what + " id \"" + key(item) + "\"");
        }
    }
}

}  // namespace

std::vector<std::string> validate(const Game& game) {
    std::vector<std::string> out;
    if (game.degree < 1) out.push_back("degree must be at least 1");
    check_unique(game.resources, [](const Resource& r) { return r.id; }, "resource", out);
    check_unique(game.players, [](const Player& p) { return p.id; }, "player", out);

    const auto nres = game.resources.size();
    for (const auto& r : game.resources) {
        if (static_cast<long>(r.coeffs.size()) != game.degree + 1) {
            out.push_back("resource \"" + r.id + "\": expected " +
                          std::to_string(game.degree + 1) + " coefficients, got " +
                          std::to_string(r.coeffs.size()));
        }
        for (const auto& a : r.coeffs) {
            if (sgn(a) < 0) {
                out.push_back("resource \"" + r.id + "\": coefficients must be non-negative");
                break;
            }
        }
    }

    bool network_ok = game.network.has_value();
    if (game.network) {
        const auto& net = *game.network;
        {
            std::set<std::string> seen;
            for (const auto& n : net.nodes) {
                if (!seen.insert(n).second) out.push_back("duplicate node id \"" + n + "\"");
            }
        }
        check_unique(net.edges, [](const Edge& e) { return e.id; }, "edge", out);
        std::vector<int> carried(nres, 0);
        for (const auto& e : net.edges) {
            if (e.from >= net.nodes.size() || e.to >= net.nodes.size()) {
                out.push_back("edge \"" + e.id + "\": unknown endpoint");
                network_ok = false;
            }
            if (e.resource >= nres) {
                out.push_back("edge \"" + e.id + "\": unknown resource");
                network_ok = false;
            } else if (++carried[e.resource] == 2) {
                out.push_back("resource \"" + game.resources[e.resource].id +
                              "\" is carried by more than one edge");
            }
        }
    }

    for (const auto& p : game.players) {
        const std::string who = "player \"" + p.id + "\": ";
        if (sgn(p.weight) <= 0) out.push_back(who + "weight must be positive");
        if (p.is_network()) {
            if (!game.network) {
                out.push_back(who + "source/target given but the game has no network");
                continue;
            }
            if (!p.strategies.empty()) out.push_back(who + "has both a route and explicit strategies");
            const auto nn = game.network->nodes.size();
            if (p.route->source >= nn || p.route->target >= nn) {
                out.push_back(who + "unknown source or target node");
                continue;
            }
            if (p.route->source == p.route->target) {
                out.push_back(who + "source and target must differ");
                continue;
            }
            if (!network_ok) continue;
            if (!reachable(game, p.route->source, false)[p.route->target]) {
                out.push_back(who + "no source-target path");
            } else if (reachable(game, p.route->source, true)[p.route->target]) {
                out.push_back(who + "has a source-target path of zero latency");
            }
            continue;
        }
        if (p.strategies.empty()) out.push_back(who + "has no strategies");
        for (std::size_t i = 0; i < p.strategies.size(); ++i) {
            const auto& s = p.strategies[i].resources;
            const std::string which = who + "strategy " + std::to_string(i) + ": ";
            if (s.empty()) {
                out.push_back(which + "must be a non-empty set of resources");
                continue;
            }
            if (!std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end()) {
                out.push_back(which + "resources must be distinct");
            }
            if (std::any_of(s.begin(), s.end(), [&](std::size_t r) { return r >= nres; })) {
                out.push_back(which + "unknown resource");
                continue;
            }
            if (std::all_of(s.begin(), s.end(),
                            [&](std::size_t r) { return all_zero(game.resources[r]); })) {
                out.push_back(which + "has zero latency on every resource");
            }
        }
    }
    return out;
}

std::vector<std::size_t> route_edges(const Game& game, const Route& route,
                                     const Strategy& strategy) {
    if (!game.network) throw Error("game has no network");
    const auto edge_of = game.edge_of_resource();
    const auto& net = *game.network;
    std::vector<std::size_t> edges;
    for (auto r : strategy.resources) {
        if (r >= edge_of.size() || edge_of[r] == npos) throw Error("resource is not a network edge");
        edges.push_back(edge_of[r]);
    }
    std::vector<std::size_t> ordered;
    std::vector<bool> used(edges.size(), false);
    std::vector<bool> visited(net.nodes.size(), false);
    std::size_t at = route.source;
    visited[at] = true;
    while (at != route.target) {
        std::size_t next = npos;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!used[i] && net.edges[edges[i]].from == at) {
                if (next != npos) throw Error("route branches");
                next = i;
            }
        }
        if (next == npos) throw Error("route does not reach the target");
        used[next] = true;
        ordered.push_back(edges[next]);
        at = net.edges[edges[next]].to;
        if (visited[at]) throw Error("route revisits a node");
        visited[at] = true;
    }
    if (ordered.size() != edges.size()) throw Error("route has edges off the path");
    return ordered;
}

bool is_route_path(const Game& game, const Route& route, const Strategy& strategy) {
    if (strategy.resources.empty()) return false;
    try {
        route_edges(game, route, strategy);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::vector<std::string> validate_state(const Game& game, const State& state) {
    std::vector<std::string> out;
    if (state.choice.size() != game.players.size()) {
        out.push_back("state assigns " + std::to_string(state.choice.size()) +
                      " strategies for " + std::to_string(game.players.size()) + " players");
        return out;
    }
    for (std::size_t u = 0; u < game.players.size(); ++u) {
        const auto& p = game.players[u];
        const auto& s = state.choice[u];
        bool ok;
        if (p.is_network()) {
            ok = is_route_path(game, *p.route, s);
        } else {
            ok = std::find(p.strategies.begin(), p.strategies.end(), s) != p.strategies.end();
        }
        if (!ok) out.push_back("player \"" + p.id + "\": invalid strategy");
    }
    return out;
}

std::vector<Scalar> resource_load_multiset(const Game& game, const State& state,
                                           std::size_t resource) {
    if (resource >= game.resources.size()) throw Error("unknown resource");
    std::vector<Scalar> out;
    for (std::size_t u = 0; u < game.players.size(); ++u) {
        if (state.choice[u].contains(resource)) out.push_back(game.players[u].weight);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Scalar> resource_load_multiset(const Game& game, const State& state,
                                           std::string_view resource_id) {
    auto r = game.find_resource(resource_id);
    if (!r) throw Error("unknown resource \"" + std::string(resource_id) + "\"");
    return resource_load_multiset(game, state, *r);
}

State with_strategy(const State& state, std::size_t player, const Strategy& strategy) {
    State out = state;
    out.choice.at(player) = strategy;
    return out;
}

std::vector<std::size_t> symmetric_difference(const Strategy& a, const Strategy& b) {
    std::vector<std::size_t> out;
    std::set_symmetric_difference(a.resources.begin(), a.resources.end(),
                                  b.resources.begin(), b.resources.end(),
                                  std::back_inserter(out));
    return out;
}

}  // namespace psieq
