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

#include "psieq/dynamics.hpp"

#include <algorithm>

namespace psieq {

LoadProfile::LoadProfile(const Game& game)
    : game_(&game),
      aggs_(game.resources.size(), PsiAggregate(static_cast<std::size_t>(game.degree) + 1)) {}

LoadProfile::LoadProfile(const Game& game, const State& state) : LoadProfile(game) {
    for (std::size_t u = 0; u < game.players.size(); ++u) {
        add(game.players[u].weight, state.choice.at(u));
    }
}

LoadProfile LoadProfile::empty(const Game& game) { return LoadProfile(game); }

void LoadProfile::add(const Scalar& weight, const Strategy& strategy) {
    for (auto e : strategy.resources) aggs_.at(e).insert(weight);
}

void LoadProfile::remove(const Scalar& weight, const Strategy& strategy) {
    for (auto e : strategy.resources) aggs_.at(e).remove(weight);
}

Scalar LoadProfile::resource_potential(std::size_t resource) const {
    const auto& a = game_->resources[resource].coeffs;
    const auto& agg = aggs_[resource];
    Scalar phi = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (sgn(a[k]) != 0) phi += a[k] * agg[k + 1] / static_cast<unsigned long>(k + 1);
    }
    return phi;
}

Scalar LoadProfile::potential() const {
    Scalar phi = 0;
    for (std::size_t e = 0; e < aggs_.size(); ++e) phi += resource_potential(e);
    return phi;
}

std::vector<Scalar> resource_prices(const Game& game, const LoadProfile& loads, std::size_t u,
                                    const Strategy* current, Mode mode) {
    const auto& w = game.players.at(u).weight;
    const auto d = static_cast<std::size_t>(game.degree);
    std::vector<Scalar> prices(game.resources.size());
    std::vector<Scalar> psi(d + 1);
    for (std::size_t e = 0; e < game.resources.size(); ++e) {
        const auto& a = game.resources[e].coeffs;
        const auto& agg = loads[e];
        const bool placed = current != nullptr && current->contains(e);
        Scalar latency = 0;
        if (mode == Mode::psi) {
            psi[0] = 1;
            for (std::size_t k = 1; k <= d; ++k) {
                psi[k] = placed ? agg[k] : agg[k] + Scalar(static_cast<unsigned long>(k)) * w * psi[k - 1];
            }
            for (std::size_t k = 0; k <= d; ++k) {
                if (sgn(a[k]) != 0) latency += a[k] * psi[k];
            }
        } else {
            const Scalar load = placed ? Scalar(agg[1]) : Scalar(agg[1] + w);
            Scalar power = 1;
            for (std::size_t k = 0; k <= d; ++k) {
                if (sgn(a[k]) != 0) latency += a[k] * power;
                power *= load;
            }
        }
        prices[e] = w * latency;
    }
    return prices;
}

namespace {

Scalar strategy_price(const std::vector<Scalar>& prices, const Strategy& s) {
    Scalar total = 0;
    for (auto e : s.resources) total += prices[e];
    return total;
}

BestResponse explicit_best_response(const Player& player, const std::vector<Scalar>& prices,
                                    const Strategy* current) {
    const Strategy* best = nullptr;
    Scalar best_cost;
    for (const auto& s : player.strategies) {
        Scalar c = strategy_price(prices, s);
        if (best == nullptr || c < best_cost || (c == best_cost && s < *best)) {
            best = &s;
            best_cost = std::move(c);
        }
    }
    if (best == nullptr) throw Error("player \"" + player.id + "\" has no strategies");
    if (current != nullptr) {
        Scalar c = strategy_price(prices, *current);
        if (c == best_cost) return {*current, std::move(c)};
    }
    return {*best, best_cost};
}

BestResponse network_best_response(const Game& game, const Player& player,
                                   const std::vector<Scalar>& prices, const Strategy* current) {
    const auto& net = *game.network;
    const auto n = net.nodes.size();
    std::vector<std::optional<Scalar>> dist(n);
    std::vector<std::size_t> via(n, npos);
    std::vector<bool> settled(n, false);
    dist[player.route->source] = Scalar(0);
    for (;;) {
        std::size_t v = npos;
        for (std::size_t i = 0; i < n; ++i) {
            if (!settled[i] && dist[i] && (v == npos || *dist[i] < *dist[v])) v = i;
        }
        if (v == npos || v == player.route->target) break;
        settled[v] = true;
        for (std::size_t ei = 0; ei < net.edges.size(); ++ei) {
            const auto& edge = net.edges[ei];
            if (edge.from != v || settled[edge.to]) continue;
            Scalar cand = *dist[v] + prices[edge.resource];
            if (!dist[edge.to] || cand < *dist[edge.to]) {
                dist[edge.to] = std::move(cand);
                via[edge.to] = ei;
            }
        }
    }
    const auto t = player.route->target;
    if (!dist[t]) throw Error("player \"" + player.id + "\" has no source-target path");
    if (current != nullptr) {
        Scalar c = strategy_price(prices, *current);
        if (c == *dist[t]) return {*current, std::move(c)};
    }
    std::vector<std::size_t> resources;
    for (std::size_t v = t; v != player.route->source;) {
        const auto& edge = net.edges[via[v]];
        resources.push_back(edge.resource);
        v = edge.from;
    }
    return {make_strategy(std::move(resources)), *dist[t]};
}

}  // namespace

BestResponse best_response(const Game& game, const LoadProfile& loads, std::size_t u,
                           const Strategy* current, Mode mode) {
    const auto& player = game.players.at(u);
    const auto prices = resource_prices(game, loads, u, current, mode);
    if (player.is_network()) return network_best_response(game, player, prices, current);
    return explicit_best_response(player, prices, current);
}

BestResponse best_response(const Game& game, const State& state, std::size_t u, Mode mode) {
    return best_response(game, LoadProfile(game, state), u, &state.choice.at(u), mode);
}

BestResponse solo_best_response(const Game& game, std::size_t u, Mode mode) {
    return best_response(game, LoadProfile::empty(game), u, nullptr, mode);
}

bool is_valid_strategy(const Game& game, std::size_t u, const Strategy& strategy) {
    const auto& player = game.players.at(u);
    if (player.is_network()) return is_route_path(game, *player.route, strategy);
    return std::find(player.strategies.begin(), player.strategies.end(), strategy) !=
           player.strategies.end();
}

Scalar deviation_cost(const Game& game, const State& state, std::size_t u,
                      const Strategy& strategy, Mode mode) {
    if (!is_valid_strategy(game, u, strategy)) throw Error("invalid strategy");
    const LoadProfile loads(game, state);
    const auto prices = resource_prices(game, loads, u, &state.choice.at(u), mode);
    return strategy_price(prices, strategy);
}

State apply_move(const Game& game, const State& state, std::size_t u, const Strategy& strategy) {
    if (!is_valid_strategy(game, u, strategy)) throw Error("invalid strategy");
    return with_strategy(state, u, strategy);
}

TrackedState::TrackedState(const Game& game, State state)
    : game_(&game), state_(std::move(state)), loads_(game, state_), potential_(loads_.potential()) {}

Scalar TrackedState::cost(std::size_t u, Mode mode) const {
    return deviation_cost(u, state_.choice.at(u), mode);
}

Scalar TrackedState::deviation_cost(std::size_t u, const Strategy& strategy, Mode mode) const {
    const auto prices = resource_prices(*game_, loads_, u, &state_.choice.at(u), mode);
    return strategy_price(prices, strategy);
}

BestResponse TrackedState::best_response(std::size_t u, Mode mode) const {
    return psieq::best_response(*game_, loads_, u, &state_.choice.at(u), mode);
}

void TrackedState::apply_move(std::size_t u, const Strategy& strategy) {
    if (!is_valid_strategy(*game_, u, strategy)) throw Error("invalid strategy");
    const auto& w = game_->players[u].weight;
    const auto& old = state_.choice[u];
    for (auto e : symmetric_difference(old, strategy)) {
        potential_ -= loads_.resource_potential(e);
        if (old.contains(e)) {
            loads_.remove(w, Strategy{{e}});
        } else {
            loads_.add(w, Strategy{{e}});
        }
        potential_ += loads_.resource_potential(e);
    }
    state_.choice[u] = strategy;
}

EquilibriumReport verify_approx_equilibrium(const Game& game, const State& state, Mode mode,
                                            const PlayerSet& subset) {
    const LoadProfile loads(game, state);
    EquilibriumReport report;
    report.rho_achieved = Scalar(1);
    for (auto u : subset.members()) {
        const auto& current = state.choice.at(u);
        const auto prices = resource_prices(game, loads, u, &current, mode);
        PlayerRatio r;
        r.player = u;
        r.cost = strategy_price(prices, current);
        r.best_cost = best_response(game, loads, u, &current, mode).cost;
        if (r.best_cost >= r.cost) {
            r.ratio = Scalar(1);
        } else if (sgn(r.best_cost) == 0) {
            r.ratio = std::nullopt;
        } else {
            r.ratio = r.cost / r.best_cost;
        }
        if (!r.ratio) {
            report.rho_achieved = std::nullopt;
        } else if (report.rho_achieved && *r.ratio > *report.rho_achieved) {
            report.rho_achieved = *r.ratio;
        }
        report.players.push_back(std::move(r));
    }
    return report;
}

EquilibriumReport verify_approx_equilibrium(const Game& game, const State& state, Mode mode) {
    return verify_approx_equilibrium(game, state, mode, PlayerSet::all(game.players.size()));
}

}  // namespace psieq
