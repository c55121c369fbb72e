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

#include "psieq/potential.hpp"

#include <algorithm>

#include "psieq/psi.hpp"

namespace psieq {

const char* to_string(Mode mode) { return mode == Mode::psi ? "psi" : "weighted"; }

Mode parse_mode(std::string_view text) {
    if (text == "psi") return Mode::psi;
    if (text == "weighted") return Mode::weighted;
    throw Error("unknown mode \"" + std::string(text) + "\" (expected psi or weighted)");
}

PlayerSet PlayerSet::of(std::size_t n, std::initializer_list<std::size_t> members) {
    return of(n, std::vector<std::size_t>(members));
}

PlayerSet PlayerSet::of(std::size_t n, const std::vector<std::size_t>& members) {
    PlayerSet s = none(n);
    for (auto u : members) s.insert(u);
    return s;
}

std::size_t PlayerSet::size() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::size_t> PlayerSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < bits_.size(); ++u) {
        if (bits_[u]) out.push_back(u);
    }
    return out;
}

bool PlayerSet::subset_of(const PlayerSet& other) const {
    if (other.universe() != universe()) return false;
    for (std::size_t u = 0; u < bits_.size(); ++u) {
        if (bits_[u] && !other.bits_[u]) return false;
    }
    return true;
}

PlayerSet PlayerSet::minus(const PlayerSet& other) const {
    PlayerSet out = *this;
    for (std::size_t u = 0; u < bits_.size(); ++u) {
        if (u < other.universe() && other.bits_[u]) out.bits_[u] = false;
    }
    return out;
}

PlayerSet PlayerSet::complement() const {
    PlayerSet out = *this;
    out.bits_.flip();
    return out;
}

namespace {

void check_player(const Game& game, std::size_t u) {
    if (u >= game.players.size()) throw Error("unknown player");
}

std::vector<Scalar> subgame_multiset(const Game& game, const State& state,
                                     const PlayerSet& players, std::size_t e) {
    std::vector<Scalar> out;
    for (auto u : players.members()) {
        if (state.choice[u].contains(e)) out.push_back(game.players[u].weight);
    }
    return out;
}

}  // namespace

Scalar cost_weighted(const Game& game, const State& state, std::size_t u) {
    check_player(game, u);
    Scalar latency = 0;
    for (auto e : state.choice[u].resources) {
        const auto loads = resource_load_multiset(game, state, e);
        Scalar load = 0;
        for (const auto& w : loads) load += w;
        const auto& a = game.resources[e].coeffs;
        Scalar power = 1;
        for (std::size_t k = 0; k < a.size(); ++k) {
            latency += a[k] * power;
            power *= load;
        }
    }
    return game.players[u].weight * latency;
}

Scalar cost_psi(const Game& game, const State& state, std::size_t u) {
    check_player(game, u);
    Scalar latency = 0;
    for (auto e : state.choice[u].resources) {
        const auto& a = game.resources[e].coeffs;
        const auto psi = psi_vector(resource_load_multiset(game, state, e), a.size() - 1);
        for (std::size_t k = 0; k < a.size(); ++k) latency += a[k] * psi[k];
    }
    return game.players[u].weight * latency;
}

Scalar cost(const Game& game, const State& state, std::size_t u, Mode mode) {
    return mode == Mode::psi ? cost_psi(game, state, u) : cost_weighted(game, state, u);
}

Scalar subgame_potential(const Game& game, const State& state, const PlayerSet& players) {
    Scalar phi = 0;
    for (std::size_t e = 0; e < game.resources.size(); ++e) {
        const auto multiset = subgame_multiset(game, state, players, e);
        if (multiset.empty()) continue;
        const auto& a = game.resources[e].coeffs;
        const auto psi = psi_vector(multiset, a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            phi += a[k] * psi[k + 1] / static_cast<unsigned long>(k + 1);
        }
    }
    return phi;
}

Scalar potential(const Game& game, const State& state) {
    return subgame_potential(game, state, PlayerSet::all(game.players.size()));
}

Scalar partial_potential(const Game& game, const State& state, const PlayerSet& subgame,
                         const PlayerSet& part) {
    if (!part.subset_of(subgame)) throw Error("partial potential needs B to be a subset of A");
    return subgame_potential(game, state, subgame) -
           subgame_potential(game, state, subgame.minus(part));
}

Scalar partial_potential(const Game& game, const State& state, const PlayerSet& part) {
    return partial_potential(game, state, PlayerSet::all(game.players.size()), part);
}

const Scalar& sqrt5_upper() {
    static const Scalar value = [] {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, 32);
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), mpz_class(5 * scale * scale).get_mpz_t());
        Scalar s(root + 1, scale);
        s.canonicalize();
        return s;
    }();
    return value;
}

Scalar theta(int d, const Scalar& rho) {
    if (d < 1) throw Error("theta needs d >= 1");
    if (rho < 1) throw Error("theta needs rho >= 1");
    if (d == 1) {
        if (rho > Scalar(11, 10)) throw Error("theta_1 is only defined for rho in [1, 11/10]");
        return (3 + sqrt5_upper()) / 2 + 6 * (rho - 1);
    }
    const auto ud = static_cast<unsigned>(d);
    return rho * pow(rho + 1, ud) * pow(Scalar(d + 1), ud + 1);
}

Scalar xi(const Scalar& eps, int d) {
    if (sgn(eps) <= 0) throw Error("xi needs eps > 0");
    if (d < 1) throw Error("xi needs d >= 1");
    const auto ud = static_cast<unsigned>(d);
    return pow(1 + 1 / eps, ud) * pow(Scalar(d), ud) - 1;
}

}  // namespace psieq
