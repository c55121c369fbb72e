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

#ifndef PSIEQ_TESTS_SUPPORT_HPP
#define PSIEQ_TESTS_SUPPORT_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "psieq/game.hpp"
#include "psieq/generator.hpp"
#include "psieq/scalar.hpp"

namespace psieq::test {

inline Scalar q(const char* text) { return parse_rational(text); }

// Builds explicit games by hand: resources are named r0, r1, ... and players u0, u1, ...
class Builder {
public:
    explicit Builder(int degree) { game_.degree = degree; }

    Builder& resource(std::initializer_list<const char*> coeffs) {
        Resource r;
        r.id = "r" + std::to_string(game_.resources.size());
        for (const char* c : coeffs) r.coeffs.push_back(q(c));
        game_.resources.push_back(std::move(r));
        return *this;
    }

    Builder& player(const char* weight, std::initializer_list<std::initializer_list<std::size_t>> strategies) {
        Player p;
        p.id = "u" + std::to_string(game_.players.size());
        p.weight = q(weight);
        for (auto s : strategies) p.strategies.push_back(make_strategy(std::vector<std::size_t>(s)));
        game_.players.push_back(std::move(p));
        return *this;
    }

    Game build() const { return game_; }

private:
    Game game_;
};

// State picking strategy index k_u for every player.
inline State pick(const Game& game, std::initializer_list<std::size_t> indices) {
    State s;
    std::size_t u = 0;
    for (auto k : indices) s.choice.push_back(game.players.at(u++).strategies.at(k));
    return s;
}

// Psi_k by summing every degree-k monomial, independent of the insertion recurrence.
inline Scalar psi_by_monomials(const std::vector<Scalar>& a, unsigned k) {
    if (a.empty()) return k == 0 ? Scalar(1) : Scalar(0);
    Scalar total = 0;
    auto rec = [&](auto&& self, std::size_t i, unsigned left, const Scalar& prod) -> void {
        if (i + 1 == a.size()) {
            total += prod * pow(a[i], left);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) self(self, i + 1, left - e, prod * pow(a[i], e));
    };
    rec(rec, 0, k, Scalar(1));
    return Scalar(factorial(k)) * total;
}

inline Scalar load(const std::vector<Scalar>& a) {
    Scalar s = 0;
    for (const auto& x : a) s += x;
    return s;
}

// c_u straight from the definition: w_u sum over e in s_u of f_e(L).
inline Scalar naive_cost_weighted(const Game& game, const State& state, std::size_t u) {
    Scalar total = 0;
    for (auto e : state.choice[u].resources) {
        Scalar l = 0;
        for (std::size_t v = 0; v < game.players.size(); ++v) {
            if (state.choice[v].contains(e)) l += game.players[v].weight;
        }
        const auto& a = game.resources[e].coeffs;
        for (std::size_t k = 0; k < a.size(); ++k) total += a[k] * pow(l, static_cast<unsigned>(k));
    }
    return game.players[u].weight * total;
}

inline Scalar naive_cost_psi(const Game& game, const State& state, std::size_t u) {
    Scalar total = 0;
    for (auto e : state.choice[u].resources) {
        std::vector<Scalar> ne;
        for (std::size_t v = 0; v < game.players.size(); ++v) {
            if (state.choice[v].contains(e)) ne.push_back(game.players[v].weight);
        }
        const auto& a = game.resources[e].coeffs;
        for (std::size_t k = 0; k < a.size(); ++k) {
            total += a[k] * psi_by_monomials(ne, static_cast<unsigned>(k));
        }
    }
    return game.players[u].weight * total;
}

inline Scalar naive_potential(const Game& game, const State& state) {
    Scalar total = 0;
    for (std::size_t e = 0; e < game.resources.size(); ++e) {
        std::vector<Scalar> ne;
        for (std::size_t v = 0; v < game.players.size(); ++v) {
            if (state.choice[v].contains(e)) ne.push_back(game.players[v].weight);
        }
        const auto& a = game.resources[e].coeffs;
        for (std::size_t k = 0; k < a.size(); ++k) {
            total += a[k] / Scalar(static_cast<long>(k + 1)) * psi_by_monomials(ne, static_cast<unsigned>(k + 1));
        }
    }
    return total;
}

inline Scalar random_rational(std::mt19937_64& rng, unsigned num_max, unsigned den_max) {
    std::uniform_int_distribution<unsigned> num(0, num_max), den(1, den_max);
    Scalar x(num(rng), den(rng));
    x.canonicalize();
    return x;
}

// Small random explicit game with rational weights, sized for exhaustive checks.
inline GeneratedInstance small_game(std::mt19937_64& rng, int degree, std::size_t max_players = 4) {
    GeneratorSpec spec;
    spec.family = Family::random;
    spec.players = std::uniform_int_distribution<std::size_t>(1, max_players)(rng);
    spec.degree = degree;
    spec.resources = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    spec.strategies = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    spec.max_strategy_size = 2;
    spec.weight_max = 4;
    spec.weight_den = 3;
    spec.coeff_max = 3;
    return generate(spec, rng());
}

}  // namespace psieq::test

#endif  // PSIEQ_TESTS_SUPPORT_HPP
