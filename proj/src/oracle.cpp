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

#include "psieq/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>

#include "psieq/dynamics.hpp"

namespace psieq {

unsigned oracle_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PSIEQ_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    return n;
}

void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& body) {
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(oracle_threads(), count));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            try {
                for (std::uint64_t i; !failed && (i = next++) < count;) body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

StateSpace::StateSpace(const Game& game, std::uint64_t cap) : game_(&game) {
    const auto n = game.players.size();
    stride_.assign(n, 1);
    for (std::size_t u = n; u-- > 0;) {
        const auto& p = game.players[u];
        if (p.is_network()) throw Error("state enumeration needs explicit strategy spaces");
        if (p.strategies.empty()) throw Error("player \"" + p.id + "\" has no strategies");
        stride_[u] = size_;
        if (size_ > cap / p.strategies.size()) {
            throw Error("state count exceeds the enumeration cap of " + std::to_string(cap));
        }
        size_ *= p.strategies.size();
    }
}

std::size_t StateSpace::digit(std::uint64_t index, std::size_t player) const {
    return static_cast<std::size_t>((index / stride_[player]) %
                                    game_->players[player].strategies.size());
}

std::uint64_t StateSpace::with_digit(std::uint64_t index, std::size_t player,
                                     std::size_t value) const {
    return index - digit(index, player) * stride_[player] + value * stride_[player];
}

State StateSpace::at(std::uint64_t index) const {
    State s;
    s.choice.reserve(stride_.size());
    for (std::size_t u = 0; u < stride_.size(); ++u) {
        s.choice.push_back(game_->players[u].strategies[digit(index, u)]);
    }
    return s;
}

std::uint64_t StateSpace::index_of(const State& state) const {
    std::uint64_t index = 0;
    for (std::size_t u = 0; u < stride_.size(); ++u) {
        const auto& list = game_->players[u].strategies;
        auto it = std::find(list.begin(), list.end(), state.choice.at(u));
        if (it == list.end()) throw Error("state is not in the strategy space");
        index += static_cast<std::uint64_t>(it - list.begin()) * stride_[u];
    }
    return index;
}

StateSpace enumerate_states(const Game& game, std::uint64_t cap) { return StateSpace(game, cap); }

std::vector<Strategy> simple_paths(const Game& game, std::size_t player, std::uint64_t cap) {
    const auto& p = game.players.at(player);
    if (!p.is_network() || !game.network) throw Error("player has no network route");
    const auto& net = *game.network;
    std::vector<Strategy> out;
    std::vector<bool> on_path(net.nodes.size(), false);
    std::vector<std::size_t> resources;
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
        if (v == p.route->target) {
            if (out.size() >= cap) throw Error("path count exceeds the enumeration cap");
            out.push_back(make_strategy(resources));
            return;
        }
        on_path[v] = true;
        for (const auto& e : net.edges) {
            if (e.from != v || on_path[e.to]) continue;
            resources.push_back(e.resource);
            walk(e.to);
            resources.pop_back();
        }
        on_path[v] = false;
    };
    walk(p.route->source);
    std::sort(out.begin(), out.end());
    return out;
}

Game explicit_form(const Game& game, std::uint64_t path_cap) {
    Game out = game;
    for (std::size_t u = 0; u < out.players.size(); ++u) {
        if (!out.players[u].is_network()) continue;
        out.players[u].strategies = simple_paths(game, u, path_cap);
        out.players[u].route.reset();
    }
    out.network.reset();
    return out;
}

namespace {

// Per-state rho_achieved (nullopt = unbounded) over the given players.
std::vector<std::optional<Scalar>> state_ratios(const Game& game, const StateSpace& space,
                                                Mode mode) {
    std::vector<std::optional<Scalar>> out(space.size());
    parallel_for(space.size(), [&](std::uint64_t i) {
        out[i] = verify_approx_equilibrium(game, space.at(i), mode).rho_achieved;
    });
    return out;
}

std::vector<Scalar> state_potentials(const Game& game, const StateSpace& space) {
    std::vector<Scalar> out(space.size());
    parallel_for(space.size(), [&](std::uint64_t i) {
        out[i] = LoadProfile(game, space.at(i)).potential();
    });
    return out;
}

}  // namespace

std::vector<State> exact_equilibria(const Game& game, Mode mode, const std::optional<Scalar>& rho,
                                    std::uint64_t cap) {
    const auto space = enumerate_states(game, cap);
    std::vector<State> out;
    if (!rho) {
        for (auto s : space) out.push_back(std::move(s));
        return out;
    }
    const auto ratios = state_ratios(game, space, mode);
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        if (ratios[i] && *ratios[i] <= *rho) out.push_back(space.at(i));
    }
    return out;
}

PotentialMinimum min_potential_state(const Game& game, std::uint64_t cap) {
    const auto space = enumerate_states(game, cap);
    const auto phi = state_potentials(game, space);
    std::uint64_t best = 0;
    for (std::uint64_t i = 1; i < space.size(); ++i) {
        if (phi[i] < phi[best]) best = i;
    }
    return {space.at(best), phi[best]};
}

Scalar measure_stretch(const Game& game, const Scalar& rho, std::uint64_t cap) {
    const auto space = enumerate_states(game, cap);
    const auto phi = state_potentials(game, space);
    const auto ratios = state_ratios(game, space, Mode::psi);
    const Scalar phi_min = *std::min_element(phi.begin(), phi.end());
    if (sgn(phi_min) <= 0) throw Error("degenerate game: the minimum potential is 0");
    Scalar worst = 0;
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        if (ratios[i] && *ratios[i] <= rho && phi[i] > worst) worst = phi[i];
    }
    return worst / phi_min;
}

DynamicsGraph dynamics_graph(const Game& game, Mode mode, std::uint64_t cap) {
    const auto space = enumerate_states(game, cap);
    const auto n = game.players.size();
    DynamicsGraph graph;
    graph.nodes = space.size();
    graph.successors.resize(space.size());
    parallel_for(space.size(), [&](std::uint64_t i) {
        const auto state = space.at(i);
        const LoadProfile loads(game, state);
        auto& succ = graph.successors[i];
        for (std::size_t u = 0; u < n; ++u) {
            const auto& current = state.choice[u];
            const auto prices = resource_prices(game, loads, u, &current, mode);
            auto price_of = [&](const Strategy& s) {
                Scalar c = 0;
                for (auto e : s.resources) c += prices[e];
                return c;
            };
            const Scalar now = price_of(current);
            const auto& list = game.players[u].strategies;
            for (std::size_t k = 0; k < list.size(); ++k) {
                if (price_of(list[k]) < now) succ.push_back(space.with_digit(i, u, k));
            }
        }
    });
    for (std::uint64_t i = 0; i < graph.nodes; ++i) {
        graph.edges += graph.successors[i].size();
        if (graph.successors[i].empty()) graph.sinks.push_back(i);
    }

    // Iterative DFS; a grey successor closes a cycle.
    enum : char { white, grey, black };
    std::vector<char> color(graph.nodes, white);
    std::vector<std::pair<std::uint64_t, std::size_t>> stack;
    for (std::uint64_t root = 0; root < graph.nodes && graph.acyclic; ++root) {
        if (color[root] != white) continue;
        stack.push_back({root, 0});
        color[root] = grey;
        while (!stack.empty() && graph.acyclic) {
            auto& [v, next] = stack.back();
            if (next == graph.successors[v].size()) {
                color[v] = black;
                stack.pop_back();
                continue;
            }
            const auto w = graph.successors[v][next++];
            if (color[w] == white) {
                color[w] = grey;
                stack.push_back({w, 0});
            } else if (color[w] == grey) {
                graph.acyclic = false;
                auto it = std::find_if(stack.begin(), stack.end(),
                                       [&](const auto& frame) { return frame.first == w; });
                for (; it != stack.end(); ++it) graph.cycle_witness.push_back(it->first);
                graph.cycle_witness.push_back(w);
            }
        }
        stack.clear();
    }
    return graph;
}

PartialStretchReport check_partial_stretch(const Game& game, const Scalar& rho,
                                           std::size_t samples, std::uint64_t seed,
                                           std::uint64_t cap) {
    const auto space = enumerate_states(game, cap);
    const auto n = game.players.size();
    const Scalar bound = theta(game.degree, rho);

    // Per-state, per-player best-deviation ratios in the Psi-game.
    std::vector<std::vector<std::optional<Scalar>>> ratios(space.size());
    parallel_for(space.size(), [&](std::uint64_t i) {
        const auto report = verify_approx_equilibrium(game, space.at(i), Mode::psi);
        for (const auto& r : report.players) ratios[i].push_back(r.ratio);
    });

    PartialStretchReport report;
    std::mt19937_64 rng(seed);
    for (std::size_t sample = 0; sample < samples; ++sample) {
        PlayerSet part = PlayerSet::none(n);
        for (std::size_t u = 0; u < n; ++u) {
            if (rng() & 1) part.insert(u);
        }
        const auto members = part.members();
        std::vector<std::uint64_t> candidates;
        for (std::uint64_t i = 0; i < space.size(); ++i) {
            bool ok = true;
            for (auto u : members) {
                if (!ratios[i][u] || *ratios[i][u] > rho) {
                    ok = false;
                    break;
                }
            }
            if (ok) candidates.push_back(i);
        }
        if (candidates.empty()) {
            report.violations.push_back("sample " + std::to_string(sample) +
                                        ": no state is an approximate equilibrium for R");
            continue;
        }
        const auto pick = candidates[rng() % candidates.size()];
        const auto state = space.at(pick);
        const Scalar lhs = partial_potential(game, state, part);
        ++report.samples;

        // Every S* agreeing with S outside R: odometer over the digits of R.
        std::vector<std::size_t> digits(members.size(), 0);
        for (;;) {
            std::uint64_t idx = pick;
            for (std::size_t k = 0; k < members.size(); ++k) {
                idx = space.with_digit(idx, members[k], digits[k]);
            }
            const Scalar rhs = bound * partial_potential(game, space.at(idx), part);
            ++report.comparisons;
            if (lhs > rhs) {
                report.violations.push_back("sample " + std::to_string(sample) + ": Phi_R(S) = " +
                                            to_string(lhs) + " > theta * Phi_R(S*) = " +
                                            to_string(rhs));
            }
            std::size_t k = 0;
            while (k < members.size() &&
                   ++digits[k] == game.players[members[k]].strategies.size()) {
                digits[k++] = 0;
            }
            if (k == members.size()) break;
        }
    }
    return report;
}

}  // namespace psieq
