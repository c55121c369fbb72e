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

#include "psieq/generator.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>

namespace psieq {

const char* to_string(Family family) {
    switch (family) {
        case Family::random: return "random";
        case Family::parallel: return "parallel";
        case Family::grid: return "grid";
        case Family::series_parallel: return "series-parallel";
    }
    return "?";
}

Family parse_family(std::string_view text) {
    if (text == "random") return Family::random;
    if (text == "parallel") return Family::parallel;
    if (text == "grid") return Family::grid;
    if (text == "series-parallel" || text == "sp") return Family::series_parallel;
    throw Error("unknown family \"" + std::string(text) + "\"");
}

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Scalar random_weight(const GeneratorSpec& spec, Rng& rng) {
    Scalar w(static_cast<unsigned long>(uniform(rng, 1, spec.weight_max)),
             static_cast<unsigned long>(uniform(rng, 1, spec.weight_den)));
    w.canonicalize();
    const auto shift = uniform(rng, 0, spec.weight_spread);
    mpz_class scale = 1;
    scale <<= static_cast<mp_bitcnt_t>(shift);
    return w * Scalar(scale);
}

Resource random_resource(const GeneratorSpec& spec, const std::string& id, Rng& rng) {
    Resource r{id, {}};
    std::bernoulli_distribution nonzero(spec.density);
    bool any = false;
    for (int k = 0; k <= spec.degree; ++k) {
        if (nonzero(rng)) {
            r.coeffs.emplace_back(static_cast<unsigned long>(uniform(rng, 1, spec.coeff_max)));
            any = true;
        } else {
            r.coeffs.emplace_back(0);
        }
    }
    if (!any) {
        r.coeffs[uniform(rng, 0, static_cast<std::size_t>(spec.degree))] =
            Scalar(static_cast<unsigned long>(uniform(rng, 1, spec.coeff_max)));
    }
    return r;
}

double subset_count(std::size_t n, std::size_t max_size) {
    double total = 0;
    double c = 1;
    for (std::size_t k = 1; k <= std::min(n, max_size); ++k) {
        c = c * static_cast<double>(n - k + 1) / static_cast<double>(k);
        total += c;
    }
    return total;
}

void check_common(const GeneratorSpec& spec) {
    if (spec.players == 0) throw Error("infeasible spec: need at least one player");
    if (spec.degree < 1) throw Error("infeasible spec: degree must be at least 1");
    if (spec.weight_max < 1 || spec.weight_den < 1 || spec.coeff_max < 1) {
        throw Error("infeasible spec: weight and coefficient ranges must be positive");
    }
    if (spec.density < 0 || spec.density > 1) throw Error("infeasible spec: density outside [0, 1]");
}

GeneratedInstance random_explicit(const GeneratorSpec& spec, Rng& rng) {
    if (spec.resources == 0 || spec.strategies == 0 || spec.max_strategy_size == 0) {
        throw Error("infeasible spec: need resources and strategies");
    }
    if (subset_count(spec.resources, spec.max_strategy_size) < static_cast<double>(spec.strategies)) {
        throw Error("infeasible spec: not enough distinct resource subsets");
    }
    GeneratedInstance out;
    auto& game = out.game;
    game.degree = spec.degree;
    for (std::size_t e = 0; e < spec.resources; ++e) {
        game.resources.push_back(random_resource(spec, "r" + std::to_string(e), rng));
    }
    for (std::size_t u = 0; u < spec.players; ++u) {
        Player p{"u" + std::to_string(u), random_weight(spec, rng), {}, std::nullopt};
        std::set<Strategy> seen;
        while (p.strategies.size() < spec.strategies) {
            const auto size = uniform(rng, 1, std::min(spec.resources, spec.max_strategy_size));
            std::vector<std::size_t> all(spec.resources);
            for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
            std::shuffle(all.begin(), all.end(), rng);
            all.resize(size);
            auto s = make_strategy(std::move(all));
            if (seen.insert(s).second) p.strategies.push_back(std::move(s));
        }
        out.initial.choice.push_back(p.strategies[uniform(rng, 0, p.strategies.size() - 1)]);
        game.players.push_back(std::move(p));
    }
    return out;
}

GeneratedInstance parallel_links(const GeneratorSpec& spec, Rng& rng) {
    if (spec.resources == 0) throw Error("infeasible spec: need at least one link");
    GeneratedInstance out;
    auto& game = out.game;
    game.degree = spec.degree;
    for (std::size_t e = 0; e < spec.resources; ++e) {
        game.resources.push_back(random_resource(spec, "r" + std::to_string(e), rng));
    }
    for (std::size_t u = 0; u < spec.players; ++u) {
        Player p{"u" + std::to_string(u), random_weight(spec, rng), {}, std::nullopt};
        for (std::size_t e = 0; e < spec.resources; ++e) p.strategies.push_back(Strategy{{e}});
        out.initial.choice.push_back(p.strategies[uniform(rng, 0, spec.resources - 1)]);
        game.players.push_back(std::move(p));
    }
    return out;
}

void add_edge(Game& game, std::size_t from, std::size_t to, const GeneratorSpec& spec, Rng& rng) {
    const auto idx = game.resources.size();
    const auto id = "e" + std::to_string(idx);
    game.resources.push_back(random_resource(spec, id, rng));
    game.network->edges.push_back(Edge{id, from, to, idx});
}

// Random walk over edges whose head still reaches the target; simple on DAGs.
Strategy random_path(const Game& game, const Route& route, Rng& rng) {
    const auto& net = *game.network;
    std::vector<bool> reaches(net.nodes.size(), false);
    std::queue<std::size_t> todo;
    reaches[route.target] = true;
    todo.push(route.target);
    while (!todo.empty()) {
        const auto v = todo.front();
        todo.pop();
        for (const auto& e : net.edges) {
            if (e.to == v && !reaches[e.from]) {
                reaches[e.from] = true;
                todo.push(e.from);
            }
        }
    }
    std::vector<std::size_t> resources;
    for (std::size_t v = route.source; v != route.target;) {
        std::vector<const Edge*> options;
        for (const auto& e : net.edges) {
            if (e.from == v && reaches[e.to]) options.push_back(&e);
        }
        if (options.empty()) throw Error("generated network has no source-target path");
        const auto* e = options[uniform(rng, 0, options.size() - 1)];
        resources.push_back(e->resource);
        v = e->to;
    }
    return make_strategy(std::move(resources));
}

GeneratedInstance grid_network(const GeneratorSpec& spec, Rng& rng) {
    if (spec.rows * spec.cols < 2) throw Error("infeasible spec: grid needs at least two nodes");
    GeneratedInstance out;
    auto& game = out.game;
    game.degree = spec.degree;
    game.network.emplace();
    auto node = [&](std::size_t r, std::size_t c) { return r * spec.cols + c; };
    for (std::size_t r = 0; r < spec.rows; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) {
            game.network->nodes.push_back("n" + std::to_string(r) + "_" + std::to_string(c));
        }
    }
    for (std::size_t r = 0; r < spec.rows; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) {
            if (c + 1 < spec.cols) add_edge(game, node(r, c), node(r, c + 1), spec, rng);
            if (r + 1 < spec.rows) add_edge(game, node(r, c), node(r + 1, c), spec, rng);
        }
    }
    for (std::size_t u = 0; u < spec.players; ++u) {
        std::size_t r1, c1, r2, c2;
        do {
            r1 = uniform(rng, 0, spec.rows - 1);
            c1 = uniform(rng, 0, spec.cols - 1);
            r2 = uniform(rng, r1, spec.rows - 1);
            c2 = uniform(rng, c1, spec.cols - 1);
        } while (r1 == r2 && c1 == c2);
        Player p{"u" + std::to_string(u), random_weight(spec, rng), {},
                 Route{node(r1, c1), node(r2, c2)}};
        out.initial.choice.push_back(random_path(game, *p.route, rng));
        game.players.push_back(std::move(p));
    }
    return out;
}

GeneratedInstance series_parallel(const GeneratorSpec& spec, Rng& rng) {
    if (spec.sp_edges == 0) throw Error("infeasible spec: need at least one edge");
    struct Arc {
        std::size_t from, to;
    };
    std::vector<Arc> arcs{{0, 1}};
    std::size_t nodes = 2;
    while (arcs.size() < spec.sp_edges) {
        const auto pick = uniform(rng, 0, arcs.size() - 1);
        if (uniform(rng, 0, 1) == 0) {
            const auto mid = nodes++;
            const Arc tail{mid, arcs[pick].to};
            arcs[pick].to = mid;
            arcs.push_back(tail);
        } else {
            arcs.push_back(arcs[pick]);
        }
    }
    GeneratedInstance out;
    auto& game = out.game;
    game.degree = spec.degree;
    game.network.emplace();
    for (std::size_t v = 0; v < nodes; ++v) {
        game.network->nodes.push_back(v == 0 ? "s" : v == 1 ? "t" : "v" + std::to_string(v));
    }
    for (const auto& a : arcs) add_edge(game, a.from, a.to, spec, rng);
    for (std::size_t u = 0; u < spec.players; ++u) {
        Player p{"u" + std::to_string(u), random_weight(spec, rng), {}, Route{0, 1}};
        out.initial.choice.push_back(random_path(game, *p.route, rng));
        game.players.push_back(std::move(p));
    }
    return out;
}

}  // namespace

GeneratedInstance generate(const GeneratorSpec& spec, std::uint64_t seed) {
    check_common(spec);
    Rng rng(seed);
    switch (spec.family) {
        case Family::random: return random_explicit(spec, rng);
        case Family::parallel: return parallel_links(spec, rng);
        case Family::grid: return grid_network(spec, rng);
        case Family::series_parallel: return series_parallel(spec, rng);
    }
    throw Error("unknown family");
}

}  // namespace psieq
