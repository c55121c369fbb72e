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

#include "psieq/io.hpp"

#include <fstream>
#include <sstream>

namespace psieq {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::string out;
    for (const auto& e : errors) {
        if (!out.empty()) out += "; ";
        out += e;
    }
    return out;
}

// Collects errors while walking the document; `at` is the current JSON path.
class Reader {
public:
    std::vector<std::string> errors;

    void fail(const std::string& at, const std::string& what) { errors.push_back(at + ": " + what); }

    const Json* field(const Json& obj, const std::string& at, const char* key, bool required = true) {
        if (!obj.is_object()) {
            fail(at, "expected an object");
            return nullptr;
        }
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(at, std::string("missing key \"") + key + "\"");
            return nullptr;
        }
        return &*it;
    }

    std::optional<std::string> string(const Json* j, const std::string& at) {
        if (j == nullptr) return std::nullopt;
        if (!j->is_string()) {
            fail(at, "expected a string");
            return std::nullopt;
        }
        return j->get<std::string>();
    }

    std::optional<Scalar> rational(const Json* j, const std::string& at) {
        if (j == nullptr) return std::nullopt;
        if (j->is_number_integer()) {
            return Scalar(mpz_class(j->dump(), 10));
        }
        if (j->is_string()) {
            if (auto x = try_parse_rational(j->get<std::string>())) return x;
            fail(at, "malformed rational \"" + j->get<std::string>() + "\"");
            return std::nullopt;
        }
        fail(at, "expected a rational string");
        return std::nullopt;
    }

    const Json* array(const Json* j, const std::string& at) {
        if (j == nullptr) return nullptr;
        if (!j->is_array()) {
            fail(at, "expected an array");
            return nullptr;
        }
        return j;
    }
};

}  // namespace

ParseError::ParseError(std::vector<std::string> errors)
    : Error(join_errors(errors)), errors_(std::move(errors)) {}

Game parse_instance(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError({std::string("syntax error: ") + e.what()});
    }
    Reader rd;
    Game game;
    if (!doc.is_object()) throw ParseError({"$: expected an object"});

    if (const auto* d = rd.field(doc, "$", "degree")) {
        if (d->is_number_integer()) {
            game.degree = d->get<int>();
        } else {
            rd.fail("$.degree", "expected an integer");
        }
    }

    if (const auto* list = rd.array(rd.field(doc, "$", "resources"), "$.resources")) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const auto at = "$.resources[" + std::to_string(i) + "]";
            const auto& r = (*list)[i];
            Resource res;
            res.id = rd.string(rd.field(r, at, "id"), at + ".id").value_or("");
            if (const auto* cs = rd.array(rd.field(r, at, "coeffs"), at + ".coeffs")) {
                for (std::size_t k = 0; k < cs->size(); ++k) {
                    auto x = rd.rational(&(*cs)[k], at + ".coeffs[" + std::to_string(k) + "]");
                    res.coeffs.push_back(x.value_or(Scalar(0)));
                }
            }
            game.resources.push_back(std::move(res));
        }
    }

    if (const auto* net = rd.field(doc, "$", "network", false)) {
        Network network;
        if (const auto* nodes = rd.array(rd.field(*net, "$.network", "nodes"), "$.network.nodes")) {
            for (std::size_t i = 0; i < nodes->size(); ++i) {
                network.nodes.push_back(
                    rd.string(&(*nodes)[i], "$.network.nodes[" + std::to_string(i) + "]").value_or(""));
            }
        }
        game.network = network;
        if (const auto* edges = rd.array(rd.field(*net, "$.network", "edges"), "$.network.edges")) {
            for (std::size_t i = 0; i < edges->size(); ++i) {
                const auto at = "$.network.edges[" + std::to_string(i) + "]";
                const auto& e = (*edges)[i];
                Edge edge;
                edge.id = rd.string(rd.field(e, at, "id"), at + ".id").value_or("");
                auto node_ref = [&](const char* key, std::size_t& out) {
                    if (auto id = rd.string(rd.field(e, at, key), at + "." + key)) {
                        if (auto idx = game.find_node(*id)) {
                            out = *idx;
                        } else {
                            rd.fail(at + "." + key, "unknown node \"" + *id + "\"");
                        }
                    }
                };
                node_ref("from", edge.from);
                node_ref("to", edge.to);
                if (auto id = rd.string(rd.field(e, at, "resource"), at + ".resource")) {
                    if (auto idx = game.find_resource(*id)) {
                        edge.resource = *idx;
                    } else {
                        rd.fail(at + ".resource", "unknown resource \"" + *id + "\"");
                    }
                }
                game.network->edges.push_back(std::move(edge));
            }
        }
    }

    if (const auto* list = rd.array(rd.field(doc, "$", "players"), "$.players")) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const auto at = "$.players[" + std::to_string(i) + "]";
            const auto& p = (*list)[i];
            Player player;
            player.id = rd.string(rd.field(p, at, "id"), at + ".id").value_or("");
            player.weight = rd.rational(rd.field(p, at, "weight"), at + ".weight").value_or(Scalar(0));
            const bool routed = p.is_object() && (p.contains("source") || p.contains("target"));
            if (routed) {
                Route route;
                bool ok = true;
                for (auto [key, slot] : {std::pair{"source", &route.source}, {"target", &route.target}}) {
                    auto id = rd.string(rd.field(p, at, key), at + "." + key);
                    if (!id) {
                        ok = false;
                        continue;
                    }
                    if (auto idx = game.find_node(*id)) {
                        *slot = *idx;
                    } else {
                        rd.fail(at + "." + key, "unknown node \"" + *id + "\"");
                        ok = false;
                    }
                }
                if (ok) player.route = route;
            } else if (const auto* ss = rd.array(rd.field(p, at, "strategies"), at + ".strategies")) {
                for (std::size_t k = 0; k < ss->size(); ++k) {
                    const auto sat = at + ".strategies[" + std::to_string(k) + "]";
                    const auto* s = rd.array(&(*ss)[k], sat);
                    if (s == nullptr) continue;
                    if (s->empty()) {
                        rd.fail(sat, "a strategy must be a non-empty set of resources");
                        continue;
                    }
                    std::vector<std::size_t> resources;
                    bool ok = true;
                    for (std::size_t j = 0; j < s->size(); ++j) {
                        auto id = rd.string(&(*s)[j], sat + "[" + std::to_string(j) + "]");
                        if (!id) {
                            ok = false;
                        } else if (auto idx = game.find_resource(*id)) {
                            resources.push_back(*idx);
                        } else {
                            rd.fail(sat, "unknown resource \"" + *id + "\"");
                            ok = false;
                        }
                    }
                    if (!ok) continue;
                    try {
                        player.strategies.push_back(make_strategy(std::move(resources)));
                    } catch (const Error& e) {
                        rd.fail(sat, e.what());
                    }
                }
            }
            game.players.push_back(std::move(player));
        }
    }

    if (!rd.errors.empty()) throw ParseError(rd.errors);
    if (auto violations = validate(game); !violations.empty()) throw ParseError(violations);
    return game;
}

Json instance_to_json(const Game& game) {
    Json doc;
    doc["degree"] = game.degree;
    doc["resources"] = Json::array();
    for (const auto& r : game.resources) {
        Json coeffs = Json::array();
        for (const auto& a : r.coeffs) coeffs.push_back(to_string(a));
        doc["resources"].push_back({{"id", r.id}, {"coeffs", coeffs}});
    }
    doc["players"] = Json::array();
    for (const auto& p : game.players) {
        Json jp{{"id", p.id}, {"weight", to_string(p.weight)}};
        if (p.is_network()) {
            jp["source"] = game.network->nodes.at(p.route->source);
            jp["target"] = game.network->nodes.at(p.route->target);
        } else {
            jp["strategies"] = Json::array();
            for (const auto& s : p.strategies) {
                Json ids = Json::array();
                for (auto e : s.resources) ids.push_back(game.resources.at(e).id);
                jp["strategies"].push_back(ids);
            }
        }
        doc["players"].push_back(jp);
    }
    if (game.network) {
        Json net{{"nodes", game.network->nodes}, {"edges", Json::array()}};
        for (const auto& e : game.network->edges) {
            net["edges"].push_back({{"id", e.id},
                                    {"from", game.network->nodes.at(e.from)},
                                    {"to", game.network->nodes.at(e.to)},
                                    {"resource", game.resources.at(e.resource).id}});
        }
        doc["network"] = net;
    }
    return doc;
}

std::string serialize_instance(const Game& game) { return instance_to_json(game).dump(2) + "\n"; }

State parse_state(const Game& game, std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError({std::string("syntax error: ") + e.what()});
    }
    if (doc.is_object() && doc.contains("final_state")) doc = doc["final_state"];
    if (!doc.is_object() || !doc.contains("strategies") || !doc["strategies"].is_object()) {
        throw ParseError({"$: expected {\"strategies\": {player-id: strategy}}"});
    }
    const auto& map = doc["strategies"];
    std::vector<std::string> errors;
    State state;
    for (std::size_t u = 0; u < game.players.size(); ++u) {
        const auto& p = game.players[u];
        const auto at = "$.strategies." + p.id;
        auto it = map.find(p.id);
        if (it == map.end()) {
            errors.push_back(at + ": missing");
            state.choice.emplace_back();
            continue;
        }
        if (it->is_number_unsigned() && !p.is_network()) {
            const auto k = it->get<std::size_t>();
            if (k >= p.strategies.size()) {
                errors.push_back(at + ": strategy index out of range");
                state.choice.emplace_back();
            } else {
                state.choice.push_back(p.strategies[k]);
            }
            continue;
        }
        if (!it->is_array()) {
            errors.push_back(at + ": expected a strategy index or an id list");
            state.choice.emplace_back();
            continue;
        }
        std::vector<std::size_t> resources;
        for (const auto& id : *it) {
            if (!id.is_string()) {
                errors.push_back(at + ": ids must be strings");
                continue;
            }
            const auto name = id.get<std::string>();
            std::optional<std::size_t> r;
            if (p.is_network()) {
                const auto& edges = game.network->edges;
                for (const auto& e : edges) {
                    if (e.id == name) r = e.resource;
                }
            }
            if (!r) r = game.find_resource(name);
            if (!r) {
                errors.push_back(at + ": unknown id \"" + name + "\"");
                continue;
            }
            resources.push_back(*r);
        }
        try {
            state.choice.push_back(make_strategy(std::move(resources)));
        } catch (const Error& e) {
            errors.push_back(at + ": " + e.what());
            state.choice.emplace_back();
        }
    }
    if (!errors.empty()) throw ParseError(errors);
    if (auto violations = validate_state(game, state); !violations.empty()) {
        throw ParseError(violations);
    }
    return state;
}

Json state_to_json(const Game& game, const State& state) {
    Json map = Json::object();
    for (std::size_t u = 0; u < game.players.size(); ++u) {
        const auto& p = game.players[u];
        const auto& s = state.choice.at(u);
        if (p.is_network()) {
            Json path = Json::array();
            for (auto e : route_edges(game, *p.route, s)) path.push_back(game.network->edges[e].id);
            map[p.id] = path;
        } else {
            const auto it = std::find(p.strategies.begin(), p.strategies.end(), s);
            map[p.id] = static_cast<std::size_t>(it - p.strategies.begin());
        }
    }
    return Json{{"strategies", map}};
}

Json rational_json(const Scalar& x) { return {{"exact", to_string(x)}, {"decimal", to_decimal(x)}}; }

Scalar rational_from_json(const Json& j) {
    if (j.is_object() && j.contains("exact")) return parse_rational(j["exact"].get<std::string>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error("expected a rational");
}

Json params_to_json(const SolverParams& params) {
    Json b = Json::array();
    for (const auto& x : params.b) b.push_back(rational_json(x));
    return {{"mode", to_string(params.mode)},
            {"degree", params.degree},
            {"players", params.players},
            {"gamma", rational_json(params.gamma)},
            {"c_min", rational_json(params.c_min)},
            {"c_max", rational_json(params.c_max)},
            {"m", params.m},
            {"g", rational_json(params.g)},
            {"q", rational_json(params.q)},
            {"p", rational_json(params.p)},
            {"b", b},
            {"move_cap", params.move_cap},
            {"move_bound", rational_json(params.move_bound())},
            {"policy", to_string(params.policy)},
            {"forced", params.forced}};
}

Json move_to_json(const Game& game, const MoveRecord& move) {
    auto ids = [&](const Strategy& s) {
        Json out = Json::array();
        for (auto e : s.resources) out.push_back(game.resources.at(e).id);
        return out;
    };
    return {{"phase", move.phase},
            {"player", game.players.at(move.player).id},
            {"kind", to_string(move.kind)},
            {"from", ids(move.from)},
            {"to", ids(move.to)},
            {"cost_before", rational_json(move.cost_before)},
            {"cost_after", rational_json(move.cost_after)},
            {"psi_cost_after", rational_json(move.psi_cost_after)},
            {"potential_before", rational_json(move.potential_before)},
            {"potential_after", rational_json(move.potential_after)}};
}

namespace {

Json ratio_json(const std::optional<Scalar>& r) {
    if (!r) return "unbounded";
    return rational_json(*r);
}

}  // namespace

Json equilibrium_to_json(const Game& game, const EquilibriumReport& report) {
    Json players = Json::array();
    for (const auto& r : report.players) {
        players.push_back({{"player", game.players.at(r.player).id},
                           {"cost", rational_json(r.cost)},
                           {"best_cost", rational_json(r.best_cost)},
                           {"ratio", ratio_json(r.ratio)}});
    }
    return {{"rho_achieved", ratio_json(report.rho_achieved)}, {"players", players}};
}

Json solve_report(const Game& game, const SolverParams& params, const SolveResult& result,
                  const EquilibriumReport& verification, const AuditReport& audit) {
    Json phases = Json::array();
    for (const auto& ph : result.log.phases) {
        Json movers = Json::array();
        for (auto u : ph.movers) movers.push_back(game.players[u].id);
        Json fin = Json::array();
        for (auto u : ph.finalized) fin.push_back(game.players[u].id);
        phases.push_back({{"phase", ph.phase},
                          {"moves", ph.move_count},
                          {"movers", movers},
                          {"finalized", fin},
                          {"potential_end", rational_json(potential(game, ph.end))}});
    }
    Json report{{"mode", to_string(params.mode)},
                {"gamma", rational_json(params.gamma)},
                {"params", params_to_json(params)},
                {"moves", result.log.moves.size()},
                {"phases", phases},
                {"rho_achieved", ratio_json(verification.rho_achieved)},
                {"rho_bound", rational_json(params.rho_bound())},
                {"rho_bound_weighted", rational_json(params.rho_bound_weighted())},
                {"audit", {{"passed", audit.passed}, {"checks", audit.checks}, {"failures", audit.failures}}},
                {"final_state", state_to_json(game, result.final_state)},
                {"final_potential", rational_json(potential(game, result.final_state))}};
    if (params.forced) report["guarantees"] = "void";
    return report;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write \"" + path + "\"");
    out << text;
    if (!out) throw Error("failed writing \"" + path + "\"");
}

}  // namespace psieq
