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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "psieq/dynamics.hpp"
#include "psieq/generator.hpp"
#include "psieq/io.hpp"
#include "psieq/oracle.hpp"
#include "psieq/solver.hpp"

using namespace psieq;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

// Thrown for bad flags or unreadable input; maps to exit code 2.
struct InputError : Error {
    using Error::Error;
};

void emit(const std::string& path, const Json& doc) {
    const auto text = doc.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::string read_input(const std::string& path) {
    try {
        return read_file(path);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

template <class F>
auto input_flag(F&& parse) {
    try {
        return parse();
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

Game load_game(const std::string& path) {
    if (path.empty()) throw InputError("--input is required");
    return parse_instance(read_input(path));
}

State initial_state(const Game& game, const std::string& path, Mode mode) {
    if (!path.empty()) return parse_state(game, read_input(path));
    State state;
    for (std::size_t u = 0; u < game.players.size(); ++u) {
        state.choice.push_back(solo_best_response(game, u, mode).strategy);
    }
    return state;
}

Scalar rational_flag(const std::string& text, const char* flag) {
    auto x = try_parse_rational(text);
    if (!x) throw InputError(std::string(flag) + ": malformed rational \"" + text + "\"");
    return *x;
}

std::string decimal(const std::optional<Scalar>& x) { return x ? to_decimal(*x) : "unbounded"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate equilibria of weighted congestion games"};
    app.require_subcommand(1);

    std::string input, output, state_path, log_path, trajectory_path;
    std::string mode_text = "psi", gamma_text, policy_text = "maxcost", rho_text;
    std::uint64_t seed = 1, move_cap = 10'000'000, cap = kDefaultEnumerationCap;
    std::size_t samples = 50;
    bool force = false;

    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    GeneratorSpec spec;
    std::string family_text = "random", state_out;
    gen->add_option("--family", family_text, "random|parallel|grid|series-parallel");
    gen->add_option("--players", spec.players);
    gen->add_option("--degree", spec.degree);
    gen->add_option("--resources", spec.resources);
    gen->add_option("--strategies", spec.strategies);
    gen->add_option("--max-strategy-size", spec.max_strategy_size);
    gen->add_option("--rows", spec.rows);
    gen->add_option("--cols", spec.cols);
    gen->add_option("--sp-edges", spec.sp_edges);
    gen->add_option("--weight-max", spec.weight_max);
    gen->add_option("--weight-den", spec.weight_den);
    gen->add_option("--weight-spread", spec.weight_spread, "Extra factor-2 weight scale steps");
    gen->add_option("--coeff-max", spec.coeff_max);
    gen->add_option("--density", spec.density);
    gen->add_option("--seed", seed);
    gen->add_option("--output", output, "Instance file (default stdout)");
    gen->add_option("--state-output", state_out, "Initial state file");

    auto* solve_cmd = app.add_subcommand("solve", "Compute an approximate equilibrium");
    solve_cmd->add_option("--input", input)->required();
    solve_cmd->add_option("--state", state_path, "Initial state (default: solo best responses)");
    solve_cmd->add_option("--mode", mode_text, "psi|weighted");
    solve_cmd->add_option("--gamma", gamma_text)->required();
    solve_cmd->add_option("--move-cap", move_cap);
    solve_cmd->add_flag("--force", force, "Accept gamma outside the admissible range");
    solve_cmd->add_option("--policy", policy_text, "maxcost|minid");
    solve_cmd->add_option("--output", output, "Report file (default stdout)");
    solve_cmd->add_option("--log", log_path, "Move log, one JSON object per line");
    solve_cmd->add_option("--trajectory", trajectory_path, "Tab-separated potential trajectory");

    auto* verify_cmd = app.add_subcommand("verify", "Measure how far a state is from equilibrium");
    verify_cmd->add_option("--input", input)->required();
    verify_cmd->add_option("--state", state_path)->required();
    verify_cmd->add_option("--mode", mode_text, "psi|weighted");
    verify_cmd->add_option("--rho", rho_text, "Bound to check (default: the report's bound)");
    verify_cmd->add_option("--output", output);

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force sweeps over all states");
    std::string sweep = "equilibria";
    oracle_cmd->add_option("--input", input)->required();
    oracle_cmd->add_option("--sweep", sweep, "equilibria|min-potential|stretch|partial-stretch");
    oracle_cmd->add_option("--mode", mode_text, "psi|weighted");
    oracle_cmd->add_option("--rho", rho_text);
    oracle_cmd->add_option("--cap", cap, "Enumeration cap");
    oracle_cmd->add_option("--samples", samples);
    oracle_cmd->add_option("--seed", seed);
    oracle_cmd->add_option("--output", output);

    auto* dyn_cmd = app.add_subcommand("dynamics", "Nash dynamics graph statistics");
    dyn_cmd->add_option("--input", input)->required();
    dyn_cmd->add_option("--mode", mode_text, "psi|weighted");
    dyn_cmd->add_option("--cap", cap, "Enumeration cap");
    dyn_cmd->add_option("--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        const Mode mode = input_flag([&] { return parse_mode(mode_text); });

        if (*gen) {
            spec.family = input_flag([&] { return parse_family(family_text); });
            const auto inst = input_flag([&] { return generate(spec, seed); });
            const auto text = serialize_instance(inst.game);
            if (output.empty() || output == "-") {
                std::cout << text;
            } else {
                write_file(output, text);
            }
            if (!state_out.empty()) emit(state_out, state_to_json(inst.game, inst.initial));
            return kOk;
        }

        const Game game = load_game(input);

        if (*solve_cmd) {
            SolverOptions options;
            options.mode = mode;
            options.gamma = rational_flag(gamma_text, "--gamma");
            options.move_cap = move_cap;
            options.force = force;
            options.policy = input_flag([&] { return parse_policy(policy_text); });
            const State initial = initial_state(game, state_path, mode);
            SolverParams params;
            try {
                params = derive_params(game, initial, options);
            } catch (const Error& e) {
                throw InputError(e.what());
            }
            const auto result = solve(game, initial, params);
            const auto audit = audit_log(game, result.log, params);
            const auto verification = verify_approx_equilibrium(game, result.final_state, mode);
            emit(output, solve_report(game, params, result, verification, audit));
            if (!log_path.empty()) {
                std::ofstream log(log_path);
                if (!log) throw Error("cannot write \"" + log_path + "\"");
                for (const auto& mv : result.log.moves) log << move_to_json(game, mv).dump() << "\n";
            }
            if (!trajectory_path.empty()) {
                std::ofstream tr(trajectory_path);
                if (!tr) throw Error("cannot write \"" + trajectory_path + "\"");
                tr << "move\tphase\tpotential\tcost_before\tcost_after\n";
                for (std::size_t i = 0; i < result.log.moves.size(); ++i) {
                    const auto& mv = result.log.moves[i];
                    tr << i + 1 << '\t' << mv.phase << '\t' << to_decimal(mv.potential_after, 17) << '\t'
                       << to_decimal(mv.cost_before, 17) << '\t' << to_decimal(mv.cost_after, 17) << '\n';
                }
            }
            const bool within = params.forced || verification.within(params.rho_bound());
            if (!audit.passed) {
                for (const auto& f : audit.failures) std::cerr << "audit: " << f << "\n";
            }
            return audit.passed && within ? kOk : kFailed;
        }

        if (*verify_cmd) {
            const auto state_text = read_input(state_path);
            const State state = parse_state(game, state_text);
            std::optional<Scalar> bound;
            if (!rho_text.empty()) {
                bound = rational_flag(rho_text, "--rho");
            } else {
                // A solve report certifies its own mode; psi runs also certify the weighted game.
                const auto doc = Json::parse(state_text);
                const auto key = mode == Mode::weighted ? "rho_bound_weighted" : "rho_bound";
                const bool same_mode = !doc.contains("mode") || doc["mode"] == to_string(mode);
                if (doc.contains(key) && (same_mode || mode == Mode::weighted)) {
                    bound = rational_from_json(doc[key]);
                }
            }
            const auto report = verify_approx_equilibrium(game, state, mode);
            auto doc = equilibrium_to_json(game, report);
            if (bound) {
                doc["rho_bound"] = rational_json(*bound);
                doc["within_bound"] = report.within(*bound);
            }
            if (!output.empty()) emit(output, doc);
            std::cout << "rho_achieved " << decimal(report.rho_achieved) << "\n";
            return !bound || report.within(*bound) ? kOk : kFailed;
        }

        if (*oracle_cmd || *dyn_cmd) {
            if (!game.is_explicit()) {
                throw InputError("oracle sweeps need explicit strategy lists; network games are not enumerated");
            }
        }

        if (*oracle_cmd) {
            auto rho_or = [&](const char* fallback) {
                return rational_flag(rho_text.empty() ? fallback : rho_text, "--rho");
            };
            Json doc{{"sweep", sweep}};
            if (sweep == "equilibria") {
                std::optional<Scalar> rho;
                if (!rho_text.empty()) rho = rational_flag(rho_text, "--rho");
                const auto eqs = exact_equilibria(game, mode, rho, cap);
                doc["mode"] = to_string(mode);
                doc["count"] = eqs.size();
                doc["states"] = Json::array();
                for (const auto& s : eqs) doc["states"].push_back(state_to_json(game, s));
            } else if (sweep == "min-potential") {
                const auto best = min_potential_state(game, cap);
                doc["potential"] = rational_json(best.value);
                doc["state"] = state_to_json(game, best.state);
            } else if (sweep == "stretch") {
                const Scalar rho = rho_or("1");
                const Scalar stretch = measure_stretch(game, rho, cap);
                doc["rho"] = rational_json(rho);
                doc["stretch"] = rational_json(stretch);
                if (game.degree >= 2 || rho <= Scalar(11, 10)) {
                    doc["theta"] = rational_json(theta(game.degree, rho));
                }
            } else if (sweep == "partial-stretch") {
                const Scalar rho = rho_or("1");
                const auto rep = check_partial_stretch(game, rho, samples, seed, cap);
                doc["samples"] = rep.samples;
                doc["comparisons"] = rep.comparisons;
                doc["violations"] = rep.violations;
                emit(output, doc);
                return rep.violations.empty() ? kOk : kFailed;
            } else {
                throw InputError("--sweep: unknown sweep \"" + sweep + "\"");
            }
            emit(output, doc);
            return kOk;
        }

        if (*dyn_cmd) {
            const auto graph = dynamics_graph(game, mode, cap);
            Json doc{{"mode", to_string(mode)},
                     {"nodes", graph.nodes},
                     {"edges", graph.edges},
                     {"sinks", graph.sinks.size()},
                     {"acyclic", graph.acyclic}};
            if (!graph.acyclic) doc["cycle_witness"] = graph.cycle_witness;
            emit(output, doc);
            return kOk;
        }
    } catch (const ParseError& e) {
        for (const auto& msg : e.errors()) std::cerr << "error: " << msg << "\n";
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        // Oracle failures are enumeration preconditions (caps, strategy spaces).
        return *oracle_cmd || *dyn_cmd ? kInputError : kFailed;
    }
    return kOk;
}
