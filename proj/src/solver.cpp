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

#include "psieq/solver.hpp"

#include <algorithm>

namespace psieq {

const char* to_string(MoverPolicy policy) {
    return policy == MoverPolicy::max_cost ? "maxcost" : "minid";
}

MoverPolicy parse_policy(std::string_view text) {
    if (text == "maxcost") return MoverPolicy::max_cost;
    if (text == "minid") return MoverPolicy::min_id;
    throw Error("unknown mover policy \"" + std::string(text) + "\" (expected maxcost or minid)");
}

const char* to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::phase0: return "phase0";
        case MoveKind::q_move: return "q-move";
        case MoveKind::p_move: return "p-move";
    }
    return "?";
}

namespace {

Scalar factorial_q(int d) { return Scalar(factorial(static_cast<unsigned>(d))); }

}  // namespace

Scalar max_gamma(int degree, Mode mode) {
    if (mode == Mode::psi) {
        if (degree == 1) return Scalar(1, 10);
        return 1 / (8 * theta(degree, 2));
    }
    if (degree < 2) throw Error("weighted mode needs degree >= 2; use psi mode for linear games");
    const Scalar f = factorial_q(degree);
    return 1 / (4 * f * theta(degree, 2 * f * f));
}

Scalar SolverParams::move_bound() const {
    return Scalar(static_cast<unsigned long>(m)) * Scalar(static_cast<unsigned long>(players)) * g /
           (gamma * gamma);
}

Scalar SolverParams::rho_bound() const {
    if (mode == Mode::psi) return (1 + 2 * gamma) / (1 - 2 * gamma) * p;
    const Scalar f = factorial_q(degree);
    return 6 * f * f * theta(degree, 2 * f * f);
}

Scalar SolverParams::rho_bound_weighted() const {
    if (mode == Mode::psi) return factorial_q(degree) * rho_bound();
    return rho_bound();
}

SolverParams derive_params(const Game& game, const State& initial, const SolverOptions& options) {
    if (auto bad = validate(game); !bad.empty()) throw Error("invalid game: " + bad.front());
    if (auto bad = validate_state(game, initial); !bad.empty()) {
        throw Error("invalid initial state: " + bad.front());
    }
    if (game.players.empty()) throw Error("game has no players");

    SolverParams params;
    params.mode = options.mode;
    params.degree = game.degree;
    params.players = game.players.size();
    params.gamma = options.gamma;
    params.move_cap = options.move_cap;
    params.policy = options.policy;

    const auto& gamma = options.gamma;
    if (sgn(gamma) <= 0) throw Error("gamma must be positive");
    if (options.force) {
        params.forced = true;
        if (options.mode == Mode::psi || game.degree >= 2) {
            params.forced = gamma > max_gamma(game.degree, options.mode);
        }
    } else {
        const auto limit = max_gamma(game.degree, options.mode);
        if (gamma > limit) {
            throw Error("gamma " + to_string(gamma) + " is outside (0, " + to_string(limit) +
                        "] for " + to_string(options.mode) + " mode with d = " +
                        std::to_string(game.degree));
        }
    }

    const auto n = game.players.size();
    const auto mode = options.mode;
    for (std::size_t u = 0; u < n; ++u) {
        Scalar solo = solo_best_response(game, u, mode).cost;
        if (sgn(solo) <= 0) {
            throw Error("player \"" + game.players[u].id + "\" has a zero-cost solo best response");
        }
        if (u == 0 || solo < params.c_min) params.c_min = solo;
    }
    const TrackedState tracked(game, initial);
    for (std::size_t u = 0; u < n; ++u) {
        Scalar c = tracked.cost(u, mode);
        if (u == 0 || c > params.c_max) params.c_max = c;
    }

    params.m = std::max(1u, ceil_log2(params.c_max / params.c_min));
    const auto d = static_cast<unsigned>(game.degree);
    const Scalar m(static_cast<unsigned long>(params.m));
    params.g = 2 * pow(1 + m * (1 + 1 / gamma), d) * pow(Scalar(game.degree), d) *
               Scalar(static_cast<unsigned long>(n)) / pow(gamma, 3);
    if (params.g < 2) throw Error("derived g is below 2; gamma too large");

    if (mode == Mode::psi) {
        params.q = 1 + gamma;
        params.p = 1 / theta(game.degree, params.q) - 2 * gamma;
    } else {
        const Scalar f = factorial_q(game.degree);
        params.q = f * (1 + gamma);
        params.p = 1 / (f * theta(game.degree, f * params.q)) - 2 * gamma;
    }
    if (sgn(params.p) <= 0) throw Error("derived p is not positive; gamma too large");
    params.p = 1 / params.p;

    params.b.reserve(params.m + 1);
    params.b.push_back(params.c_max);
    for (unsigned i = 1; i <= params.m; ++i) params.b.push_back(params.b.back() / params.g);
    return params;
}

PhaseContext PhaseContext::for_phase(const SolverParams& params, int phase,
                                     const PlayerSet& finalized) {
    PhaseContext ctx;
    ctx.phase = phase;
    ctx.finalized = &finalized;
    ctx.q = params.q;
    ctx.p = params.p;
    if (phase == 0) {
        ctx.q_floor = params.b.at(1);
    } else {
        const auto i = static_cast<std::size_t>(phase);
        ctx.p_floor = params.b.at(i);
        ctx.q_floor = params.b.at(i + 1);
        ctx.q_ceiling = params.b.at(i);
    }
    return ctx;
}

namespace {

// Move kind admitted for a player of the given cost, if any.
std::optional<MoveKind> admitted(const PhaseContext& ctx, const Scalar& cost) {
    if (ctx.phase == 0) {
        if (cost >= ctx.q_floor) return MoveKind::phase0;
        return std::nullopt;
    }
    if (cost >= *ctx.p_floor) return MoveKind::p_move;
    if (cost >= ctx.q_floor && cost < *ctx.q_ceiling) return MoveKind::q_move;
    return std::nullopt;
}

const Scalar& factor_for(const PhaseContext& ctx, MoveKind kind) {
    return kind == MoveKind::p_move ? ctx.p : ctx.q;
}

}  // namespace

std::optional<Mover> select_mover(const TrackedState& state, const PhaseContext& context,
                                  Mode mode, MoverPolicy policy) {
    const auto& game = state.game();
    struct Candidate {
        std::size_t player;
        Scalar cost;
        MoveKind kind;
    };
    std::vector<Candidate> candidates;
    for (std::size_t u = 0; u < game.players.size(); ++u) {
        if (context.finalized != nullptr && context.finalized->contains(u)) continue;
        Scalar c = state.cost(u, mode);
        if (auto kind = admitted(context, c)) candidates.push_back({u, std::move(c), *kind});
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        const auto& ida = game.players[a.player].id;
        const auto& idb = game.players[b.player].id;
        if (policy == MoverPolicy::max_cost && a.cost != b.cost) return a.cost > b.cost;
        return ida < idb;
    });
    for (auto& cand : candidates) {
        auto br = state.best_response(cand.player, mode);
        if (br.cost * factor_for(context, cand.kind) < cand.cost) {
            return Mover{cand.player, std::move(cand.cost), std::move(br), cand.kind};
        }
    }
    return std::nullopt;
}

SolveResult solve(const Game& game, const State& initial, const SolverParams& params) {
    const auto n = game.players.size();
    TrackedState tracked(game, initial);
    MoveLog log;
    log.initial = initial;
    log.finalized_at.assign(n, -1);
    PlayerSet finalized = PlayerSet::none(n);

    auto run_phase = [&](int phase) {
        PhaseSummary summary;
        summary.phase = phase;
        summary.first_move = log.moves.size();
        const auto ctx = PhaseContext::for_phase(params, phase, finalized);
        std::vector<bool> moved(n, false);
        while (auto mover = select_mover(tracked, ctx, params.mode, params.policy)) {
            if (log.moves.size() >= params.move_cap) {
                throw Error("move cap of " + std::to_string(params.move_cap) +
                            " exceeded in phase " + std::to_string(phase));
            }
            const auto u = mover->player;
            MoveRecord rec;
            rec.phase = phase;
            rec.player = u;
            rec.from = tracked.state().choice[u];
            rec.to = mover->response.strategy;
            rec.cost_before = mover->cost;
            rec.cost_after = mover->response.cost;
            rec.potential_before = tracked.potential();
            rec.kind = mover->kind;
            tracked.apply_move(u, rec.to);
            rec.potential_after = tracked.potential();
            rec.psi_cost_after =
                params.mode == Mode::psi ? rec.cost_after : tracked.cost(u, Mode::psi);
            log.moves.push_back(std::move(rec));
            if (!moved[u]) {
                moved[u] = true;
                summary.movers.push_back(u);
            }
        }
        summary.move_count = log.moves.size() - summary.first_move;
        if (phase >= 1) {
            const auto& floor = params.b.at(static_cast<std::size_t>(phase));
            for (std::size_t u = 0; u < n; ++u) {
                if (!finalized.contains(u) && tracked.cost(u, params.mode) >= floor) {
                    finalized.insert(u);
                    log.finalized_at[u] = phase;
                    summary.finalized.push_back(u);
                }
            }
        }
        summary.end = tracked.state();
        log.phases.push_back(std::move(summary));
    };

    run_phase(0);
    for (unsigned i = 1; i < params.m; ++i) run_phase(static_cast<int>(i));
    return {tracked.state(), std::move(log)};
}

namespace {

class Auditor {
public:
    Auditor(const Game& game, const SolverParams& params, AuditReport& report)
        : game_(game), params_(params), report_(report) {}

    void check(bool ok, const std::string& what) {
        ++report_.checks;
        if (!ok) {
            report_.passed = false;
            report_.failures.push_back(what);
        }
    }

    const Game& game_;
    const SolverParams& params_;
    AuditReport& report_;
};

std::string move_tag(std::size_t index, const MoveRecord& rec, const Game& game) {
    return "move " + std::to_string(index) + " (phase " + std::to_string(rec.phase) +
           ", player \"" + game.players.at(rec.player).id + "\")";
}

}  // namespace

AuditReport audit_log(const Game& game, const MoveLog& log, const SolverParams& params) {
    AuditReport report;
    Auditor audit(game, params, report);
    const auto n = game.players.size();
    const Scalar& gamma = params.gamma;
    const Scalar nq(static_cast<unsigned long>(n));

    audit.check(log.phases.size() == params.m, "expected " + std::to_string(params.m) +
                                                   " phases, log has " +
                                                   std::to_string(log.phases.size()));

    // Replay every move against from-scratch costs and potentials.
    State state = log.initial;
    std::size_t next_phase = 0;
    int last_phase = 0;
    for (std::size_t i = 0; i < log.moves.size(); ++i) {
        const auto& rec = log.moves[i];
        const auto tag = move_tag(i, rec, game);
        audit.check(rec.phase >= last_phase, tag + ": phase order");
        last_phase = rec.phase;
        while (next_phase < log.phases.size() &&
               log.phases[next_phase].first_move + log.phases[next_phase].move_count <= i) {
            audit.check(log.phases[next_phase].end == state,
                        "phase " + std::to_string(next_phase) + ": snapshot differs from replay");
            ++next_phase;
        }
        audit.check((rec.phase == 0) == (rec.kind == MoveKind::phase0),
                    tag + ": move kind does not match phase");
        if (rec.phase >= 1 && static_cast<unsigned>(rec.phase) < params.m) {
            const bool p_move = rec.cost_before >= params.b[static_cast<std::size_t>(rec.phase)];
            audit.check(p_move == (rec.kind == MoveKind::p_move),
                        tag + ": move kind does not match the player's cost band");
        }
        if (rec.player >= n || !(state.choice[rec.player] == rec.from)) {
            audit.check(false, tag + ": logged origin strategy differs from replay");
            break;
        }
        const Scalar phi_before = potential(game, state);
        const Scalar cost_before = cost(game, state, rec.player, params.mode);
        State after = with_strategy(state, rec.player, rec.to);
        const Scalar phi_after = potential(game, after);
        const Scalar cost_after = cost(game, after, rec.player, params.mode);
        audit.check(phi_before == rec.potential_before && phi_after == rec.potential_after,
                    tag + ": logged potential differs from recomputation");
        audit.check(cost_before == rec.cost_before && cost_after == rec.cost_after,
                    tag + ": logged cost differs from recomputation");
        audit.check(rec.potential_after < rec.potential_before,
                    tag + ": Psi-potential did not strictly decrease");
        audit.check(rec.cost_after < rec.cost_before, tag + ": cost did not strictly decrease");
        audit.check(cost_psi(game, after, rec.player) == rec.psi_cost_after,
                    tag + ": logged Psi-cost differs from recomputation");
        state = std::move(after);
    }
    for (; next_phase < log.phases.size(); ++next_phase) {
        audit.check(log.phases[next_phase].end == state,
                    "phase " + std::to_string(next_phase) + ": snapshot differs from replay");
    }
    if (!report.passed) return report;

    audit.check(Scalar(static_cast<unsigned long>(log.moves.size())) <= params.move_bound(),
                "move count exceeds m n g / gamma^2");

    // Phase 0 exit: players with cost >= b_1 have no q-move at S^0.
    if (!log.phases.empty()) {
        const auto& s0 = log.phases[0].end;
        for (std::size_t u = 0; u < n; ++u) {
            const Scalar c = cost(game, s0, u, params.mode);
            if (c < params.b.at(1)) continue;
            const Scalar best = best_response(game, s0, u, params.mode).cost;
            audit.check(!(best * params.q < c),
                        "phase 0 exit: player \"" + game.players[u].id + "\" still has a q-move");
        }
    }

    const auto all = PlayerSet::all(n);
    for (std::size_t i = 1; i < log.phases.size(); ++i) {
        const auto& phase = log.phases[i];
        if (phase.movers.empty()) continue;
        const auto movers = PlayerSet::of(n, phase.movers);
        const auto tag = "phase " + std::to_string(i);
        const Scalar before = partial_potential(game, log.phases[i - 1].end, all, movers);
        audit.check(before <= nq * params.b.at(i) / gamma,
                    tag + ": Phi_R(S^{i-1}) exceeds n b_i / gamma");

        Scalar last_costs = 0;
        std::vector<bool> seen(n, false);
        for (std::size_t k = phase.first_move + phase.move_count; k-- > phase.first_move;) {
            const auto& rec = log.moves[k];
            if (seen[rec.player]) continue;
            seen[rec.player] = true;
            last_costs += rec.psi_cost_after;
        }
        audit.check(partial_potential(game, phase.end, all, movers) <= last_costs,
                    tag + ": Phi_R(S^i) exceeds the players' costs after their last moves");
    }

    if (!log.phases.empty()) {
        const auto& final_state = log.phases.back().end;
        for (std::size_t u = 0; u < n; ++u) {
            const int j = log.finalized_at.at(u);
            if (j < 1) continue;
            const auto& snapshot = log.phases.at(static_cast<std::size_t>(j)).end;
            const auto who = "player \"" + game.players[u].id + "\" (finalized in phase " +
                             std::to_string(j) + ")";
            audit.check(cost_psi(game, final_state, u) <= (1 + 2 * gamma) * cost_psi(game, snapshot, u),
                        who + ": cost grew by more than 1 + 2 gamma");
            const auto& player = game.players[u];
            if (player.is_network()) continue;
            for (const auto& s : player.strategies) {
                const Scalar now = deviation_cost(game, final_state, u, s, Mode::psi);
                const Scalar then = deviation_cost(game, snapshot, u, s, Mode::psi);
                audit.check(now >= (1 - 2 * gamma) * then,
                            who + ": a deviation became cheaper by more than 1 - 2 gamma");
            }
        }

        // Termination: nobody is eligible to move in the last phase.
        const int last = static_cast<int>(log.phases.size()) - 1;
        PlayerSet before_last = PlayerSet::none(n);
        for (std::size_t u = 0; u < n; ++u) {
            if (log.finalized_at[u] >= 0 && log.finalized_at[u] < last) before_last.insert(u);
        }
        const auto ctx = PhaseContext::for_phase(params, last, before_last);
        const TrackedState tracked(game, final_state);
        audit.check(!select_mover(tracked, ctx, params.mode, params.policy).has_value(),
                    "final state still has an eligible mover");
    }
    return report;
}

}  // namespace psieq
