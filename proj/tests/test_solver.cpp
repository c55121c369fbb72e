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

#include <random>

#include "doctest.h"
#include "psieq/generator.hpp"
#include "psieq/oracle.hpp"
#include "psieq/solver.hpp"
#include "support.hpp"

using namespace psieq;
using psieq::test::Builder;

namespace {

SolverOptions opts(Mode mode, Scalar gamma) {
    SolverOptions o;
    o.mode = mode;
    o.gamma = std::move(gamma);
    return o;
}

// Independent recomputation of g for the parameter checks.
Scalar expected_g(unsigned m, const Scalar& gamma, int d, std::size_t n) {
    const auto ud = static_cast<unsigned>(d);
    return 2 * pow(1 + Scalar(m) * (1 + 1 / gamma), ud) * pow(Scalar(d), ud) * Scalar(static_cast<unsigned long>(n)) /
           pow(gamma, 3);
}

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("admissible gamma") {
        CHECK(max_gamma(1, Mode::psi) == Scalar(1, 10));
        CHECK(max_gamma(2, Mode::psi) == Scalar(1, 3888));
        CHECK(max_gamma(2, Mode::weighted) == Scalar(1, 139968));
        CHECK_THROWS_AS(max_gamma(1, Mode::weighted), Error);
    }

    TEST_CASE("parameters") {
        const auto g = Builder(1).resource({"0", "1"}).resource({"0", "2"}).player("1", {{0}}).player("2", {{1}}).build();
        const auto s = test::pick(g, {0, 0});
        const auto params = derive_params(g, s, opts(Mode::psi, Scalar(1, 10)));
        CHECK(params.c_min == 1);
        CHECK(params.c_max == 8);
        CHECK(params.m == 3);
        CHECK(params.q == Scalar(11, 10));
        const Scalar th = (3 + sqrt5_upper()) / 2 + Scalar(6, 10);
        CHECK(params.p == 1 / (1 / th - Scalar(1, 5)));
        CHECK(to_decimal(params.p, 3) == "9.03");
        CHECK(params.g == expected_g(3, Scalar(1, 10), 1, 2));
        REQUIRE(params.b.size() == 4);
        for (unsigned i = 0; i < 4; ++i) CHECK(params.b[i] == 8 / pow(params.g, i));
        CHECK(params.b[3] <= params.c_min);
        CHECK(params.rho_bound() == Scalar(3, 2) * params.p);
        CHECK(to_decimal(params.rho_bound(), 5) == "13.544");
        CHECK(params.rho_bound_weighted() == params.rho_bound());
        CHECK_FALSE(params.forced);

        CHECK_THROWS_AS(derive_params(g, s, opts(Mode::psi, Scalar(1, 5))), Error);
        CHECK_THROWS_AS(derive_params(g, s, opts(Mode::psi, Scalar(0))), Error);
        auto forced = opts(Mode::psi, Scalar(1, 20));
        forced.force = true;
        CHECK_FALSE(derive_params(g, s, forced).forced);
    }

    TEST_CASE("weighted parameters") {
        const auto g = Builder(2).resource({"0", "1", "1"}).player("1", {{0}}).player("1", {{0}}).build();
        const auto s = test::pick(g, {0, 0});
        const Scalar gamma(1, 139968);
        const auto params = derive_params(g, s, opts(Mode::weighted, gamma));
        CHECK(params.q == 2 * (1 + gamma));
        CHECK(params.p == 1 / (1 / (2 * theta(2, 2 * params.q)) - 2 * gamma));
        CHECK(params.rho_bound() == 419904);
        CHECK_THROWS_AS(derive_params(g, s, opts(Mode::weighted, Scalar(1, 139967))), Error);
        const auto lin = Builder(1).resource({"0", "1"}).player("1", {{0}}).build();
        CHECK_THROWS_AS(derive_params(lin, test::pick(lin, {0}), opts(Mode::weighted, Scalar(1, 1000000))), Error);
    }

    TEST_CASE("mover selection") {
        const auto g = Builder(1)
                           .resource({"3", "0"})
                           .resource({"5", "0"})
                           .resource({"1", "0"})
                           .player("1", {{0}, {2}})
                           .player("1", {{1}, {2}})
                           .build();
        TrackedState ts(g, test::pick(g, {0, 0}));
        const auto none = PlayerSet::none(2);
        PhaseContext ctx;
        ctx.phase = 0;
        ctx.finalized = &none;
        ctx.q_floor = 0;
        ctx.q = 1;
        ctx.p = 1;
        const auto by_cost = select_mover(ts, ctx, Mode::psi, MoverPolicy::max_cost);
        REQUIRE(by_cost);
        CHECK(by_cost->player == 1);
        CHECK(by_cost->cost == 5);
        const auto by_id = select_mover(ts, ctx, Mode::psi, MoverPolicy::min_id);
        REQUIRE(by_id);
        CHECK(by_id->player == 0);

        TrackedState settled(g, test::pick(g, {1, 1}));
        CHECK_FALSE(select_mover(settled, ctx, Mode::psi, MoverPolicy::max_cost));
        ctx.q_floor = 6;
        CHECK_FALSE(select_mover(ts, ctx, Mode::psi, MoverPolicy::max_cost));
    }

    TEST_CASE("single player") {
        const auto g = Builder(1).resource({"0", "1"}).resource({"0", "3"}).player("2", {{1}, {0}}).build();
        const auto s = test::pick(g, {0});
        const auto params = derive_params(g, s, opts(Mode::psi, Scalar(1, 10)));
        const auto res = solve(g, s, params);
        CHECK(res.log.moves.size() <= 1);
        CHECK(res.final_state.choice[0] == solo_best_response(g, 0, Mode::psi).strategy);
        CHECK(audit_log(g, res.log, params).passed);
    }

    TEST_CASE("crossing strategies") {
        const auto g = Builder(1)
                           .resource({"0", "1"})
                           .resource({"0", "1"})
                           .resource({"0", "1"})
                           .player("1", {{0, 1}, {2}})
                           .player("1", {{1, 2}, {0}})
                           .build();
        const auto s = test::pick(g, {0, 0});
        const Scalar gamma(1, 10);
        const auto params = derive_params(g, s, opts(Mode::psi, gamma));
        const auto res = solve(g, s, params);
        const auto rep = verify_approx_equilibrium(g, res.final_state, Mode::psi);
        CHECK(rep.within((3 + sqrt5_upper()) / 2 + 110 * gamma));
        CHECK(rep.within(params.rho_bound()));
        CHECK(audit_log(g, res.log, params).passed);
    }

    TEST_CASE("runs are deterministic") {
        GeneratorSpec spec;
        spec.players = 6;
        spec.resources = 5;
        spec.strategies = 3;
        spec.weight_spread = 8;
        const auto inst = generate(spec, 77);
        const auto params = derive_params(inst.game, inst.initial, opts(Mode::psi, Scalar(1, 10)));
        const auto a = solve(inst.game, inst.initial, params);
        const auto b = solve(inst.game, inst.initial, params);
        CHECK(a.final_state == b.final_state);
        REQUIRE(a.log.moves.size() == b.log.moves.size());
        for (std::size_t i = 0; i < a.log.moves.size(); ++i) {
            CHECK(a.log.moves[i].player == b.log.moves[i].player);
            CHECK(a.log.moves[i].to == b.log.moves[i].to);
        }
    }

    TEST_CASE("later phases run and pass the audit") {
        std::size_t late_moves = 0, finalized = 0;
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            GeneratorSpec spec;
            spec.players = 6;
            spec.resources = 5;
            spec.strategies = 3;
            spec.weight_spread = 14;
            const auto inst = generate(spec, seed);
            const auto params = derive_params(inst.game, inst.initial, opts(Mode::psi, Scalar(1, 10)));
            const auto res = solve(inst.game, inst.initial, params);
            const auto audit = audit_log(inst.game, res.log, params);
            for (const auto& f : audit.failures) MESSAGE(f);
            CHECK(audit.passed);
            CHECK(verify_approx_equilibrium(inst.game, res.final_state, Mode::psi).within(params.rho_bound()));
            for (const auto& mv : res.log.moves) late_moves += mv.phase >= 1;
            for (auto at : res.log.finalized_at) finalized += at >= 1;
        }
        CHECK(late_moves > 0);
        CHECK(finalized > 0);
    }

    TEST_CASE("audit flags a corrupted log") {
        GeneratorSpec spec;
        spec.players = 4;
        spec.resources = 4;
        spec.strategies = 3;
        std::optional<GeneratedInstance> found;
        SolveResult res;
        SolverParams params;
        for (std::uint64_t seed = 1; seed < 200 && !found; ++seed) {
            auto inst = generate(spec, seed);
            params = derive_params(inst.game, inst.initial, opts(Mode::psi, Scalar(1, 10)));
            res = solve(inst.game, inst.initial, params);
            if (!res.log.moves.empty()) found = std::move(inst);
        }
        REQUIRE(found);
        REQUIRE(audit_log(found->game, res.log, params).passed);

        auto bad = res.log;
        bad.moves.front().potential_after = bad.moves.front().potential_before + 1;
        CHECK_FALSE(audit_log(found->game, bad, params).passed);

        auto bad_kind = res.log;
        bad_kind.moves.front().kind = MoveKind::p_move;
        CHECK_FALSE(audit_log(found->game, bad_kind, params).passed);

        auto bad_phases = res.log;
        bad_phases.phases.pop_back();
        CHECK_FALSE(audit_log(found->game, bad_phases, params).passed);
    }

    TEST_CASE("move cap") {
        GeneratorSpec spec;
        spec.players = 5;
        spec.resources = 4;
        spec.strategies = 3;
        for (std::uint64_t seed = 1; seed < 100; ++seed) {
            const auto inst = generate(spec, seed);
            auto o = opts(Mode::psi, Scalar(1, 10));
            auto params = derive_params(inst.game, inst.initial, o);
            if (solve(inst.game, inst.initial, params).log.moves.size() < 2) continue;
            params.move_cap = 1;
            CHECK_THROWS_AS(solve(inst.game, inst.initial, params), Error);
            break;
        }
    }

    TEST_CASE("output is an approximate equilibrium per the oracle") {
        std::mt19937_64 rng(88);
        for (int it = 0; it < 20; ++it) {
            const auto inst = test::small_game(rng, 1);
            const auto params = derive_params(inst.game, inst.initial, opts(Mode::psi, Scalar(1, 10)));
            const auto res = solve(inst.game, inst.initial, params);
            const auto eqs = exact_equilibria(inst.game, Mode::psi, params.rho_bound());
            CHECK(std::find(eqs.begin(), eqs.end(), res.final_state) != eqs.end());
        }
    }
}
