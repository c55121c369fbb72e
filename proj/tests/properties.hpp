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

#ifndef PSIEQ_TESTS_PROPERTIES_HPP
#define PSIEQ_TESTS_PROPERTIES_HPP

// Property checks shared by the unit tests and the acceptance suite. Each
// check records into a Tally instead of asserting so callers choose the
// reporting style.

#include <random>
#include <string>
#include <vector>

#include "psieq/dynamics.hpp"
#include "psieq/oracle.hpp"
#include "psieq/potential.hpp"
#include "psieq/psi.hpp"
#include "support.hpp"

namespace psieq::test {

struct Tally {
    std::size_t checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures.size() < 20) failures.push_back(what);
        if (!ok) ++failed;
    }
    std::size_t failed = 0;
    bool ok() const { return failed == 0; }
};

inline std::string show(const std::vector<Scalar>& a) {
    std::string out = "{";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + to_string(a[i]);
    return out + "}";
}

inline Scalar binomial(unsigned k, unsigned t) {
    return Scalar(factorial(k)) / (Scalar(factorial(t)) * Scalar(factorial(k - t)));
}

// Psi identities and inequalities (a) to (f) plus the convolution identity,
// for every 1 <= k <= kmax.
inline void check_psi_properties(const std::vector<Scalar>& a, const std::vector<Scalar>& b_set,
                                 const Scalar& b, unsigned kmax, Tally& t) {
    const auto pa = psi_vector(a, kmax);
    auto ab = a;
    ab.push_back(b);
    const auto pab = psi_vector(ab, kmax);
    const auto pb = psi_vector(b_set, kmax);
    auto uni = a;
    uni.insert(uni.end(), b_set.begin(), b_set.end());
    const auto pu = psi_vector(uni, kmax);
    const std::vector<Scalar> single{b};
    const auto psingle = psi_vector(single, kmax);
    const Scalar l = load(a);
    const auto tag = " A=" + show(a) + " b=" + to_string(b);

    for (unsigned k = 1; k <= kmax; ++k) {
        const auto ks = std::to_string(k);
        t.expect(pow(l, k) <= pa[k] && pa[k] <= Scalar(factorial(k)) * pow(l, k), "(a) k=" + ks + tag);
        t.expect(pow(pa[k - 1], k) <= pow(pa[k], k - 1), "(b) k=" + ks + tag);
        Scalar expand = 0;
        for (unsigned s = 0; s <= k; ++s) {
            expand += Scalar(factorial(k)) / Scalar(factorial(k - s)) * pow(b, s) * pa[k - s];
        }
        t.expect(pab[k] == expand, "(c) k=" + ks + tag);
        t.expect(pab[k] - pa[k] == Scalar(k) * b * pab[k - 1], "(d) k=" + ks + tag);
        t.expect(pa[k] <= Scalar(k) * pa[1] * pa[k - 1], "(e) k=" + ks + tag);
        const auto f = root_sum_power_bound(pab[k], psingle[k], pa[k], k);
        t.expect(f.has_value() && *f, "(f) k=" + ks + tag);
        Scalar conv = 0;
        for (unsigned s = 0; s <= k; ++s) conv += binomial(k, s) * pa[k - s] * pb[s];
        t.expect(pu[k] == conv, "convolution k=" + ks + tag + " B=" + show(b_set));
    }
}

// Minkowski: (sum (x+y)^k)^(1/k) <= (sum x^k)^(1/k) + (sum y^k)^(1/k).
inline void check_minkowski(const std::vector<Scalar>& x, const std::vector<Scalar>& y, unsigned k,
                            Tally& t) {
    Scalar lhs = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lhs += pow(x[i] + y[i], k);
        sx += pow(x[i], k);
        sy += pow(y[i], k);
    }
    const auto r = root_sum_power_bound(lhs, sx, sy, k);
    t.expect(r.has_value() && *r, "Minkowski x=" + show(x) + " y=" + show(y) + " k=" + std::to_string(k));
}

// Every single-player deviation changes the potential by exactly the mover's psi cost change.
inline void check_potential_exactness(const Game& g, const State& s, Tally& t) {
    const Scalar phi = potential(g, s);
    t.expect(phi == naive_potential(g, s), "potential disagrees with the monomial oracle");
    for (std::size_t u = 0; u < g.players.size(); ++u) {
        const Scalar cu = cost_psi(g, s, u);
        for (const auto& dev : g.players[u].strategies) {
            const auto s2 = with_strategy(s, u, dev);
            t.expect(phi - potential(g, s2) == cu - cost_psi(g, s2, u),
                     "potential exactness player " + g.players[u].id);
        }
    }
}

inline void check_cost_sandwich(const Game& g, const State& s, std::size_t u, Tally& t) {
    const Scalar c = cost_weighted(g, s, u);
    const Scalar ch = cost_psi(g, s, u);
    t.expect(c == naive_cost_weighted(g, s, u) && ch == naive_cost_psi(g, s, u),
             "cost disagrees with the direct formula");
    t.expect(c <= ch && ch <= Scalar(factorial(static_cast<unsigned>(g.degree))) * c,
             "cost sandwich player " + g.players[u].id);
    if (g.degree == 1) t.expect(c == ch, "linear costs coincide");
}

inline PlayerSet random_subset(std::mt19937_64& rng, std::size_t n) {
    auto set = PlayerSet::none(n);
    for (std::size_t u = 0; u < n; ++u) {
        if (rng() & 1) set.insert(u);
    }
    return set;
}

inline State random_state(std::mt19937_64& rng, const Game& g) {
    State s;
    for (const auto& p : g.players) s.choice.push_back(p.strategies[rng() % p.strategies.size()]);
    return s;
}

// Partial-potential inequalities: monotonicity in the subgame, locality, the
// single-player delta and cost revelation.
inline void check_partial_inequalities(std::mt19937_64& rng, const Game& g, const State& s, Tally& t) {
    const auto n = g.players.size();
    const auto all = PlayerSet::all(n);
    const auto a = random_subset(rng, n);
    auto b = PlayerSet::none(n);
    for (auto u : a.members()) {
        if (rng() & 1) b.insert(u);
    }
    t.expect(partial_potential(g, s, a, b) <= partial_potential(g, s, all, b), "partial bound");
    t.expect(partial_potential(g, s, all, all) == potential(g, s), "full partial potential");
    t.expect(sgn(partial_potential(g, s, a, PlayerSet::none(n))) == 0, "empty part");

    // Locality: players outside A move, A keeps its strategies.
    State s2 = s;
    for (std::size_t u = 0; u < n; ++u) {
        if (!a.contains(u)) s2.choice[u] = g.players[u].strategies[rng() % g.players[u].strategies.size()];
    }
    t.expect(partial_potential(g, s, a, b) == partial_potential(g, s2, a, b), "locality");

    // Single-player delta for u in A.
    const auto members = a.members();
    if (!members.empty()) {
        const auto u = members[rng() % members.size()];
        const auto& dev = g.players[u].strategies[rng() % g.players[u].strategies.size()];
        const auto s3 = with_strategy(s, u, dev);
        t.expect(partial_potential(g, s, a) - partial_potential(g, s3, a) ==
                     cost_psi(g, s, u) - cost_psi(g, s3, u),
                 "partial delta player " + g.players[u].id);
    }

    Scalar costs = 0;
    for (auto u : members) costs += cost_psi(g, s, u);
    t.expect(partial_potential(g, s, a) <= costs, "cost revealing");
}

// c^_u(S) <= (1+eps) Phi_u^{N\R}(S) + xi_eps Phi_R^{N\{u}}(S) for R outside u.
inline void check_effect_bound(std::mt19937_64& rng, const Game& g, const State& s, Tally& t) {
    const auto n = g.players.size();
    const auto u = rng() % n;
    auto r = random_subset(rng, n);
    r.erase(u);
    const Scalar eps = random_rational(rng, 20, 7) + Scalar(1, 50);
    const auto all = PlayerSet::all(n);
    const auto only_u = PlayerSet::of(n, {u});
    auto without_u = all;
    without_u.erase(u);
    const Scalar rhs = (1 + eps) * partial_potential(g, s, all.minus(r), only_u) +
                       xi(eps, g.degree) * partial_potential(g, s, without_u, r);
    t.expect(cost_psi(g, s, u) <= rhs, "effect bound player " + g.players[u].id + " eps=" + to_string(eps));
}

// (alpha+beta)^{d+1} <= (1+eps) alpha^{d+1} + (1+1/eps)^d d^d beta^{d+1}.
inline void check_power_split(std::mt19937_64& rng, int d, Tally& t) {
    const Scalar alpha = random_rational(rng, 30, 9);
    const Scalar beta = random_rational(rng, 30, 9);
    const Scalar eps = random_rational(rng, 30, 9) + Scalar(1, 100);
    const auto ud = static_cast<unsigned>(d);
    const Scalar lhs = pow(alpha + beta, ud + 1);
    const Scalar rhs = (1 + eps) * pow(alpha, ud + 1) + pow(1 + 1 / eps, ud) * pow(Scalar(d), ud) * pow(beta, ud + 1);
    t.expect(lhs <= rhs, "power split d=" + std::to_string(d) + " alpha=" + to_string(alpha) +
                             " beta=" + to_string(beta) + " eps=" + to_string(eps));
}

// Best response against exhaustive enumeration of the player's strategies
// (simple paths for network players).
inline void check_best_response(const Game& g, const Game& explicit_game, const State& s, Mode mode,
                                Tally& t) {
    for (std::size_t u = 0; u < g.players.size(); ++u) {
        const auto br = best_response(g, s, u, mode);
        Scalar best = deviation_cost(g, s, u, explicit_game.players[u].strategies.front(), mode);
        for (const auto& alt : explicit_game.players[u].strategies) {
            const Scalar c = deviation_cost(g, s, u, alt, mode);
            if (c < best) best = c;
        }
        t.expect(br.cost == best, "best response cost player " + g.players[u].id);
        t.expect(deviation_cost(g, s, u, br.strategy, mode) == br.cost, "best response strategy cost");
        t.expect(is_valid_strategy(g, u, br.strategy), "best response is a valid strategy");
    }
}

}  // namespace psieq::test

#endif  // PSIEQ_TESTS_PROPERTIES_HPP
