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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "psieq/psi.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace psieq;

namespace {

std::vector<Scalar> vec(std::initializer_list<long> xs) {
    std::vector<Scalar> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

std::vector<Scalar> values(const PsiAggregate& a) { return {a.values().begin(), a.values().end()}; }

}  // namespace

TEST_SUITE("psi") {
    TEST_CASE("psi_vector values") {
        CHECK(psi_vector({}, 2) == vec({1, 0, 0}));
        const auto a = vec({2, 3});
        CHECK(psi_vector(a, 2) == vec({1, 5, 38}));
        const auto b = vec({1, 1});
        CHECK(psi_vector(b, 3) == vec({1, 2, 6, 24}));
        const std::vector<Scalar> neg{Scalar(-1)};
        CHECK_THROWS_AS(psi_vector(neg, 2), Error);
    }

    TEST_CASE("insert and remove") {
        PsiAggregate agg(2);
        agg.insert(2);
        CHECK(values(agg) == vec({1, 2, 8}));
        agg = psi_insert(agg, 3);
        CHECK(values(agg) == vec({1, 5, 38}));
        agg = psi_remove(agg, 3);
        CHECK(values(agg) == vec({1, 2, 8}));
        agg.remove(2);
        CHECK(values(agg) == vec({1, 0, 0}));
        CHECK(agg.count() == 0);
        CHECK_THROWS_AS(agg.remove(1), Error);

        PsiAggregate zero(3);
        zero.insert(0);
        CHECK(values(zero) == vec({1, 0, 0, 0}));
        CHECK(zero.count() == 1);
    }

    TEST_CASE("agrees with monomial enumeration") {
        std::mt19937_64 rng(3);
        for (int it = 0; it < 200; ++it) {
            const auto n = std::uniform_int_distribution<int>(0, 4)(rng);
            std::vector<Scalar> a;
            for (int i = 0; i < n; ++i) a.push_back(test::random_rational(rng, 6, 4));
            const auto v = psi_vector(a, 4);
            for (unsigned k = 0; k <= 4; ++k) CHECK(v[k] == test::psi_by_monomials(a, k));
        }
    }

    TEST_CASE("insertion order does not matter") {
        std::mt19937_64 rng(5);
        for (int it = 0; it < 100; ++it) {
            std::vector<Scalar> a;
            for (int i = 0; i < 5; ++i) a.push_back(test::random_rational(rng, 9, 5));
            const auto v = psi_vector(a, 4);
            std::shuffle(a.begin(), a.end(), rng);
            CHECK(psi_vector(a, 4) == v);
        }
    }

    TEST_CASE("random insert/remove sequences match a rebuild") {
        std::mt19937_64 rng(9);
        PsiAggregate agg(4);
        std::vector<Scalar> held;
        for (int it = 0; it < 300; ++it) {
            if (held.empty() || rng() % 3 != 0) {
                held.push_back(test::random_rational(rng, 7, 3));
                agg.insert(held.back());
            } else {
                const auto i = rng() % held.size();
                agg.remove(held[i]);
                held.erase(held.begin() + static_cast<long>(i));
            }
            CHECK(values(agg) == psi_vector(held, 4));
        }
    }

    TEST_CASE("concavity claim") {
        CHECK(check_concavity_claim(4, Scalar(1, 2)));
        CHECK(check_concavity_claim(Scalar(1000001, 1000000), Scalar(1, 3)));
        CHECK_THROWS_AS(check_concavity_claim(1, Scalar(1, 2)), Error);
        CHECK_THROWS_AS(check_concavity_claim(2, Scalar(1)), Error);
        std::mt19937_64 rng(17);
        for (int it = 0; it < 200; ++it) {
            const Scalar z = 1 + test::random_rational(rng, 50, 7) + Scalar(1, 1000);
            const auto b = std::uniform_int_distribution<unsigned>(2, 9)(rng);
            const auto a = std::uniform_int_distribution<unsigned>(1, b - 1)(rng);
            CHECK(check_concavity_claim(z, Scalar(a, b)));
        }
    }

    TEST_CASE("root sum bound") {
        // (1 + 1)^2 = 4 with exact square roots
        CHECK(root_sum_power_bound(4, 1, 1, 2) == true);
        CHECK(root_sum_power_bound(Scalar(41, 10), 1, 1, 2) == false);
        // (sqrt 2 + sqrt 3)^2 = 5 + 2 sqrt 6 ~ 9.898979
        CHECK(root_sum_power_bound(Scalar(9898, 1000), 2, 3, 2) == true);
        CHECK(root_sum_power_bound(Scalar(9899, 1000), 2, 3, 2) == false);
    }

    TEST_CASE("identities and inequalities on random multisets") {
        std::mt19937_64 rng(21);
        test::Tally t;
        for (int it = 0; it < 300; ++it) {
            std::vector<Scalar> a, b;
            const auto na = rng() % 5, nb = rng() % 4;
            for (std::size_t i = 0; i < na; ++i) a.push_back(test::random_rational(rng, 8, 5));
            for (std::size_t i = 0; i < nb; ++i) b.push_back(test::random_rational(rng, 8, 5));
            test::check_psi_properties(a, b, test::random_rational(rng, 8, 5), 4, t);
            std::vector<Scalar> x, y;
            for (int i = 0; i < 3; ++i) {
                x.push_back(test::random_rational(rng, 8, 5));
                y.push_back(test::random_rational(rng, 8, 5));
            }
            test::check_minkowski(x, y, 2 + static_cast<unsigned>(rng() % 3), t);
        }
        for (const auto& f : t.failures) MESSAGE(f);
        CHECK(t.ok());
        CHECK(t.checks > 6000);
    }
}
