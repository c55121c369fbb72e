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

#ifndef PSIEQ_PSI_HPP
#define PSIEQ_PSI_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "psieq/scalar.hpp"

namespace psieq {

/// (Psi_0, ..., Psi_kmax) of an implicit multiset of non-negative weights.
///
/// Psi_k(A) is k! times the sum of all degree-k monomials over the elements of
/// A, so Psi_0 = 1 and Psi_1 is the plain sum. Updates use
///   Psi_k(A + {b}) = Psi_k(A) + k b Psi_{k-1}(A + {b})
/// which costs O(kmax) operations per insert or remove.
class PsiAggregate {
public:
    explicit PsiAggregate(std::size_t kmax);

    void insert(const Scalar& w);
    void remove(const Scalar& w);

    const Scalar& operator[](std::size_t k) const { return values_[k]; }
    std::span<const Scalar> values() const { return values_; }
    std::size_t kmax() const { return values_.size() - 1; }
    std::size_t count() const { return count_; }

    bool operator==(const PsiAggregate&) const = default;

private:
    std::vector<Scalar> values_;
    std::size_t count_ = 0;
};

std::vector<Scalar> psi_vector(std::span<const Scalar> multiset, std::size_t kmax);

PsiAggregate psi_insert(PsiAggregate agg, const Scalar& w);
PsiAggregate psi_remove(PsiAggregate agg, const Scalar& w);

/// Decides z^alpha - 1 >= alpha (z - 1) z^(alpha - 1) for rational z > 1 and
/// alpha in (0, 1). Multiplying through by z^(1 - alpha) turns this into
/// z^(1 - alpha) <= (1 - alpha) z + alpha, which is compared exactly after
/// raising both sides to the denominator of alpha.
bool check_concavity_claim(const Scalar& z, const Scalar& alpha);

/// Decides lhs <= (x^(1/k) + y^(1/k))^k for non-negative rationals.
///
/// Exact when both roots are rational or y/x is a perfect k-th power; otherwise
/// uses outward-rounded interval arithmetic, doubling the precision until the
/// comparison is decided.
/// Returns nullopt if it is still undecided at `max_bits`.
std::optional<bool> root_sum_power_bound(const Scalar& lhs, const Scalar& x, const Scalar& y,
                                         unsigned k, unsigned max_bits = 1 << 14);

}  // namespace psieq

#endif  // PSIEQ_PSI_HPP
