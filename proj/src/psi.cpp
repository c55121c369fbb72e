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

#include "psieq/psi.hpp"

#include <mpfr.h>

namespace psieq {

PsiAggregate::PsiAggregate(std::size_t kmax) : values_(kmax + 1, Scalar(0)) {
    values_[0] = 1;
}

void PsiAggregate::insert(const Scalar& w) {
    if (sgn(w) < 0) throw Error("Psi multisets hold non-negative elements");
    for (std::size_t k = 1; k < values_.size(); ++k) {
        values_[k] += Scalar(static_cast<unsigned long>(k)) * w * values_[k - 1];
    }
    ++count_;
}

void PsiAggregate::remove(const Scalar& w) {
    if (count_ == 0) throw Error("remove from an empty Psi aggregate");
    // Descending k keeps values_[k - 1] at its pre-removal value.
    for (std::size_t k = values_.size() - 1; k >= 1; --k) {
        values_[k] -= Scalar(static_cast<unsigned long>(k)) * w * values_[k - 1];
    }
    --count_;
}

std::vector<Scalar> psi_vector(std::span<const Scalar> multiset, std::size_t kmax) {
    PsiAggregate agg(kmax);
    for (const auto& w : multiset) agg.insert(w);
    return {agg.values().begin(), agg.values().end()};
}

PsiAggregate psi_insert(PsiAggregate agg, const Scalar& w) {
    agg.insert(w);
    return agg;
}

PsiAggregate psi_remove(PsiAggregate agg, const Scalar& w) {
    agg.remove(w);
    return agg;
}

bool check_concavity_claim(const Scalar& z, const Scalar& alpha) {
    if (z <= 1) throw Error("concavity claim needs z > 1");
    if (sgn(alpha) <= 0 || alpha >= 1) throw Error("concavity claim needs alpha in (0, 1)");
    // alpha = a/b; compare z^(b - a) <= ((1 - alpha) z + alpha)^b.
    if (!alpha.get_den().fits_ulong_p()) throw Error("alpha denominator too large");
    const unsigned long a = alpha.get_num().get_ui();
    const unsigned long b = alpha.get_den().get_ui();
    const Scalar rhs_base = (1 - alpha) * z + alpha;
    return pow(z, static_cast<unsigned>(b - a)) <= pow(rhs_base, static_cast<unsigned>(b));
}

namespace {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// Bound on x^(1/k) rounded in direction `rnd`.
void root_bound(Mpfr& out, const Scalar& x, unsigned k, mpfr_rnd_t rnd) {
    mpfr_set_q(out.get(), x.get_mpq_t(), rnd);
    mpfr_rootn_ui(out.get(), out.get(), k, rnd);
}

}  // namespace

std::optional<bool> root_sum_power_bound(const Scalar& lhs, const Scalar& x, const Scalar& y,
                                         unsigned k, unsigned max_bits) {
    if (k == 0) throw Error("root order must be positive");
    if (sgn(x) < 0 || sgn(y) < 0) throw Error("roots of negative values");
    const auto rx = exact_root(x, k);
    const auto ry = exact_root(y, k);
    if (rx && ry) return lhs <= pow(*rx + *ry, k);
    // Proportional arguments: x^(1/k) + y^(1/k) = x^(1/k) (1 + c) with c rational.
    if (sgn(x) == 0) return lhs <= y;
    if (sgn(y) == 0) return lhs <= x;
    if (const auto c = exact_root(y / x, k)) return lhs <= x * pow(1 + *c, k);

    for (unsigned bits = 128; bits <= max_bits; bits *= 2) {
        Mpfr lo(bits), hi(bits), t(bits), lhs_lo(bits), lhs_hi(bits);
        root_bound(lo, x, k, MPFR_RNDD);
        root_bound(t, y, k, MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        mpfr_pow_ui(lo.get(), lo.get(), k, MPFR_RNDD);
        root_bound(hi, x, k, MPFR_RNDU);
        root_bound(t, y, k, MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        mpfr_pow_ui(hi.get(), hi.get(), k, MPFR_RNDU);
        mpfr_set_q(lhs_lo.get(), lhs.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(lhs_hi.get(), lhs.get_mpq_t(), MPFR_RNDU);
        if (mpfr_lessequal_p(lhs_hi.get(), lo.get())) return true;
        if (mpfr_greater_p(lhs_lo.get(), hi.get())) return false;
    }
    return std::nullopt;
}

}  // namespace psieq
