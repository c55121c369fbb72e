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

#include "psieq/scalar.hpp"

#include <cctype>

#include <mpfr.h>

namespace psieq {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

std::optional<Scalar> try_parse_rational(std::string_view text) {
    std::string_view num = text;
    std::string_view den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (!is_digits(den)) return std::nullopt;
    }
    std::string_view mag = num;
    if (!mag.empty() && mag.front() == '-') mag.remove_prefix(1);
    if (!is_digits(mag)) return std::nullopt;

    mpz_class n(std::string(num), 10);
    mpz_class d = 1;
    if (!den.empty()) {
        d = mpz_class(std::string(den), 10);
        if (d == 0) return std::nullopt;
    }
    Scalar x(n, d);
    x.canonicalize();
    return x;
}

Scalar parse_rational(std::string_view text) {
    auto x = try_parse_rational(text);
    if (!x) throw Error("malformed rational \"" + std::string(text) + "\"");
    return *x;
}

std::string to_string(const Scalar& x) { return x.get_str(10); }

std::string to_decimal(const Scalar& x, int digits) {
    mpfr_t v;
    mpfr_init2(v, 256);
    mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDN);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v);
    std::string out(buf);
    mpfr_free_str(buf);
    mpfr_clear(v);
    return out;
}

Scalar pow(const Scalar& base, unsigned exponent) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Scalar x(n, d);
    x.canonicalize();
    return x;
}

mpz_class factorial(unsigned k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

unsigned ceil_log2(const Scalar& x) {
    if (sgn(x) <= 0) throw Error("ceil_log2 requires a positive argument");
    // ceil(n/d) bounds the search; 2^m >= x  <=>  2^m * d >= n.
    unsigned m = 0;
    mpz_class pow2 = 1;
    while (pow2 * x.get_den() < x.get_num()) {
        pow2 <<= 1;
        ++m;
    }
    return m;
}

std::optional<Scalar> exact_root(const Scalar& x, unsigned k) {
    if (k == 0 || sgn(x) < 0) return std::nullopt;
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), x.get_num_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), x.get_den_mpz_t(), k) == 0) return std::nullopt;
    return Scalar(rn, rd);
}

}  // namespace psieq
