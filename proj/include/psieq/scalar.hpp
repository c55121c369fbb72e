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

#ifndef PSIEQ_SCALAR_HPP
#define PSIEQ_SCALAR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace psieq {

// Exact rational in canonical (reduced) form. Every weight, coefficient,
// cost and potential in the library is a Scalar.
using Scalar = mpq_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepts `INT` or `INT/INT` with a positive denominator. A leading '-' on
// the numerator is parsed so that validation can report the sign.
Scalar parse_rational(std::string_view text);
std::optional<Scalar> try_parse_rational(std::string_view text);

// Canonical "p" or "p/q".
std::string to_string(const Scalar& x);

// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Scalar& x, int digits = 30);

Scalar pow(const Scalar& base, unsigned exponent);
mpz_class factorial(unsigned k);

// Smallest m >= 0 with 2^m >= x, for x > 0.
unsigned ceil_log2(const Scalar& x);

// Exact k-th root when x is the k-th power of a rational.
std::optional<Scalar> exact_root(const Scalar& x, unsigned k);

}  // namespace psieq

#endif  // PSIEQ_SCALAR_HPP
