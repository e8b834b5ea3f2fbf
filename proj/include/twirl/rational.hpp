// Copyright 2026 The twirl-lab Authors
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

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace twirl {

using Rational = mpq_class;
using BigInt = mpz_class;

/// num/den in lowest terms. mpq_class's two-argument constructor does not reduce,
/// so every non-trivial fraction goes through here. Throws ParameterError on den == 0.
Rational make_rational(const BigInt &num, const BigInt &den);

/// "num/den", or just "num" for integers.
std::string to_string(const Rational &q);

/// Accepts "a", "a/b" and finite decimals such as "0.125" or "-3.5e-2".
/// Decimals are converted exactly. Throws ParameterError on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace twirl
