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

#include <vector>

#include "twirl/rational.hpp"

namespace twirl {

using RationalMatrix = std::vector<std::vector<Rational>>;

size_t exact_rank(RationalMatrix m);

/// Greedy scan of the columns in index order, keeping a column whenever it is
/// independent of those already kept.
std::vector<size_t> lex_first_independent_columns(const RationalMatrix &m);

/// Throws ContractViolation when m is singular.
RationalMatrix exact_inverse(const RationalMatrix &m);

}  // namespace twirl
