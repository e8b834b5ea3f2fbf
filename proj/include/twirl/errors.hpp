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

#include <stdexcept>
#include <string>

namespace twirl {

/// Arguments that do not share (n, d, k) or are otherwise malformed.
class ParameterError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A request whose size exceeds a hard feasibility bound. The message always
/// carries the computed size and the bound.
class CapExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A value that breaks a data-structure invariant (invalid tableau, weights
/// that do not sum to one, ...).
class ContractViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace twirl
