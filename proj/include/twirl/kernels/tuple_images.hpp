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

#include <cstddef>
#include <cstdint>
#include <optional>

namespace twirl::kernels {

enum class Isa { Scalar, Avx2 };

inline constexpr int kMaxTupleRows = 8;

/// Images of one k-fold Pauli tensor under every ensemble element.
///
/// For element e:
///   keys[e]   = sum_j label_rows[j][e] * radix^(k-1-j)
///   phases[e] = sum_j phase_rows[j][e] mod phase_order
/// The caller guarantees radix^k < 2^32, phase entries below phase_order and
/// phase_order <= 4096.
struct TupleImageArgs {
    const std::uint16_t *label_rows[kMaxTupleRows];
    const std::uint16_t *phase_rows[kMaxTupleRows];
    int k = 0;
    std::size_t count = 0;
    std::uint32_t radix = 0;
    std::uint32_t phase_order = 0;
    std::uint32_t *keys = nullptr;
    std::uint16_t *phases = nullptr;
};

void tuple_images_scalar(const TupleImageArgs &args);
/// Present only on x86-64 builds; callers go through tuple_images().
void tuple_images_avx2(const TupleImageArgs &args);

/// Runs the variant chosen by active_isa().
void tuple_images(const TupleImageArgs &args);

bool avx2_available();
/// The variant tuple_images() uses: the override when set, else the best the CPU supports.
Isa active_isa();
/// Forces a variant (tests and benchmarks); nullopt restores detection. Forcing
/// Avx2 on a CPU without it throws ParameterError.
void set_isa_override(std::optional<Isa> isa);
const char *isa_name(Isa isa);

}  // namespace twirl::kernels
