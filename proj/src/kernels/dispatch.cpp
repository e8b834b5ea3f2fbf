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

#include <atomic>

#include "twirl/errors.hpp"
#include "twirl/kernels/tuple_images.hpp"

namespace twirl::kernels {

namespace {

// -1: no override; otherwise the forced Isa value.
std::atomic<int> g_override{-1};

}  // namespace

bool avx2_available() {
#if defined(TWIRL_HAVE_AVX2)
    static const bool available = __builtin_cpu_supports("avx2");
    return available;
#else
    return false;
#endif
}

Isa active_isa() {
    int forced = g_override.load(std::memory_order_relaxed);
    if (forced >= 0) {
        return static_cast<Isa>(forced);
    }
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

void set_isa_override(std::optional<Isa> isa) {
    if (isa == Isa::Avx2 && !avx2_available()) {
        throw ParameterError("AVX2 kernels are not available on this CPU or build");
    }
    g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

const char *isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void tuple_images(const TupleImageArgs &args) {
#if defined(TWIRL_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) {
        tuple_images_avx2(args);
        return;
    }
#endif
    tuple_images_scalar(args);
}

}  // namespace twirl::kernels
