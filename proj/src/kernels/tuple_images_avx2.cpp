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

#include <immintrin.h>

#include "twirl/kernels/tuple_images.hpp"

namespace twirl::kernels {

// Eight elements per step: widen the u16 rows to u32 lanes, fold the key with
// a multiply-add per row and keep the phase reduced after every add.
void tuple_images_avx2(const TupleImageArgs &args) {
    const __m256i radix = _mm256_set1_epi32(static_cast<int>(args.radix));
    const __m256i order = _mm256_set1_epi32(static_cast<int>(args.phase_order));
    const __m256i order_minus_one = _mm256_set1_epi32(static_cast<int>(args.phase_order) - 1);
    std::size_t e = 0;
    for (; e + 8 <= args.count; e += 8) {
        __m256i key = _mm256_setzero_si256();
        __m256i phase = _mm256_setzero_si256();
        for (int j = 0; j < args.k; ++j) {
            __m128i l = _mm_loadu_si128(reinterpret_cast<const __m128i *>(args.label_rows[j] + e));
            __m128i p = _mm_loadu_si128(reinterpret_cast<const __m128i *>(args.phase_rows[j] + e));
            key = _mm256_add_epi32(_mm256_mullo_epi32(key, radix), _mm256_cvtepu16_epi32(l));
            phase = _mm256_add_epi32(phase, _mm256_cvtepu16_epi32(p));
            __m256i over = _mm256_cmpgt_epi32(phase, order_minus_one);
            phase = _mm256_sub_epi32(phase, _mm256_and_si256(over, order));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(args.keys + e), key);
        // Phases fit in 16 bits; pack the two 128-bit halves.
        __m128i lo = _mm256_castsi256_si128(phase);
        __m128i hi = _mm256_extracti128_si256(phase, 1);
        _mm_storeu_si128(reinterpret_cast<__m128i *>(args.phases + e), _mm_packus_epi32(lo, hi));
    }
    if (e < args.count) {
        TupleImageArgs tail = args;
        for (int j = 0; j < args.k; ++j) {
            tail.label_rows[j] += e;
            tail.phase_rows[j] += e;
        }
        tail.count = args.count - e;
        tail.keys += e;
        tail.phases += e;
        tuple_images_scalar(tail);
    }
}

}  // namespace twirl::kernels
