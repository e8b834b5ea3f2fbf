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

#include "twirl/kernels/tuple_images.hpp"

namespace twirl::kernels {

void tuple_images_scalar(const TupleImageArgs &args) {
    for (std::size_t e = 0; e < args.count; ++e) {
        std::uint32_t key = 0;
        std::uint32_t phase = 0;
        for (int j = 0; j < args.k; ++j) {
            key = key * args.radix + args.label_rows[j][e];
            phase += args.phase_rows[j][e];
            if (phase >= args.phase_order) {
                phase -= args.phase_order;
            }
        }
        args.keys[e] = key;
        args.phases[e] = static_cast<std::uint16_t>(phase);
    }
}

}  // namespace twirl::kernels
