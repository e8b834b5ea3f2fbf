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

#include "twirl/linalg.hpp"

#include "twirl/errors.hpp"

namespace twirl {

namespace {

// Row-reduces in place and returns the pivot column of every pivot row.
std::vector<size_t> row_reduce(RationalMatrix &m) {
    std::vector<size_t> pivots;
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[p], m[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) {
                continue;
            }
            Rational f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) {
                m[i][j] -= f * m[r][j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

size_t exact_rank(RationalMatrix m) { return row_reduce(m).size(); }

std::vector<size_t> lex_first_independent_columns(const RationalMatrix &m) {
    // Pivot columns of the reduced row echelon form are exactly the greedy
    // left-to-right independent set.
    RationalMatrix copy = m;
    return row_reduce(copy);
}

RationalMatrix exact_inverse(const RationalMatrix &m) {
    const size_t n = m.size();
    RationalMatrix aug(n, std::vector<Rational>(2 * n));
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) {
            throw ParameterError("exact_inverse: matrix is not square");
        }
        for (size_t j = 0; j < n; ++j) {
            aug[i][j] = m[i][j];
        }
        aug[i][n + i] = 1;
    }
    std::vector<size_t> pivots = row_reduce(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        throw ContractViolation("exact_inverse: matrix is singular");
    }
    RationalMatrix inv(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            inv[i][j] = aug[i][n + j] / aug[i][i];
        }
    }
    return inv;
}

}  // namespace twirl
