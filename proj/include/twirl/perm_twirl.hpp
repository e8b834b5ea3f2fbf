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

#include <compare>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twirl/linalg.hpp"
#include "twirl/operator.hpp"

namespace twirl {

/// Permutation of the k tensor factors, stored 0-based: images()[i] = pi(i).
class Permutation {
   public:
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int k);
    /// Cycle notation with 1-based single-digit points: "(123)" sends 1 to 2, 2 to 3
    /// and 3 to 1; "(12)(34)"; "e" or "()" for the identity. k = 0 infers the
    /// degree from the largest point.
    static Permutation parse(std::string_view text, int k = 0);

    int k() const { return static_cast<int>(images_.size()); }
    const std::vector<int> &images() const { return images_; }
    int operator()(int i) const { return images_[i]; }
    Permutation inverse() const;
    /// Cycles including fixed points, each starting at its smallest point, ordered by that point.
    std::vector<std::vector<int>> cycles() const;
    int cycle_count() const;
    /// Cycle lengths in decreasing order.
    std::vector<int> cycle_type() const;
    bool has_fixed_point() const;
    /// Cycle notation without fixed points, "e" for the identity.
    std::string str() const;

    friend auto operator<=>(const Permutation &, const Permutation &) = default;
    friend bool operator==(const Permutation &, const Permutation &) = default;

   private:
    std::vector<int> images_;
};

/// (a * b)(i) = a(b(i)).
Permutation compose(const Permutation &a, const Permutation &b);
/// All of S_k in lexicographic order of the image arrays; the identity comes first.
std::vector<Permutation> all_permutations(int k);

/// W_pi |i_1 ... i_k> = |i_{pi^-1(1)} ... i_{pi^-1(k)}>.
ExactMatrix w_dense_exact(const Permutation &pi, const SystemParams &params);

/// Pauli expansion of W_pi. Closed form for k <= 4: for Y = rep(q_1) (x) ... (x) rep(q_k),
///   tr(Y^dagger W_pi) = prod over cycles (m, pi^-1(m), ...) of tr(q_m^dagger q_{pi^-1(m)}^dagger ...),
/// nonzero exactly when the labels on every cycle sum to zero. Larger k falls
/// back to the dense expansion under the D^k cap.
SparseOperator w_pauli_decomposition(const Permutation &pi, const SystemParams &params);
SparseOperator w_pauli_decomposition_dense(const Permutation &pi, const SystemParams &params);

/// G[pi][sigma] = tr(W_pi^dagger W_sigma) = D^{#cycles(pi^-1 sigma)} over all_permutations(k). k <= 6.
std::vector<std::vector<BigInt>> gram_matrix(int k, std::int64_t dim);

struct HaarCoefficients {
    std::vector<Permutation> perms;
    /// u[i] multiplies W_{perms[i]}; zero outside the chosen independent subset.
    std::vector<Cyclotomic> u;
    /// Indices into perms of the independent subset.
    std::vector<size_t> basis;
    /// Always true: the Gram solve is an exact projection.
    bool exact = true;

    Cyclotomic alpha(const Permutation &pi) const;
};

/// Exact orthogonal projection onto span{W_pi}, shared by every twirl of a given (n, d, k).
class HaarProjector {
   public:
    HaarProjector(const SystemParams &params, int k);

    const SystemParams &params() const { return params_; }
    int k() const { return k_; }
    const std::vector<Permutation> &perms() const { return perms_; }
    const std::vector<size_t> &basis() const { return basis_; }
    int cycle_count(size_t perm) const { return cycle_counts_[perm]; }
    const std::vector<std::vector<BigInt>> &gram() const { return gram_; }
    const LabelAlgebra &algebra() const { return algebra_; }

    /// Given v[s] = <W_s, X> for every permutation, returns coefficients u with
    /// sum_i u_i W_i the projection of X.
    std::vector<Cyclotomic> solve(const std::vector<Cyclotomic> &v) const;
    /// <T, T> for T = sum_i u_i W_i.
    Cyclotomic norm2(const std::vector<Cyclotomic> &u) const;

    /// theta with tr(Y^dagger W_pi) = D^{#cycles} w^theta for Y the rep tensor on `key`,
    /// or nullopt when that trace vanishes.
    std::optional<int> trace_phase(size_t perm, const std::uint32_t *key) const;
    /// True when every cycle of the permutation has label sum zero on `key`.
    bool cycles_close(size_t perm, const std::uint32_t *key) const;

    /// Cached Pauli decomposition of W_{perms()[perm]}.
    const SparseOperator &w(size_t perm) const;

    std::pair<SparseOperator, HaarCoefficients> twirl(const SparseOperator &x) const;
    SparseOperator combine(const std::vector<Cyclotomic> &u) const;

   private:
    SystemParams params_;
    int k_;
    LabelAlgebra algebra_;
    std::vector<Permutation> perms_;
    std::vector<std::vector<std::vector<int>>> cycle_orders_;
    std::vector<int> cycle_counts_;
    std::vector<std::vector<BigInt>> gram_;
    std::vector<size_t> basis_;
    RationalMatrix gram_basis_inverse_;
    mutable std::vector<std::unique_ptr<std::once_flag>> w_once_;
    mutable std::vector<std::optional<SparseOperator>> w_cache_;
};

/// T_k(X). Needs k <= 4.
std::pair<SparseOperator, HaarCoefficients> haar_twirl(const SparseOperator &x);

struct SpanDecision {
    bool in_span;
    HaarCoefficients coefficients;
    /// ||X - T_k(X)||^2, zero exactly when in_span.
    Cyclotomic residual;
};
SpanDecision is_in_permutation_span(const SparseOperator &x);

}  // namespace twirl
