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
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "twirl/pauli.hpp"
#include "twirl/rational.hpp"

namespace twirl {

/// Clifford element modulo global phase, stored as the images of the
/// generators X_j and Z_j under conjugation c g c^dagger.
class CliffordTableau {
   public:
    static CliffordTableau identity(const SystemParams &params);
    /// Validates; throws ContractViolation naming the first violated condition.
    static CliffordTableau from_images(const SystemParams &params, std::vector<PauliString> x_images,
                                       std::vector<PauliString> z_images);
    /// No validation. Operations on an invalid unchecked tableau throw ContractViolation.
    static CliffordTableau unchecked(const SystemParams &params, std::vector<PauliString> x_images,
                                     std::vector<PauliString> z_images);

    const SystemParams &params() const { return params_; }
    const std::vector<PauliString> &x_images() const { return x_images_; }
    const std::vector<PauliString> &z_images() const { return z_images_; }
    bool known_valid() const { return known_valid_; }

    /// Image of generator slot t, with slots ordered X_0, Z_0, X_1, Z_1, ...
    const PauliString &slot_image(int t) const { return t % 2 == 0 ? x_images_[t / 2] : z_images_[t / 2]; }

    friend bool operator==(const CliffordTableau &a, const CliffordTableau &b) {
        return a.params_ == b.params_ && a.x_images_ == b.x_images_ && a.z_images_ == b.z_images_;
    }
    friend std::strong_ordering operator<=>(const CliffordTableau &a, const CliffordTableau &b);

   private:
    CliffordTableau(const SystemParams &params, std::vector<PauliString> x_images, std::vector<PauliString> z_images,
                    bool known_valid);

    friend CliffordTableau tableau_compose(const CliffordTableau &, const CliffordTableau &);
    friend CliffordTableau tableau_inverse(const CliffordTableau &);
    friend CliffordTableau pauli_tableau(const SystemParams &, const PauliLabel &);
    friend class CliffordBuilder;

    SystemParams params_;
    std::vector<PauliString> x_images_;
    std::vector<PauliString> z_images_;
    bool known_valid_;
};

struct ValidityReport {
    bool ok = true;
    /// Human-readable description of the first failure, empty when ok.
    std::string message;
    /// Generator slots (X_0, Z_0, X_1, ... numbering) of the first violated pair,
    /// or a single slot repeated for an order violation.
    std::optional<std::pair<int, int>> slots;
};

/// Symplectic condition F(im g, im h) = F(g, h) on all generator pairs, plus every
/// image being a nonidentity Pauli whose order divides d.
ValidityReport tableau_validate(const CliffordTableau &c);

/// c p c^dagger with exact phase.
PauliString tableau_apply(const CliffordTableau &c, const PauliString &p);
/// The element acting as c2 first, then c1.
CliffordTableau tableau_compose(const CliffordTableau &c1, const CliffordTableau &c2);
CliffordTableau tableau_inverse(const CliffordTableau &c);
/// Conjugation by the representative of a Pauli label.
CliffordTableau pauli_tableau(const SystemParams &params, const PauliLabel &label);

/// |C_n^d| = d^{n^2} prod_{j=1..n} (d^{2j} - 1) * d^{2n}. Needs prime d.
BigInt clifford_group_order(const SystemParams &params);

/// Every element of C_n^d exactly once, in depth-first lexicographic order over
/// (label, phase) choices for X_0, Z_0, X_1, Z_1, ... Needs prime d; refuses with
/// CapExceeded when the group order exceeds `cap`.
std::vector<CliffordTableau> enumerate_clifford(const SystemParams &params, std::uint64_t cap = 10'000'000);
void for_each_clifford(const SystemParams &params, const std::function<void(const CliffordTableau &)> &visit,
                       std::uint64_t cap = 10'000'000);
/// enumerate_clifford backed by an on-disk cache when TWIRL_LAB_CACHE names a directory.
std::vector<CliffordTableau> enumerate_clifford_cached(const SystemParams &params, std::uint64_t cap = 10'000'000);

/// Exactly uniform element of C_n^d: each generator image is drawn uniformly among
/// all completions valid for the images already chosen. Needs prime d.
CliffordTableau sample_clifford(const SystemParams &params, std::mt19937_64 &rng);
CliffordTableau sample_clifford(const SystemParams &params, std::uint64_t seed);

struct EnsembleEntry {
    Rational weight;
    CliffordTableau element;
};

/// Weighted finite list of Clifford elements. Weights are nonnegative and sum to
/// one exactly; repeats are allowed and their weights add.
class Ensemble {
   public:
    /// Validates weights and tableaux; throws ContractViolation.
    Ensemble(const SystemParams &params, std::vector<EnsembleEntry> entries);

    static Ensemble uniform(const SystemParams &params, std::vector<CliffordTableau> elements);
    /// Uniform over C_n^d.
    static Ensemble clifford_uniform(const SystemParams &params);
    /// Uniform over conjugation by the d^{2n} Pauli representatives.
    static Ensemble pauli_uniform(const SystemParams &params);
    static Ensemble singleton(const CliffordTableau &element);

    const SystemParams &params() const { return params_; }
    const std::vector<EnsembleEntry> &entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

   private:
    SystemParams params_;
    std::vector<EnsembleEntry> entries_;
};

/// Total weight of entries mapping every p_i (canonical representative) to exactly
/// q_i, phase included. Zero for inconsistent commutation patterns.
Rational subensemble_weight(const Ensemble &e, std::span<const PauliLabel> p, std::span<const PauliString> q);

/// Right Pauli-invariance modulo phase: for every entry U and every Pauli P the
/// aggregated weight of U P equals that of U.
bool is_pauli_invariant(const Ensemble &e);

/// Conjugation action of every ensemble element on every label, laid out
/// label-major so the images of one label under all elements are contiguous:
///   U_e rep(l) U_e^dagger = w^{phase_row(l)[e]} rep(label_row(l)[e]).
/// Weights are stored as integers over a common denominator.
class EnsembleImages {
   public:
    explicit EnsembleImages(const Ensemble &e);

    const SystemParams &params() const { return params_; }
    std::uint32_t label_count() const { return label_count_; }
    size_t size() const { return size_; }
    const std::uint16_t *label_row(std::uint32_t label) const { return &labels_[label * size_]; }
    const std::uint16_t *phase_row(std::uint32_t label) const { return &phases_[label * size_]; }
    /// weight(e) = int_weight(e) / denominator().
    std::int64_t int_weight(size_t e) const { return weights_[e]; }
    std::span<const std::int64_t> int_weights() const { return weights_; }
    const BigInt &denominator() const { return denominator_; }

   private:
    SystemParams params_;
    std::uint32_t label_count_;
    size_t size_;
    std::vector<std::uint16_t> labels_;
    std::vector<std::uint16_t> phases_;
    std::vector<std::int64_t> weights_;
    BigInt denominator_;
};

}  // namespace twirl
