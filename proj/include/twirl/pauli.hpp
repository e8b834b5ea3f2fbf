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
#include <string>
#include <string_view>
#include <vector>

namespace twirl {

/// n qudits of local dimension d.
///
/// Phases are tracked as powers of w = exp(2 pi i / N) with N = d for odd d and
/// N = 2d for even d, so w^(N/d) is the commutation root of unity.
class SystemParams {
   public:
    SystemParams(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    /// d^n.
    std::int64_t dim() const { return dim_; }
    /// d^(2n), the number of phase-free Pauli labels.
    std::int64_t label_count() const { return dim_ * dim_; }
    int phase_order() const { return d_ % 2 == 0 ? 2 * d_ : d_; }
    /// Exponent e with w^e equal to the commutation root exp(2 pi i / d).
    int omega_step() const { return d_ % 2 == 0 ? 2 : 1; }
    bool is_prime_d() const;

    friend bool operator==(const SystemParams &, const SystemParams &) = default;

   private:
    int n_;
    int d_;
    std::int64_t dim_;
};

/// Element of the Pauli group modulo phases: X^x Z^z with x, z in Z_d^n.
struct PauliLabel {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> z;

    static PauliLabel identity(const SystemParams &params);
    /// Inverse of index().
    static PauliLabel from_index(const SystemParams &params, std::uint32_t index);
    /// Position in the global lexicographic order (x-major, then z).
    std::uint32_t index(const SystemParams &params) const;
    bool is_identity() const;
    int num_qudits() const { return static_cast<int>(x.size()); }

    friend auto operator<=>(const PauliLabel &, const PauliLabel &) = default;
    friend bool operator==(const PauliLabel &, const PauliLabel &) = default;
};

/// w^s * X^{x_0} Z^{z_0} (x) ... (x) X^{x_{n-1}} Z^{z_{n-1}}, X before Z on every site.
struct PauliString {
    PauliLabel label;
    int s = 0;

    friend auto operator<=>(const PauliString &, const PauliString &) = default;
    friend bool operator==(const PauliString &, const PauliString &) = default;
};

/// Phase exponent of the canonical representative of a label:
/// x.z for even d (the Hermitian choice i^{x.z} X^x Z^z at d = 2), 0 for odd d.
int representative_phase(const SystemParams &params, const PauliLabel &label);
PauliString representative(const SystemParams &params, const PauliLabel &label);
/// s minus the representative phase, mod N: p = w^result * representative(p.label).
int relative_phase(const SystemParams &params, const PauliString &p);

/// Generators X_j and Z_j (phase 0).
PauliString generator_x(const SystemParams &params, int site);
PauliString generator_z(const SystemParams &params, int site);

void check_shape(const SystemParams &params, const PauliLabel &label);
void check_shape(const SystemParams &params, const PauliString &p);

PauliString pauli_mul(const SystemParams &params, const PauliString &p, const PauliString &q);
PauliString pauli_dagger(const SystemParams &params, const PauliString &p);
/// p^e for e >= 0.
PauliString pauli_pow(const SystemParams &params, const PauliString &p, int e);
/// F(p, q) = z_p . x_q - x_p . z_q mod d, so that pq = omega^F qp.
int commutation(const SystemParams &params, const PauliLabel &p, const PauliLabel &q);
inline int commutation(const SystemParams &params, const PauliString &p, const PauliString &q) {
    return commutation(params, p.label, q.label);
}
/// Labels equal up to a power: q = p^j for some j (identity excluded on both sides).
bool proportional_labels(const SystemParams &params, const PauliLabel &p, const PauliLabel &q);

enum class PauliFilter { All, NonIdentity, HermitianReps };

/// Canonical representatives in lexicographic label order.
/// All: d^{2n} entries; NonIdentity and HermitianReps: d^{2n} - 1 (HermitianReps needs d = 2).
/// Refuses (CapExceeded) when d^n > 256.
std::vector<PauliString> enumerate_paulis(const SystemParams &params, PauliFilter filter);

/// Text form "w^s X<digits> Z<digits>", e.g. "X10 Z01" or "w^2 X1 Z1". The w^s
/// prefix is omitted when s = 0.
std::string to_string(const PauliString &p);
std::string to_string(const PauliLabel &label);
PauliString parse_pauli(const SystemParams &params, std::string_view text);

/// Table-driven arithmetic on label indices for the hot loops.
///
/// Phases are relative to canonical representatives:
///   rep(a) rep(b) = w^{mul_phase(a, b)} rep(a + b),
///   rep(a)^dagger = w^{dagger_phase(a)} rep(-a).
/// Multiplication tables are built only when d^{2n} <= 4096; larger systems fall
/// back to PauliString arithmetic.
class LabelAlgebra {
   public:
    explicit LabelAlgebra(const SystemParams &params);

    const SystemParams &params() const { return params_; }
    std::uint32_t count() const { return count_; }
    int phase_order() const { return phase_order_; }

    std::uint32_t mul_label(std::uint32_t a, std::uint32_t b) const;
    int mul_phase(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t dagger_label(std::uint32_t a) const { return dagger_label_[a]; }
    int dagger_phase(std::uint32_t a) const { return dagger_phase_[a]; }
    int rep_phase(std::uint32_t a) const { return rep_phase_[a]; }
    int commutation(std::uint32_t a, std::uint32_t b) const;

   private:
    SystemParams params_;
    std::uint32_t count_;
    int phase_order_;
    bool tabulated_;
    std::vector<std::uint32_t> mul_label_;
    std::vector<std::uint16_t> mul_phase_;
    std::vector<std::uint32_t> dagger_label_;
    std::vector<std::uint16_t> dagger_phase_;
    std::vector<std::uint16_t> rep_phase_;
};

}  // namespace twirl
