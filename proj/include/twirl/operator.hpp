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

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "twirl/cyclotomic.hpp"
#include "twirl/pauli.hpp"

namespace twirl {

/// Component label indices of a k-fold Pauli tensor. Comparing keys as vectors
/// gives the global lexicographic order.
using TensorKey = std::vector<std::uint32_t>;

/// w^s * rep(c_1) (x) ... (x) rep(c_k), with rep the canonical representative.
struct PauliTensor {
    std::vector<PauliLabel> components;
    int s = 0;

    /// Folds every component phase into s.
    static PauliTensor from_strings(const SystemParams &params, const std::vector<PauliString> &parts);
    TensorKey key(const SystemParams &params) const;
};

std::string to_string(const SystemParams &params, const TensorKey &key);

/// Operator on the k-fold tensor space, sum over keys of coeff * rep tensor.
/// Coefficients live in Q(w) with w = exp(2 pi i / N), N the phase order.
/// Zero coefficients are never stored.
class SparseOperator {
   public:
    SparseOperator(const SystemParams &params, int k);

    static SparseOperator identity(const SystemParams &params, int k);
    static SparseOperator from_tensor(const SystemParams &params, const PauliTensor &t);

    const SystemParams &params() const { return params_; }
    int k() const { return k_; }
    int ring_order() const { return params_.phase_order(); }
    const std::map<TensorKey, Cyclotomic> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    /// Coefficient of rep(key); zero when absent.
    Cyclotomic coeff(const TensorKey &key) const;
    /// Accumulates c into the coefficient of key, pruning an exact zero.
    void add_term(const TensorKey &key, const Cyclotomic &c);

    friend bool operator==(const SparseOperator &a, const SparseOperator &b) {
        return a.params_ == b.params_ && a.k_ == b.k_ && a.terms_ == b.terms_;
    }

   private:
    SystemParams params_;
    int k_;
    std::map<TensorKey, Cyclotomic> terms_;
};

/// tr(A^dagger B), conjugate-linear in A.
Cyclotomic hs_inner(const SparseOperator &a, const SparseOperator &b);
SparseOperator op_add(const SparseOperator &a, const SparseOperator &b);
SparseOperator op_scale(const SparseOperator &a, const Cyclotomic &c);
SparseOperator op_scale(const SparseOperator &a, const Rational &c);
/// tr(rep(key)^dagger A) / D^k.
Cyclotomic pauli_coefficient(const SparseOperator &a, const TensorKey &key);

/// Sparse exact square matrix in the computational basis; component 0 and
/// site 0 are the most significant digits of a basis index.
class ExactMatrix {
   public:
    ExactMatrix(std::int64_t size, int ring_order);

    std::int64_t size() const { return size_; }
    int ring_order() const { return ring_order_; }
    const std::map<std::pair<std::int64_t, std::int64_t>, Cyclotomic> &entries() const { return entries_; }
    Cyclotomic at(std::int64_t row, std::int64_t col) const;
    void add(std::int64_t row, std::int64_t col, const Cyclotomic &c);
    Eigen::MatrixXcd to_complex() const;

    friend bool operator==(const ExactMatrix &, const ExactMatrix &) = default;

   private:
    std::int64_t size_;
    int ring_order_;
    std::map<std::pair<std::int64_t, std::int64_t>, Cyclotomic> entries_;
};

/// Largest D^k accepted by the dense routines.
inline constexpr std::int64_t kDenseCap = 512;

/// Complex matrix of size D^k. Refuses (CapExceeded) above kDenseCap.
Eigen::MatrixXcd to_dense(const SparseOperator &a);
ExactMatrix to_dense_exact(const SparseOperator &a);
/// Exact Pauli expansion c_P = tr(P^dagger M) / D^k of an exact matrix of size D^k.
SparseOperator pauli_expand_dense(const ExactMatrix &m, const SystemParams &params, int k);

/// Dense matrix of a single Pauli string on n qudits.
Eigen::MatrixXcd pauli_matrix(const SystemParams &params, const PauliString &p);

/// Sorted array of {"label": [...k labels], "coeff": exact string}.
nlohmann::json to_json(const SparseOperator &a);

}  // namespace twirl
