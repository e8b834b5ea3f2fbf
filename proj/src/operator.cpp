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

#include "twirl/operator.hpp"

#include <cmath>
#include <numbers>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

int mod(long a, long m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

void check_same_shape(const SparseOperator &a, const SparseOperator &b, const char *what) {
    if (!(a.params() == b.params()) || a.k() != b.k()) {
        throw ParameterError(std::string(what) + ": operands have different (n, d, k)");
    }
}

std::int64_t dense_size(const SystemParams &params, int k) {
    std::int64_t size = 1;
    for (int i = 0; i < k; ++i) {
        size *= params.dim();
        if (size > kDenseCap) {
            throw CapExceeded("dense realization needs D^k <= " + std::to_string(kDenseCap) + ", D=" +
                              std::to_string(params.dim()) + " k=" + std::to_string(k));
        }
    }
    return size;
}

// Flattened digits of all k components, site 0 of component 0 first.
struct TensorDigits {
    std::vector<int> x;
    std::vector<int> z;
    int rep_phase = 0;
};

TensorDigits tensor_digits(const SystemParams &params, const TensorKey &key) {
    TensorDigits t;
    for (std::uint32_t idx : key) {
        PauliLabel label = PauliLabel::from_index(params, idx);
        t.x.insert(t.x.end(), label.x.begin(), label.x.end());
        t.z.insert(t.z.end(), label.z.begin(), label.z.end());
        t.rep_phase += representative_phase(params, label);
    }
    t.rep_phase = mod(t.rep_phase, params.phase_order());
    return t;
}

std::vector<int> index_digits(std::int64_t index, int count, int d) {
    std::vector<int> digits(count);
    for (int i = count - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(index % d);
        index /= d;
    }
    return digits;
}

std::int64_t digits_index(const std::vector<int> &digits, int d) {
    std::int64_t index = 0;
    for (int v : digits) {
        index = index * d + v;
    }
    return index;
}

TensorKey key_from_digits(const SystemParams &params, int k, const std::vector<int> &x, const std::vector<int> &z) {
    TensorKey key(k);
    const int n = params.n();
    for (int c = 0; c < k; ++c) {
        PauliLabel label = PauliLabel::identity(params);
        for (int j = 0; j < n; ++j) {
            label.x[j] = static_cast<std::uint8_t>(x[c * n + j]);
            label.z[j] = static_cast<std::uint8_t>(z[c * n + j]);
        }
        key[c] = label.index(params);
    }
    return key;
}

// Calls emit(row, col, phase exponent) for the nonzero entries of rep(key).
template <class Emit>
void for_each_entry(const SystemParams &params, const TensorKey &key, std::int64_t size, Emit emit) {
    const int d = params.d();
    const int digits = static_cast<int>(key.size()) * params.n();
    TensorDigits t = tensor_digits(params, key);
    for (std::int64_t col = 0; col < size; ++col) {
        std::vector<int> c = index_digits(col, digits, d);
        long zc = 0;
        for (int i = 0; i < digits; ++i) {
            zc += static_cast<long>(t.z[i]) * c[i];
            c[i] = (c[i] + t.x[i]) % d;
        }
        emit(digits_index(c, d), col, mod(t.rep_phase + params.omega_step() * zc, params.phase_order()));
    }
}

}  // namespace

PauliTensor PauliTensor::from_strings(const SystemParams &params, const std::vector<PauliString> &parts) {
    PauliTensor t;
    for (const auto &p : parts) {
        check_shape(params, p);
        t.components.push_back(p.label);
        t.s += relative_phase(params, p);
    }
    t.s = mod(t.s, params.phase_order());
    return t;
}

TensorKey PauliTensor::key(const SystemParams &params) const {
    TensorKey key;
    for (const auto &c : components) {
        check_shape(params, c);
        key.push_back(c.index(params));
    }
    return key;
}

std::string to_string(const SystemParams &params, const TensorKey &key) {
    std::string out;
    for (size_t i = 0; i < key.size(); ++i) {
        out += (i ? " (x) " : "") + to_string(PauliLabel::from_index(params, key[i]));
    }
    return out;
}

SparseOperator::SparseOperator(const SystemParams &params, int k) : params_(params), k_(k) {
    if (k < 1) {
        throw ParameterError("tensor power k must be >= 1, got " + std::to_string(k));
    }
}

SparseOperator SparseOperator::identity(const SystemParams &params, int k) {
    SparseOperator op(params, k);
    op.add_term(TensorKey(k, 0), Cyclotomic::one(params.phase_order()));
    return op;
}

SparseOperator SparseOperator::from_tensor(const SystemParams &params, const PauliTensor &t) {
    SparseOperator op(params, static_cast<int>(t.components.size()));
    op.add_term(t.key(params), Cyclotomic::root(params.phase_order(), t.s));
    return op;
}

Cyclotomic SparseOperator::coeff(const TensorKey &key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Cyclotomic::zero(ring_order()) : it->second;
}

void SparseOperator::add_term(const TensorKey &key, const Cyclotomic &c) {
    if (static_cast<int>(key.size()) != k_) {
        throw ParameterError("tensor key has " + std::to_string(key.size()) + " components, expected " +
                             std::to_string(k_));
    }
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

Cyclotomic hs_inner(const SparseOperator &a, const SparseOperator &b) {
    check_same_shape(a, b, "hs_inner");
    Cyclotomic acc = Cyclotomic::zero(a.ring_order());
    const bool a_smaller = a.size() <= b.size();
    const SparseOperator &small = a_smaller ? a : b;
    const SparseOperator &large = a_smaller ? b : a;
    for (const auto &[key, c] : small.terms()) {
        auto it = large.terms().find(key);
        if (it != large.terms().end()) {
            acc += a_smaller ? c.conj() * it->second : it->second.conj() * c;
        }
    }
    BigInt dk = 1;
    for (int i = 0; i < a.k(); ++i) {
        dk *= static_cast<long>(a.params().dim());
    }
    return acc * Rational(dk);
}

SparseOperator op_add(const SparseOperator &a, const SparseOperator &b) {
    check_same_shape(a, b, "op_add");
    SparseOperator out = a;
    for (const auto &[key, c] : b.terms()) {
        out.add_term(key, c);
    }
    return out;
}

SparseOperator op_scale(const SparseOperator &a, const Cyclotomic &c) {
    SparseOperator out(a.params(), a.k());
    for (const auto &[key, v] : a.terms()) {
        out.add_term(key, v * c);
    }
    return out;
}

SparseOperator op_scale(const SparseOperator &a, const Rational &c) {
    return op_scale(a, Cyclotomic(a.ring_order(), c));
}

Cyclotomic pauli_coefficient(const SparseOperator &a, const TensorKey &key) { return a.coeff(key); }

ExactMatrix::ExactMatrix(std::int64_t size, int ring_order) : size_(size), ring_order_(ring_order) {}

Cyclotomic ExactMatrix::at(std::int64_t row, std::int64_t col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? Cyclotomic::zero(ring_order_) : it->second;
}

void ExactMatrix::add(std::int64_t row, std::int64_t col, const Cyclotomic &c) {
    if (row < 0 || col < 0 || row >= size_ || col >= size_) {
        throw ParameterError("matrix index out of range");
    }
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = entries_.try_emplace({row, col}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            entries_.erase(it);
        }
    }
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size_, size_);
    for (const auto &[rc, v] : entries_) {
        m(rc.first, rc.second) = v.to_complex();
    }
    return m;
}

Eigen::MatrixXcd to_dense(const SparseOperator &a) {
    const std::int64_t size = dense_size(a.params(), a.k());
    const int order = a.params().phase_order();
    std::vector<std::complex<double>> roots(order);
    for (int j = 0; j < order; ++j) {
        roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / order);
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
    for (const auto &[key, c] : a.terms()) {
        const std::complex<double> v = c.to_complex();
        for_each_entry(a.params(), key, size,
                       [&](std::int64_t r, std::int64_t col, int phase) { m(r, col) += v * roots[phase]; });
    }
    return m;
}

ExactMatrix to_dense_exact(const SparseOperator &a) {
    const std::int64_t size = dense_size(a.params(), a.k());
    ExactMatrix m(size, a.ring_order());
    for (const auto &[key, c] : a.terms()) {
        for_each_entry(a.params(), key, size,
                       [&](std::int64_t r, std::int64_t col, int phase) { m.add(r, col, c.rotated(phase)); });
    }
    return m;
}

SparseOperator pauli_expand_dense(const ExactMatrix &m, const SystemParams &params, int k) {
    const std::int64_t size = dense_size(params, k);
    if (m.size() != size) {
        throw ParameterError("pauli_expand_dense: matrix size " + std::to_string(m.size()) + " but D^k = " +
                             std::to_string(size));
    }
    if (m.ring_order() != params.phase_order()) {
        throw ParameterError("pauli_expand_dense: matrix ring order does not match d");
    }
    const int d = params.d();
    const int order = params.phase_order();
    const int digits = k * params.n();
    // Group entries by shift x = row - col; within a group tr(P^dagger M) is a
    // character sum over the column digits.
    std::map<std::int64_t, std::vector<std::pair<std::vector<int>, const Cyclotomic *>>> by_shift;
    for (const auto &[rc, v] : m.entries()) {
        std::vector<int> r = index_digits(rc.first, digits, d);
        std::vector<int> c = index_digits(rc.second, digits, d);
        std::vector<int> x(digits);
        for (int i = 0; i < digits; ++i) {
            x[i] = mod(r[i] - c[i], d);
        }
        by_shift[digits_index(x, d)].emplace_back(std::move(c), &v);
    }
    SparseOperator out(params, k);
    const Rational scale(1, static_cast<unsigned long>(size));
    for (const auto &[xi, group] : by_shift) {
        std::vector<int> x = index_digits(xi, digits, d);
        for (std::int64_t zi = 0; zi < size; ++zi) {
            std::vector<int> z = index_digits(zi, digits, d);
            Cyclotomic acc = Cyclotomic::zero(order);
            for (const auto &[c, v] : group) {
                long zc = 0;
                for (int i = 0; i < digits; ++i) {
                    zc += static_cast<long>(z[i]) * c[i];
                }
                acc += v->rotated(-params.omega_step() * zc);
            }
            if (acc.is_zero()) {
                continue;
            }
            TensorKey key = key_from_digits(params, k, x, z);
            int rep = tensor_digits(params, key).rep_phase;
            out.add_term(key, acc.rotated(-rep) * scale);
        }
    }
    return out;
}

Eigen::MatrixXcd pauli_matrix(const SystemParams &params, const PauliString &p) {
    check_shape(params, p);
    SparseOperator op = SparseOperator::from_tensor(params, PauliTensor::from_strings(params, {p}));
    return to_dense(op);
}

nlohmann::json to_json(const SparseOperator &a) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[key, c] : a.terms()) {
        nlohmann::json labels = nlohmann::json::array();
        for (std::uint32_t idx : key) {
            labels.push_back(to_string(PauliLabel::from_index(a.params(), idx)));
        }
        terms.push_back({{"label", labels}, {"coeff", c.str()}});
    }
    return terms;
}

}  // namespace twirl
