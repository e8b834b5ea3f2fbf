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

#include "twirl/perm_twirl.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

int mod(long a, long m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

constexpr int kMaxTwirlK = 4;
constexpr int kMaxGramK = 6;

BigInt int_pow(std::int64_t base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) {
        r *= static_cast<long>(base);
    }
    return r;
}

// Cycles listed as (m, pi^-1(m), pi^-2(m), ...), the order of the trace product.
std::vector<std::vector<int>> trace_orders(const Permutation &pi) {
    Permutation inv = pi.inverse();
    std::vector<std::vector<int>> out;
    for (const auto &cycle : pi.cycles()) {
        std::vector<int> order{cycle[0]};
        for (int m = inv(cycle[0]); m != cycle[0]; m = inv(m)) {
            order.push_back(m);
        }
        out.push_back(std::move(order));
    }
    return out;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || v >= k() || seen[v]) {
            throw ParameterError("image array is not a bijection on [k]");
        }
        seen[v] = true;
    }
    if (images_.empty()) {
        throw ParameterError("permutation degree must be >= 1");
    }
}

Permutation Permutation::identity(int k) {
    std::vector<int> images(k);
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text, int k) {
    std::vector<std::vector<int>> cycles;
    int max_point = 0;
    bool in_cycle = false;
    for (char ch : text) {
        if (ch == ' ') {
            continue;
        }
        if (ch == 'e' && !in_cycle && text.find_first_not_of(" e") == std::string_view::npos) {
            continue;
        }
        if (ch == '(' && !in_cycle) {
            in_cycle = true;
            cycles.emplace_back();
        } else if (ch == ')' && in_cycle) {
            in_cycle = false;
        } else if (ch >= '1' && ch <= '9' && in_cycle) {
            int point = ch - '1';
            cycles.back().push_back(point);
            max_point = std::max(max_point, point + 1);
        } else {
            throw ParameterError("malformed permutation \"" + std::string(text) + "\"");
        }
    }
    if (in_cycle) {
        throw ParameterError("unterminated cycle in \"" + std::string(text) + "\"");
    }
    if (k == 0) {
        k = std::max(max_point, 1);
    }
    if (max_point > k) {
        throw ParameterError("permutation \"" + std::string(text) + "\" moves points beyond k=" + std::to_string(k));
    }
    std::vector<int> images(k);
    std::iota(images.begin(), images.end(), 0);
    std::vector<bool> used(k, false);
    for (const auto &cycle : cycles) {
        for (size_t i = 0; i < cycle.size(); ++i) {
            if (used[cycle[i]]) {
                throw ParameterError("point repeated in \"" + std::string(text) + "\"");
            }
            used[cycle[i]] = true;
            images[cycle[i]] = cycle[(i + 1) % cycle.size()];
        }
    }
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(k());
    for (int i = 0; i < k(); ++i) {
        inv[images_[i]] = i;
    }
    return Permutation(std::move(inv));
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(k(), false);
    for (int i = 0; i < k(); ++i) {
        if (seen[i]) {
            continue;
        }
        std::vector<int> cycle;
        for (int j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            cycle.push_back(j);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

std::vector<int> Permutation::cycle_type() const {
    std::vector<int> type;
    for (const auto &c : cycles()) {
        type.push_back(static_cast<int>(c.size()));
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

bool Permutation::has_fixed_point() const {
    for (int i = 0; i < k(); ++i) {
        if (images_[i] == i) {
            return true;
        }
    }
    return false;
}

std::string Permutation::str() const {
    std::string out;
    for (const auto &cycle : cycles()) {
        if (cycle.size() < 2) {
            continue;
        }
        out += "(";
        for (int p : cycle) {
            out += std::to_string(p + 1);
        }
        out += ")";
    }
    return out.empty() ? "e" : out;
}

Permutation compose(const Permutation &a, const Permutation &b) {
    if (a.k() != b.k()) {
        throw ParameterError("compose: permutation degrees differ");
    }
    std::vector<int> images(a.k());
    for (int i = 0; i < a.k(); ++i) {
        images[i] = a(b(i));
    }
    return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(int k) {
    if (k < 1 || k > 9) {
        throw ParameterError("permutation degree must be in [1, 9], got " + std::to_string(k));
    }
    std::vector<int> images(k);
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

ExactMatrix w_dense_exact(const Permutation &pi, const SystemParams &params) {
    const int k = pi.k();
    std::int64_t size = 1;
    for (int i = 0; i < k; ++i) {
        size *= params.dim();
        if (size > kDenseCap) {
            throw CapExceeded("dense W_pi needs D^k <= " + std::to_string(kDenseCap));
        }
    }
    const std::int64_t dim = params.dim();
    Permutation inv = pi.inverse();
    ExactMatrix m(size, params.phase_order());
    const Cyclotomic one = Cyclotomic::one(params.phase_order());
    std::vector<std::int64_t> in(k);
    std::vector<std::int64_t> out(k);
    for (std::int64_t col = 0; col < size; ++col) {
        std::int64_t rest = col;
        for (int j = k - 1; j >= 0; --j) {
            in[j] = rest % dim;
            rest /= dim;
        }
        std::int64_t row = 0;
        for (int m_ = 0; m_ < k; ++m_) {
            out[m_] = in[inv(m_)];
            row = row * dim + out[m_];
        }
        m.add(row, col, one);
    }
    return m;
}

SparseOperator w_pauli_decomposition_dense(const Permutation &pi, const SystemParams &params) {
    return pauli_expand_dense(w_dense_exact(pi, params), params, pi.k());
}

namespace {

SparseOperator closed_form_w(const Permutation &pi, const SystemParams &params, const LabelAlgebra &algebra) {
    const int k = pi.k();
    const std::uint32_t count = algebra.count();
    const auto orders = trace_orders(pi);
    const int cycles = static_cast<int>(orders.size());
    // D^{#cycles - k}
    const Rational scale(1, int_pow(params.dim(), k - cycles));
    const int order = params.phase_order();
    SparseOperator out(params, k);
    TensorKey key(k, 0);

    auto phase_of = [&]() {
        long theta = 0;
        for (const auto &cyc : orders) {
            std::uint32_t cur = 0;
            for (int m : cyc) {
                std::uint32_t b = algebra.dagger_label(key[m]);
                theta += algebra.dagger_phase(key[m]) + algebra.mul_phase(cur, b);
                cur = algebra.mul_label(cur, b);
            }
        }
        return mod(theta, order);
    };

    std::function<void(size_t, size_t)> fill = [&](size_t c, size_t pos) {
        if (c == orders.size()) {
            out.add_term(key, Cyclotomic::root(order, phase_of()) * scale);
            return;
        }
        const auto &cyc = orders[c];
        if (pos + 1 == cyc.size()) {
            std::uint32_t sum = 0;
            for (size_t i = 0; i + 1 < cyc.size(); ++i) {
                sum = algebra.mul_label(sum, key[cyc[i]]);
            }
            key[cyc[pos]] = algebra.dagger_label(sum);
            fill(c + 1, 0);
            return;
        }
        for (std::uint32_t a = 0; a < count; ++a) {
            key[cyc[pos]] = a;
            fill(c, pos + 1);
        }
    };
    fill(0, 0);
    return out;
}

}  // namespace

SparseOperator w_pauli_decomposition(const Permutation &pi, const SystemParams &params) {
    if (pi.k() <= kMaxTwirlK) {
        if (params.label_count() > 65536) {
            throw CapExceeded("closed-form W_pi needs d^{2n} <= 65536");
        }
        return closed_form_w(pi, params, LabelAlgebra(params));
    }
    return w_pauli_decomposition_dense(pi, params);
}

std::vector<std::vector<BigInt>> gram_matrix(int k, std::int64_t dim) {
    if (k < 1 || k > kMaxGramK) {
        throw ParameterError("gram_matrix needs 1 <= k <= " + std::to_string(kMaxGramK));
    }
    if (dim < 1) {
        throw ParameterError("gram_matrix needs D >= 1");
    }
    std::vector<Permutation> perms = all_permutations(k);
    std::vector<std::vector<BigInt>> g(perms.size(), std::vector<BigInt>(perms.size()));
    for (size_t i = 0; i < perms.size(); ++i) {
        Permutation inv = perms[i].inverse();
        for (size_t j = 0; j < perms.size(); ++j) {
            g[i][j] = int_pow(dim, compose(inv, perms[j]).cycle_count());
        }
    }
    return g;
}

Cyclotomic HaarCoefficients::alpha(const Permutation &pi) const {
    for (size_t i = 0; i < perms.size(); ++i) {
        if (perms[i] == pi) {
            return u[i];
        }
    }
    throw ParameterError("permutation " + pi.str() + " has the wrong degree");
}

HaarProjector::HaarProjector(const SystemParams &params, int k)
    : params_(params), k_(k), algebra_(params), perms_(all_permutations(k)) {
    if (k > kMaxTwirlK) {
        throw ParameterError("Haar twirl supports k <= " + std::to_string(kMaxTwirlK) + ", got " + std::to_string(k));
    }
    for (const auto &p : perms_) {
        cycle_orders_.push_back(trace_orders(p));
        cycle_counts_.push_back(p.cycle_count());
    }
    gram_ = gram_matrix(k, params.dim());
    RationalMatrix g(perms_.size(), std::vector<Rational>(perms_.size()));
    for (size_t i = 0; i < perms_.size(); ++i) {
        for (size_t j = 0; j < perms_.size(); ++j) {
            g[i][j] = Rational(gram_[i][j]);
        }
    }
    basis_ = lex_first_independent_columns(g);
    RationalMatrix gbb(basis_.size(), std::vector<Rational>(basis_.size()));
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = 0; j < basis_.size(); ++j) {
            gbb[i][j] = g[basis_[i]][basis_[j]];
        }
    }
    gram_basis_inverse_ = exact_inverse(gbb);
    w_cache_.resize(perms_.size());
    for (size_t i = 0; i < perms_.size(); ++i) {
        w_once_.push_back(std::make_unique<std::once_flag>());
    }
}

std::vector<Cyclotomic> HaarProjector::solve(const std::vector<Cyclotomic> &v) const {
    if (v.size() != perms_.size()) {
        throw ParameterError("solve: expected one inner product per permutation");
    }
    const int order = params_.phase_order();
    std::vector<Cyclotomic> u(perms_.size(), Cyclotomic::zero(order));
    for (size_t i = 0; i < basis_.size(); ++i) {
        Cyclotomic acc = Cyclotomic::zero(order);
        for (size_t j = 0; j < basis_.size(); ++j) {
            const Rational &g = gram_basis_inverse_[i][j];
            if (g != 0 && !v[basis_[j]].is_zero()) {
                acc += v[basis_[j]] * g;
            }
        }
        u[basis_[i]] = acc;
    }
    return u;
}

Cyclotomic HaarProjector::norm2(const std::vector<Cyclotomic> &u) const {
    Cyclotomic acc = Cyclotomic::zero(params_.phase_order());
    for (size_t i = 0; i < perms_.size(); ++i) {
        if (u[i].is_zero()) {
            continue;
        }
        Cyclotomic ui = u[i].conj();
        for (size_t j = 0; j < perms_.size(); ++j) {
            if (!u[j].is_zero()) {
                acc += ui * u[j] * Rational(gram_[i][j]);
            }
        }
    }
    return acc;
}

bool HaarProjector::cycles_close(size_t perm, const std::uint32_t *key) const {
    for (const auto &cyc : cycle_orders_[perm]) {
        std::uint32_t cur = 0;
        for (int m : cyc) {
            cur = algebra_.mul_label(cur, key[m]);
        }
        if (cur != 0) {
            return false;
        }
    }
    return true;
}

std::optional<int> HaarProjector::trace_phase(size_t perm, const std::uint32_t *key) const {
    long theta = 0;
    for (const auto &cyc : cycle_orders_[perm]) {
        std::uint32_t cur = 0;
        for (int m : cyc) {
            std::uint32_t b = algebra_.dagger_label(key[m]);
            theta += algebra_.dagger_phase(key[m]) + algebra_.mul_phase(cur, b);
            cur = algebra_.mul_label(cur, b);
        }
        if (cur != 0) {
            return std::nullopt;
        }
    }
    return mod(theta, params_.phase_order());
}

const SparseOperator &HaarProjector::w(size_t perm) const {
    std::call_once(*w_once_[perm], [&] { w_cache_[perm] = closed_form_w(perms_[perm], params_, algebra_); });
    return *w_cache_[perm];
}

SparseOperator HaarProjector::combine(const std::vector<Cyclotomic> &u) const {
    SparseOperator out(params_, k_);
    for (size_t i = 0; i < perms_.size(); ++i) {
        if (!u[i].is_zero()) {
            out = op_add(out, op_scale(w(i), u[i]));
        }
    }
    return out;
}

std::pair<SparseOperator, HaarCoefficients> HaarProjector::twirl(const SparseOperator &x) const {
    if (!(x.params() == params_) || x.k() != k_) {
        throw ParameterError("haar twirl: operator shape does not match the projector");
    }
    const int order = params_.phase_order();
    std::vector<Cyclotomic> v(perms_.size(), Cyclotomic::zero(order));
    for (size_t s = 0; s < perms_.size(); ++s) {
        // <W_s, Y> = conj(<Y, W_s>) = D^c w^-theta
        bool any = false;
        Cyclotomic acc = Cyclotomic::zero(order);
        for (const auto &[key, c] : x.terms()) {
            if (auto theta = trace_phase(s, key.data())) {
                acc += c.rotated(-*theta);
                any = true;
            }
        }
        if (any) {
            v[s] = acc * Rational(int_pow(params_.dim(), cycle_counts_[s]));
        }
    }
    HaarCoefficients coeffs;
    coeffs.perms = perms_;
    coeffs.basis = basis_;
    coeffs.u = solve(v);
    SparseOperator t = combine(coeffs.u);
    return {std::move(t), std::move(coeffs)};
}

std::pair<SparseOperator, HaarCoefficients> haar_twirl(const SparseOperator &x) {
    HaarProjector projector(x.params(), x.k());
    return projector.twirl(x);
}

SpanDecision is_in_permutation_span(const SparseOperator &x) {
    auto [t, coeffs] = haar_twirl(x);
    SparseOperator diff = op_add(x, op_scale(t, Rational(-1)));
    Cyclotomic residual = hs_inner(diff, diff);
    return SpanDecision{residual.is_zero(), std::move(coeffs), residual};
}

}  // namespace twirl
