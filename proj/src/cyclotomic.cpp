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

#include "twirl/cyclotomic.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

constexpr int kMaxOrder = 4096;

using IntPoly = std::vector<long>;

// Exact division by a monic integer polynomial; the remainder must be zero.
IntPoly divide_monic(IntPoly num, const IntPoly &den) {
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    IntPoly quot(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
        long c = num[i];
        quot[i - dd] = c;
        if (c != 0) {
            for (int t = 0; t <= dd; ++t) {
                num[i - dd + t] -= c * den[t];
            }
        }
    }
    return quot;
}

IntPoly cyclotomic_poly(int order) {
    std::map<int, IntPoly> done;
    for (int m = 1; m <= order; ++m) {
        if (order % m != 0) {
            continue;
        }
        IntPoly p(m + 1, 0);
        p[0] = -1;
        p[m] = 1;
        for (const auto &[div, phi] : done) {
            if (m % div == 0) {
                p = divide_monic(std::move(p), phi);
            }
        }
        done.emplace(m, std::move(p));
    }
    return done.at(order);
}

template <typename Coeff>
void reduce_in_place(std::vector<Coeff> &a, const IntPoly &phi) {
    int deg = static_cast<int>(phi.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= deg; --i) {
        if (a[i] == 0) {
            continue;
        }
        Coeff c = a[i];
        for (int t = 0; t <= deg; ++t) {
            a[i - deg + t] -= c * phi[t];
        }
    }
    if (static_cast<int>(a.size()) > deg) {
        a.resize(deg);
    }
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

CyclotomicField::CyclotomicField(int order) : order_(order), minimal_poly_(cyclotomic_poly(order)) {
    powers_.reserve(order);
    IntPoly cur{1};
    for (int j = 0; j < order; ++j) {
        IntPoly r = cur;
        reduce_in_place(r, minimal_poly_);
        r.resize(degree(), 0);
        powers_.push_back(r);
        cur = r;
        cur.insert(cur.begin(), 0);
    }
}

const CyclotomicField &CyclotomicField::get(int order) {
    if (order < 1 || order > kMaxOrder) {
        throw ParameterError("cyclotomic order " + std::to_string(order) + " outside [1, " +
                             std::to_string(kMaxOrder) + "]");
    }
    static std::array<std::atomic<const CyclotomicField *>, kMaxOrder + 1> fast{};
    if (const CyclotomicField *f = fast[order].load(std::memory_order_acquire)) {
        return *f;
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CyclotomicField>> interned;
    std::lock_guard<std::mutex> lock(mu);
    auto it = interned.find(order);
    if (it == interned.end()) {
        it = interned.emplace(order, std::unique_ptr<CyclotomicField>(new CyclotomicField(order))).first;
    }
    fast[order].store(it->second.get(), std::memory_order_release);
    return *it->second;
}

const std::vector<long> &CyclotomicField::power(int j) const { return powers_[mod(j, order_)]; }

Cyclotomic::Cyclotomic(int order) : field_(&CyclotomicField::get(order)) {}

Cyclotomic::Cyclotomic(int order, const Rational &value) : field_(&CyclotomicField::get(order)) {
    if (value != 0) {
        coeffs_.push_back(value);
    }
}

Cyclotomic Cyclotomic::root(int order, long j) {
    Cyclotomic r(order);
    const auto &p = r.field_->power(static_cast<int>(mod(j, order)));
    r.coeffs_.assign(p.begin(), p.end());
    r.trim();
    return r;
}

Cyclotomic Cyclotomic::from_phase_counts(int order, std::span<const BigInt> counts, const Rational &scale) {
    Cyclotomic r(order);
    if (static_cast<int>(counts.size()) != order) {
        throw ParameterError("phase count vector has wrong length");
    }
    std::vector<BigInt> acc(r.field_->degree(), 0);
    for (int s = 0; s < order; ++s) {
        if (counts[s] == 0) {
            continue;
        }
        const auto &p = r.field_->power(s);
        for (size_t t = 0; t < acc.size(); ++t) {
            if (p[t] != 0) {
                acc[t] += counts[s] * p[t];
            }
        }
    }
    r.coeffs_.reserve(acc.size());
    for (auto &a : acc) {
        r.coeffs_.emplace_back(a);
        r.coeffs_.back() *= scale;
    }
    r.trim();
    return r;
}

Cyclotomic Cyclotomic::from_phase_counts(int order, std::span<const long> counts, const Rational &scale) {
    std::vector<BigInt> big;
    big.reserve(counts.size());
    for (long c : counts) {
        big.emplace_back(static_cast<long>(c));
    }
    return from_phase_counts(order, std::span<const BigInt>(big), scale);
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) {
        throw ContractViolation("cyclotomic element " + str() + " is not rational");
    }
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Rational Cyclotomic::coeff(int j) const {
    return j >= 0 && j < static_cast<int>(coeffs_.size()) ? coeffs_[j] : Rational(0);
}

void Cyclotomic::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

void Cyclotomic::check_same_field(const Cyclotomic &o) const {
    if (field_ != o.field_) {
        throw ParameterError("cyclotomic orders differ: " + std::to_string(order()) + " vs " +
                             std::to_string(o.order()));
    }
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic r(order());
    if (is_zero()) {
        return r;
    }
    std::vector<Rational> acc(field_->degree(), 0);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) {
            continue;
        }
        const auto &p = field_->power(static_cast<int>(mod(-static_cast<long>(j), order())));
        for (size_t t = 0; t < acc.size(); ++t) {
            if (p[t] != 0) {
                acc[t] += coeffs_[j] * p[t];
            }
        }
    }
    r.coeffs_ = std::move(acc);
    r.trim();
    return r;
}

Cyclotomic Cyclotomic::real_part() const {
    Cyclotomic r = *this + conj();
    r *= Rational(1, 2);
    return r;
}

Cyclotomic Cyclotomic::rotated(long j) const { return *this * root(order(), j); }

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> acc = 0;
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / order();
        acc += coeffs_[j].get_d() * std::polar(1.0, angle);
    }
    return acc;
}

Cyclotomic &Cyclotomic::operator+=(const Cyclotomic &o) {
    check_same_field(o);
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size(), 0);
    }
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
        coeffs_[j] += o.coeffs_[j];
    }
    trim();
    return *this;
}

Cyclotomic &Cyclotomic::operator-=(const Cyclotomic &o) {
    check_same_field(o);
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size(), 0);
    }
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
        coeffs_[j] -= o.coeffs_[j];
    }
    trim();
    return *this;
}

Cyclotomic operator*(const Cyclotomic &a, const Cyclotomic &b) {
    a.check_same_field(b);
    Cyclotomic r(a.order());
    if (a.is_zero() || b.is_zero()) {
        return r;
    }
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    reduce_in_place(prod, a.field_->minimal_poly());
    r.coeffs_ = std::move(prod);
    r.trim();
    return r;
}

Cyclotomic &Cyclotomic::operator*=(const Cyclotomic &o) { return *this = *this * o; }

Cyclotomic &Cyclotomic::operator*=(const Rational &q) {
    if (q == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto &c : coeffs_) {
        c *= q;
    }
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto &c : r.coeffs_) {
        c = -c;
    }
    return r;
}

bool operator==(const Cyclotomic &a, const Cyclotomic &b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
}

std::string Cyclotomic::str() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        const Rational &c = coeffs_[j];
        if (c == 0) {
            continue;
        }
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (j == 0) {
            out += to_string(mag);
            continue;
        }
        if (mag != 1) {
            out += to_string(mag) + "*";
        }
        out += j == 1 ? "w" : "w^" + std::to_string(j);
    }
    return out;
}

}  // namespace twirl
