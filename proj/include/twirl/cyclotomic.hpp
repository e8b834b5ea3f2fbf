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
#include <span>
#include <string>
#include <vector>

#include "twirl/rational.hpp"

namespace twirl {

/// Arithmetic tables for Q(zeta_N), zeta_N = exp(2 pi i / N).
///
/// Instances are interned: `CyclotomicField::get(N)` always returns the same
/// object for a given N and the object lives for the whole program, so
/// elements can hold a plain pointer to it.
class CyclotomicField {
   public:
    static const CyclotomicField &get(int order);

    int order() const { return order_; }
    /// Euler phi(N): the dimension of the field over Q.
    int degree() const { return static_cast<int>(minimal_poly_.size()) - 1; }
    /// Coefficients of the N-th cyclotomic polynomial, constant term first. Monic.
    const std::vector<long> &minimal_poly() const { return minimal_poly_; }
    /// zeta^j written in the power basis {1, zeta, ..., zeta^(degree-1)}, j in [0, N).
    const std::vector<long> &power(int j) const;

   private:
    explicit CyclotomicField(int order);

    int order_;
    std::vector<long> minimal_poly_;
    std::vector<std::vector<long>> powers_;
};

/// Exact element of Q(zeta_N).
///
/// Stored as rational coefficients over the power basis, reduced modulo the
/// cyclotomic polynomial, so equal elements have equal representations. The
/// zero element has an empty coefficient vector.
class Cyclotomic {
   public:
    explicit Cyclotomic(int order);
    Cyclotomic(int order, const Rational &value);
    Cyclotomic(int order, long value) : Cyclotomic(order, Rational(value)) {}

    static Cyclotomic zero(int order) { return Cyclotomic(order); }
    static Cyclotomic one(int order) { return Cyclotomic(order, 1); }
    /// zeta_N^j for any integer j.
    static Cyclotomic root(int order, long j);
    /// (sum_s counts[s] zeta^s) * scale, with counts.size() == N.
    static Cyclotomic from_phase_counts(int order, std::span<const BigInt> counts, const Rational &scale);
    static Cyclotomic from_phase_counts(int order, std::span<const long> counts, const Rational &scale);

    int order() const { return field_->order(); }
    const CyclotomicField &field() const { return *field_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// True when the element lies in Q.
    bool is_rational() const { return coeffs_.size() <= 1; }
    /// Valid only when is_rational().
    Rational rational_value() const;
    /// Coefficient of zeta^j in the reduced power basis (zero past the stored length).
    Rational coeff(int j) const;

    Cyclotomic conj() const;
    /// (z + conj z) / 2.
    Cyclotomic real_part() const;
    /// Multiply by zeta^j.
    Cyclotomic rotated(long j) const;
    std::complex<double> to_complex() const;

    Cyclotomic &operator+=(const Cyclotomic &o);
    Cyclotomic &operator-=(const Cyclotomic &o);
    Cyclotomic &operator*=(const Cyclotomic &o);
    Cyclotomic &operator*=(const Rational &q);
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic &b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic &b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic &a, const Cyclotomic &b);
    friend Cyclotomic operator*(Cyclotomic a, const Rational &q) { return a *= q; }
    friend Cyclotomic operator*(const Rational &q, Cyclotomic a) { return a *= q; }
    friend bool operator==(const Cyclotomic &a, const Cyclotomic &b);
    friend bool operator!=(const Cyclotomic &a, const Cyclotomic &b) { return !(a == b); }

    /// Exact text: "1/3", "-2*w", "1/2 + 3/4*w^2", "0". Here w = exp(2 pi i / N).
    std::string str() const;

   private:
    void trim();
    void check_same_field(const Cyclotomic &o) const;

    const CyclotomicField *field_;
    std::vector<Rational> coeffs_;
};

}  // namespace twirl
