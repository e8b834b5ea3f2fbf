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

#include <gtest/gtest.h>

#include <random>

#include "twirl/cyclotomic.hpp"
#include "twirl/errors.hpp"

using namespace twirl;

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-4"), Rational(-4));
    EXPECT_EQ(parse_rational("0.999"), Rational(999, 1000));
    EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
    EXPECT_EQ(to_string(make_rational(2, 4)), "1/2");
    EXPECT_EQ(to_string(Rational(-3)), "-3");
    EXPECT_THROW(parse_rational("1/0"), ParameterError);
    EXPECT_THROW(parse_rational("abc"), ParameterError);
}

TEST(Cyclotomic, FieldDegrees) {
    EXPECT_EQ(CyclotomicField::get(1).degree(), 1);
    EXPECT_EQ(CyclotomicField::get(2).degree(), 1);
    EXPECT_EQ(CyclotomicField::get(3).degree(), 2);
    EXPECT_EQ(CyclotomicField::get(4).degree(), 2);
    EXPECT_EQ(CyclotomicField::get(12).degree(), 4);
    EXPECT_EQ(&CyclotomicField::get(12), &CyclotomicField::get(12));
}

TEST(Cyclotomic, RootsOfUnity) {
    for (int order : {2, 3, 4, 5, 6, 8, 10, 12}) {
        Cyclotomic sum = Cyclotomic::zero(order);
        for (int j = 0; j < order; ++j) {
            sum += Cyclotomic::root(order, j);
        }
        EXPECT_TRUE(sum.is_zero()) << order;
        EXPECT_EQ(Cyclotomic::root(order, order), Cyclotomic::one(order));
        EXPECT_EQ(Cyclotomic::root(order, 1) * Cyclotomic::root(order, -1), Cyclotomic::one(order));
        EXPECT_EQ(Cyclotomic::root(order, 1).conj(), Cyclotomic::root(order, order - 1));
    }
    // i^2 = -1
    EXPECT_EQ(Cyclotomic::root(4, 1) * Cyclotomic::root(4, 1), Cyclotomic(4, -1));
}

TEST(Cyclotomic, RingLawsAgainstComplex) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int order : {3, 4, 6, 10}) {
        for (int trial = 0; trial < 30; ++trial) {
            Cyclotomic a = Cyclotomic::zero(order);
            Cyclotomic b = Cyclotomic::zero(order);
            for (int j = 0; j < order; ++j) {
                a += Cyclotomic::root(order, j) * make_rational(coef(rng), 3);
                b += Cyclotomic::root(order, j) * make_rational(coef(rng), 2);
            }
            EXPECT_NEAR(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 0, 1e-9);
            EXPECT_NEAR(std::abs((a + b).to_complex() - a.to_complex() - b.to_complex()), 0, 1e-9);
            EXPECT_NEAR(std::abs(a.conj().to_complex() - std::conj(a.to_complex())), 0, 1e-9);
            EXPECT_TRUE((a * a.conj()).real_part() == a * a.conj());
            EXPECT_TRUE((a - a).is_zero());
        }
    }
}

TEST(Cyclotomic, PhaseCountsAndText) {
    std::vector<long> counts{1, 0, 1, 0};
    EXPECT_TRUE(Cyclotomic::from_phase_counts(4, counts, Rational(1)).is_zero());
    std::vector<long> three{2, 1, 1};
    EXPECT_EQ(Cyclotomic::from_phase_counts(3, three, Rational(1, 2)), Cyclotomic(3, Rational(1, 2)));
    EXPECT_EQ(Cyclotomic(4, Rational(1, 3)).str(), "1/3");
    EXPECT_EQ(Cyclotomic::zero(4).str(), "0");
    EXPECT_EQ((-Cyclotomic::root(4, 1)).str(), "-w");
    EXPECT_TRUE(Cyclotomic(6, 5).is_rational());
    EXPECT_EQ(Cyclotomic(6, 5).rational_value(), Rational(5));
}
