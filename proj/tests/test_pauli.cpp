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

#include "oracles.hpp"
#include "twirl/errors.hpp"
#include "twirl/pauli.hpp"

using namespace twirl;

namespace {

std::vector<SystemParams> small_systems() {
    return {SystemParams(1, 2), SystemParams(2, 2), SystemParams(1, 3), SystemParams(2, 3), SystemParams(1, 5),
            SystemParams(1, 4)};
}

PauliString random_pauli(const SystemParams &params, std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::uint32_t> label(0, static_cast<std::uint32_t>(params.label_count() - 1));
    std::uniform_int_distribution<int> phase(0, params.phase_order() - 1);
    return PauliString{PauliLabel::from_index(params, label(rng)), phase(rng)};
}

}  // namespace

TEST(Pauli, ParamsValidation) {
    EXPECT_THROW(SystemParams(0, 2), ParameterError);
    EXPECT_THROW(SystemParams(1, 1), ParameterError);
    EXPECT_EQ(SystemParams(2, 2).phase_order(), 4);
    EXPECT_EQ(SystemParams(1, 3).phase_order(), 3);
    EXPECT_EQ(SystemParams(2, 3).label_count(), 81);
}

TEST(Pauli, IndexRoundTripIsLexicographic) {
    for (const auto &params : small_systems()) {
        PauliLabel prev = PauliLabel::from_index(params, 0);
        EXPECT_TRUE(prev.is_identity());
        for (std::uint32_t i = 1; i < params.label_count(); ++i) {
            PauliLabel l = PauliLabel::from_index(params, i);
            EXPECT_EQ(l.index(params), i);
            EXPECT_LT(std::tie(prev.x, prev.z), std::tie(l.x, l.z));
            prev = l;
        }
    }
}

TEST(Pauli, TextRoundTrip) {
    SystemParams params(2, 3);
    PauliString p = parse_pauli(params, "w^2 X12 Z01");
    EXPECT_EQ(p.s, 2);
    EXPECT_EQ(to_string(p), "w^2 X12 Z01");
    EXPECT_EQ(to_string(parse_pauli(SystemParams(2, 2), "X10 Z01")), "X10 Z01");
    EXPECT_THROW(parse_pauli(params, "X13 Z00"), ParameterError);
    EXPECT_THROW(parse_pauli(params, "X1 Z0"), ParameterError);
}

TEST(Pauli, QubitPhasesMatchMatrices) {
    // X Z = -i Y, and the representative of label (1, 1) is the Hermitian Y = i X Z.
    SystemParams params(1, 2);
    PauliString x = generator_x(params, 0);
    PauliString z = generator_z(params, 0);
    PauliString xz = pauli_mul(params, x, z);
    EXPECT_EQ(xz.s, 0);
    PauliString zx = pauli_mul(params, z, x);
    EXPECT_EQ(zx.s, 2);  // ZX = -XZ
    PauliString y = representative(params, xz.label);
    oracle::Matrix ydense(2, 2);
    ydense << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    EXPECT_LT(oracle::max_abs_diff(oracle::pauli_dense(params, y), ydense), 1e-12);
    EXPECT_EQ(relative_phase(params, xz), 3);  // XZ = -i Y = w^3 Y
}

TEST(Pauli, MultiplicationMatchesDense) {
    std::mt19937_64 rng(11);
    for (const auto &params : small_systems()) {
        for (int t = 0; t < 40; ++t) {
            PauliString p = random_pauli(params, rng);
            PauliString q = random_pauli(params, rng);
            oracle::Matrix dense = oracle::pauli_dense(params, p) * oracle::pauli_dense(params, q);
            EXPECT_LT(oracle::max_abs_diff(oracle::pauli_dense(params, pauli_mul(params, p, q)), dense), 1e-9);
            EXPECT_LT(oracle::max_abs_diff(oracle::pauli_dense(params, pauli_dagger(params, p)),
                                           oracle::pauli_dense(params, p).adjoint()),
                      1e-9);
        }
    }
}

TEST(Pauli, AssociativityAndInverse) {
    std::mt19937_64 rng(12);
    for (const auto &params : small_systems()) {
        for (int t = 0; t < 200; ++t) {
            PauliString a = random_pauli(params, rng);
            PauliString b = random_pauli(params, rng);
            PauliString c = random_pauli(params, rng);
            EXPECT_EQ(pauli_mul(params, pauli_mul(params, a, b), c), pauli_mul(params, a, pauli_mul(params, b, c)));
            PauliString id{PauliLabel::identity(params), 0};
            EXPECT_EQ(pauli_mul(params, a, pauli_dagger(params, a)), id);
        }
    }
}

TEST(Pauli, CommutationPhaseLaw) {
    // p q = omega^F(p, q) q p
    std::mt19937_64 rng(13);
    for (const auto &params : small_systems()) {
        for (int t = 0; t < 200; ++t) {
            PauliString p = random_pauli(params, rng);
            PauliString q = random_pauli(params, rng);
            PauliString pq = pauli_mul(params, p, q);
            PauliString qp = pauli_mul(params, q, p);
            qp.s = (qp.s + params.omega_step() * commutation(params, p, q)) % params.phase_order();
            EXPECT_EQ(pq, qp);
        }
    }
}

TEST(Pauli, CommutationIsBilinearAndAlternating) {
    std::mt19937_64 rng(14);
    for (const auto &params : small_systems()) {
        const int d = params.d();
        for (int t = 0; t < 200; ++t) {
            PauliLabel a = random_pauli(params, rng).label;
            PauliLabel b = random_pauli(params, rng).label;
            PauliLabel c = random_pauli(params, rng).label;
            PauliLabel ab = pauli_mul(params, {a, 0}, {b, 0}).label;
            EXPECT_EQ(commutation(params, ab, c), (commutation(params, a, c) + commutation(params, b, c)) % d);
            EXPECT_EQ(commutation(params, a, a), 0);
            EXPECT_EQ((commutation(params, a, b) + commutation(params, b, a)) % d, 0);
        }
    }
}

TEST(Pauli, RepresentativesHaveOrderD) {
    for (const auto &params : small_systems()) {
        for (std::uint32_t l = 0; l < params.label_count(); ++l) {
            PauliString r = representative(params, PauliLabel::from_index(params, l));
            PauliString power = pauli_pow(params, r, params.d());
            EXPECT_TRUE(power.label.is_identity());
            if (params.d() == 2) {
                EXPECT_EQ(power.s, 0);
                EXPECT_EQ(pauli_dagger(params, r), r);  // Hermitian
            } else if (params.d() % 2 == 1) {
                EXPECT_EQ(power.s, 0);
            }
        }
    }
}

TEST(Pauli, EnumerationFilters) {
    SystemParams params(2, 2);
    EXPECT_EQ(enumerate_paulis(params, PauliFilter::All).size(), 16u);
    EXPECT_EQ(enumerate_paulis(params, PauliFilter::NonIdentity).size(), 15u);
    EXPECT_EQ(enumerate_paulis(params, PauliFilter::HermitianReps).size(), 15u);
    EXPECT_THROW(enumerate_paulis(SystemParams(1, 3), PauliFilter::HermitianReps), ParameterError);
    EXPECT_THROW(enumerate_paulis(SystemParams(9, 2), PauliFilter::All), CapExceeded);
}

TEST(Pauli, LabelAlgebraMatchesStrings) {
    for (const auto &params : small_systems()) {
        LabelAlgebra alg(params);
        for (std::uint32_t a = 0; a < alg.count(); ++a) {
            PauliString ra = representative(params, PauliLabel::from_index(params, a));
            PauliString dag = pauli_dagger(params, ra);
            EXPECT_EQ(alg.dagger_label(a), dag.label.index(params));
            EXPECT_EQ(alg.dagger_phase(a), relative_phase(params, dag));
            for (std::uint32_t b = 0; b < alg.count(); b += 3) {
                PauliString rb = representative(params, PauliLabel::from_index(params, b));
                PauliString prod = pauli_mul(params, ra, rb);
                EXPECT_EQ(alg.mul_label(a, b), prod.label.index(params));
                EXPECT_EQ(alg.mul_phase(a, b), relative_phase(params, prod));
            }
        }
    }
}

TEST(Pauli, Proportionality) {
    SystemParams params(1, 3);
    PauliLabel x = generator_x(params, 0).label;
    PauliLabel x2 = pauli_pow(params, generator_x(params, 0), 2).label;
    EXPECT_TRUE(proportional_labels(params, x, x2));
    EXPECT_FALSE(proportional_labels(params, x, generator_z(params, 0).label));
}
