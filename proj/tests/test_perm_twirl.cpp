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
#include "twirl/design.hpp"
#include "twirl/errors.hpp"
#include "twirl/perm_twirl.hpp"

using namespace twirl;

namespace {

SparseOperator basis_operator(const SystemParams &params, const TensorKey &key) {
    SparseOperator op(params, static_cast<int>(key.size()));
    op.add_term(key, Cyclotomic::one(params.phase_order()));
    return op;
}

std::uint64_t basis_count(const SystemParams &params, int k) {
    std::uint64_t n = 1;
    for (int i = 0; i < k; ++i) {
        n *= params.label_count();
    }
    return n;
}

}  // namespace

TEST(Permutation, ParseAndPrint) {
    Permutation p = Permutation::parse("(123)");
    EXPECT_EQ(p.images(), (std::vector<int>{1, 2, 0}));
    EXPECT_EQ(p.str(), "(123)");
    EXPECT_EQ(Permutation::parse("(321)").str(), "(132)");
    EXPECT_EQ(Permutation::parse("(12)(34)").cycle_type(), (std::vector<int>{2, 2}));
    EXPECT_EQ(Permutation::parse("e", 3), Permutation::identity(3));
    EXPECT_EQ(Permutation::parse("(12)", 4).k(), 4);
    EXPECT_TRUE(Permutation::parse("(12)", 3).has_fixed_point());
    EXPECT_FALSE(Permutation::parse("(1234)").has_fixed_point());
    EXPECT_THROW(Permutation::parse("(11)"), ParameterError);
    EXPECT_THROW(Permutation::parse("(12"), ParameterError);
    EXPECT_THROW(Permutation::parse("(13)", 2), ParameterError);
    EXPECT_THROW(Permutation(std::vector<int>{0, 0}), ParameterError);
}

TEST(Permutation, EnumerationOrderAndGroupLaws) {
    auto s4 = all_permutations(4);
    EXPECT_EQ(s4.size(), 24u);
    EXPECT_EQ(s4.front(), Permutation::identity(4));
    EXPECT_TRUE(std::is_sorted(s4.begin(), s4.end()));
    for (const auto &a : s4) {
        EXPECT_EQ(compose(a, a.inverse()), Permutation::identity(4));
    }
}

TEST(Gram, Examples) {
    auto g2 = gram_matrix(2, 5);
    EXPECT_EQ(g2[0][0], 25);
    EXPECT_EQ(g2[0][1], 5);
    EXPECT_EQ(g2[1][1], 25);
    auto g3 = gram_matrix(3, 2);
    for (size_t i = 0; i < g3.size(); ++i) {
        EXPECT_EQ(g3[i][i], 8);
        for (size_t j = 0; j < g3.size(); ++j) {
            EXPECT_EQ(g3[i][j], g3[j][i]);
        }
    }
    EXPECT_EQ(haar_frame_potential(3, 2), 5);
    EXPECT_EQ(haar_frame_potential(2, 4), 2);
    EXPECT_EQ(haar_frame_potential(4, 2), 14);
    EXPECT_EQ(haar_frame_potential(4, 4), 24);
    EXPECT_THROW(gram_matrix(7, 2), ParameterError);
}

TEST(Gram, MatchesDenseTraces) {
    for (int k : {2, 3}) {
        auto perms = all_permutations(k);
        auto g = gram_matrix(k, 3);
        for (size_t i = 0; i < perms.size(); ++i) {
            for (size_t j = 0; j < perms.size(); ++j) {
                auto a = oracle::permutation_dense(perms[i], 3);
                auto b = oracle::permutation_dense(perms[j], 3);
                EXPECT_NEAR(std::real((a.adjoint() * b).trace()), g[i][j].get_d(), 1e-9);
            }
        }
    }
}

TEST(WDecomposition, ClosedFormMatchesDenseExpansion) {
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{{SystemParams(1, 2), 2},
                                                                      {SystemParams(1, 2), 3},
                                                                      {SystemParams(1, 2), 4},
                                                                      {SystemParams(2, 2), 3},
                                                                      {SystemParams(2, 2), 4},
                                                                      {SystemParams(1, 3), 2},
                                                                      {SystemParams(1, 3), 3},
                                                                      {SystemParams(1, 5), 3}}) {
        for (const auto &pi : all_permutations(k)) {
            EXPECT_EQ(w_pauli_decomposition(pi, params), w_pauli_decomposition_dense(pi, params))
                << pi.str() << " n=" << params.n() << " d=" << params.d();
        }
    }
}

TEST(WDecomposition, MatchesLiteralPauliSums) {
    for (auto params : {SystemParams(1, 2), SystemParams(2, 2), SystemParams(1, 3), SystemParams(1, 4), SystemParams(1, 5)}) {
        const auto dim = params.dim();
        const Rational inv_d(1, dim), inv_d2(1, dim * dim);
        auto dag = [&](const PauliString &p) { return pauli_dagger(params, p); };
        auto mul = [&](const PauliString &p, const PauliString &q) { return pauli_mul(params, p, q); };
        const PauliString id = representative(params, PauliLabel::identity(params));
        auto w = [&](const char *text) { return w_pauli_decomposition(Permutation::parse(text, 3), params); };
        EXPECT_EQ(w("(12)"), oracle::literal_sum(params, 3, 1, inv_d, [&](const auto &p) {
                      return std::vector<PauliString>{p[0], dag(p[0]), id};
                  }));
        EXPECT_EQ(w("(13)"), oracle::literal_sum(params, 3, 1, inv_d, [&](const auto &p) {
                      return std::vector<PauliString>{p[0], id, dag(p[0])};
                  }));
        EXPECT_EQ(w("(23)"), oracle::literal_sum(params, 3, 1, inv_d, [&](const auto &p) {
                      return std::vector<PauliString>{id, p[0], dag(p[0])};
                  }));
        EXPECT_EQ(w("(123)"), oracle::literal_sum(params, 3, 2, inv_d2, [&](const auto &p) {
                      return std::vector<PauliString>{p[0], p[1], mul(dag(p[1]), dag(p[0]))};
                  }));
        EXPECT_EQ(w("(321)"), oracle::literal_sum(params, 3, 2, inv_d2, [&](const auto &p) {
                      return std::vector<PauliString>{p[0], p[1], mul(dag(p[0]), dag(p[1]))};
                  }));
    }
    for (auto params : {SystemParams(1, 2), SystemParams(2, 2)}) {
        const auto dim = params.dim();
        auto mul = [&](const PauliString &p, const PauliString &q) { return pauli_mul(params, p, q); };
        EXPECT_EQ(w_pauli_decomposition(Permutation::parse("(1234)"), params),
                  oracle::literal_sum(params, 4, 3, Rational(1, dim * dim * dim), [&](const auto &p) {
                      return std::vector<PauliString>{p[0], p[1], p[2], mul(mul(p[2], p[1]), p[0])};
                  }));
        EXPECT_EQ(w_pauli_decomposition(Permutation::parse("(12)(34)"), params),
                  oracle::literal_sum(params, 4, 2, Rational(1, dim * dim), [&](const auto &p) {
                      return std::vector<PauliString>{p[0], p[0], p[1], p[1]};
                  }));
    }
}

TEST(WDecomposition, Examples) {
    SystemParams q(1, 2);
    EXPECT_EQ(w_pauli_decomposition(Permutation::identity(3), q), SparseOperator::identity(q, 3));
    EXPECT_EQ(w_pauli_decomposition(Permutation::parse("(12)"), q).size(), 4u);
    SystemParams t(1, 3);
    SparseOperator w123 = w_pauli_decomposition(Permutation::parse("(123)"), t);
    EXPECT_EQ(w123.size(), 81u);
    for (const auto &[key, c] : w123.terms()) {
        EXPECT_EQ(c * c.conj(), Cyclotomic(3, Rational(1, 81)));
    }
    // Larger k goes through the dense route.
    EXPECT_EQ(w_pauli_decomposition(Permutation::parse("(12345)"), SystemParams(1, 2)).size(), 256u);
    EXPECT_THROW(w_pauli_decomposition(Permutation::parse("(123456)"), SystemParams(1, 3)), CapExceeded);
}

TEST(HaarTwirl, Examples) {
    SystemParams q(1, 2);
    SparseOperator swap = w_pauli_decomposition(Permutation::parse("(12)"), q);
    EXPECT_EQ(haar_twirl(swap).first, swap);
    // X (x) X -> (1/3)(2 W_(12) - I)
    SparseOperator xx = basis_operator(q, {2, 2});
    SparseOperator expect = op_scale(op_add(op_scale(swap, Rational(2)), op_scale(SparseOperator::identity(q, 2), Rational(-1))),
                                     Rational(1, 3));
    EXPECT_EQ(haar_twirl(xx).first, expect);
    EXPECT_TRUE(haar_twirl(basis_operator(q, {2, 1})).first.is_zero());
    EXPECT_THROW(haar_twirl(SparseOperator::identity(q, 5)), ParameterError);
}

TEST(HaarTwirl, SpanMembership) {
    SystemParams q(1, 2);
    SparseOperator w = op_add(op_scale(w_pauli_decomposition(Permutation::parse("(123)"), q), Rational(3)),
                              op_scale(SparseOperator::identity(q, 3), Rational(-1)));
    EXPECT_TRUE(is_in_permutation_span(w).in_span);
    SpanDecision xxx = is_in_permutation_span(basis_operator(q, {2, 2, 2}));
    EXPECT_FALSE(xxx.in_span);
    EXPECT_FALSE(xxx.residual.is_zero());
    SpanDecision zero = is_in_permutation_span(SparseOperator(q, 3));
    EXPECT_TRUE(zero.in_span);
    for (const auto &u : zero.coefficients.u) {
        EXPECT_TRUE(u.is_zero());
    }
}

TEST(HaarTwirl, FixesEveryPermutationOperator) {
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{
             {SystemParams(1, 2), 3}, {SystemParams(1, 2), 4}, {SystemParams(1, 3), 3}, {SystemParams(2, 2), 3}}) {
        HaarProjector h(params, k);
        for (size_t i = 0; i < h.perms().size(); ++i) {
            EXPECT_EQ(h.twirl(h.w(i)).first, h.w(i));
        }
    }
}

TEST(HaarTwirl, ProjectorLawsOnBasisSweeps) {
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{
             {SystemParams(1, 2), 2}, {SystemParams(1, 2), 3}, {SystemParams(1, 2), 4},
             {SystemParams(1, 3), 2}, {SystemParams(1, 3), 3}, {SystemParams(2, 2), 2}}) {
        HaarProjector h(params, k);
        const std::uint64_t count = basis_count(params, k);
        std::vector<SparseOperator> images;
        for (std::uint64_t b = 0; b < count; ++b) {
            SparseOperator t = h.twirl(basis_operator(params, basis_tensor(params, k, b))).first;
            ASSERT_EQ(h.twirl(t).first, t);
            images.push_back(std::move(t));
        }
        // <Y_a, T(Y_b)> = <T(Y_a), Y_b> for every basis pair.
        for (std::uint64_t a = 0; a < count; ++a) {
            TensorKey ka = basis_tensor(params, k, a);
            for (const auto &[kb, c] : images[a].terms()) {
                std::uint64_t b = 0;
                for (std::uint32_t v : kb) {
                    b = b * params.label_count() + v;
                }
                ASSERT_EQ(images[b].coeff(ka), c.conj());
            }
        }
    }
}

TEST(HaarTwirl, NonidentityTensorsOnlySeeFixedPointFreePermutations) {
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{
             {SystemParams(1, 2), 3}, {SystemParams(1, 2), 4}, {SystemParams(1, 3), 3}}) {
        HaarProjector h(params, k);
        for (std::uint64_t b = 0; b < basis_count(params, k); ++b) {
            TensorKey key = basis_tensor(params, k, b);
            if (std::count(key.begin(), key.end(), 0u) > 0) {
                continue;
            }
            for (size_t i = 0; i < h.perms().size(); ++i) {
                if (h.perms()[i].has_fixed_point()) {
                    EXPECT_FALSE(h.trace_phase(i, key.data()).has_value());
                }
            }
        }
    }
}

TEST(HaarTwirl, MonteCarloAgreement) {
    // Average of U^{(x)k} X U^{dagger (x)k} over Haar samples, entrywise within
    // five standard errors of the exact twirl.
    SystemParams q(1, 2);
    std::mt19937_64 rng(2024);
    const int samples = 100000;
    for (auto key : std::vector<TensorKey>{{2, 2}, {2, 1, 3}, {1, 1, 1}}) {
        const int k = static_cast<int>(key.size());
        SparseOperator x = basis_operator(q, key);
        oracle::Matrix exact = to_dense(haar_twirl(x).first);
        oracle::Matrix dense_x = to_dense(x);
        const int size = static_cast<int>(exact.rows());
        Eigen::ArrayXXd sum_re = Eigen::ArrayXXd::Zero(size, size), sum_im = sum_re, sq_re = sum_re, sq_im = sum_re;
        for (int s = 0; s < samples; ++s) {
            oracle::Matrix u = oracle::kron_power(oracle::haar_unitary(2, rng), k);
            oracle::Matrix y = u * dense_x * u.adjoint();
            sum_re += y.real().array();
            sum_im += y.imag().array();
            sq_re += y.real().array().square();
            sq_im += y.imag().array().square();
        }
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                for (int part = 0; part < 2; ++part) {
                    const auto &sum = part ? sum_im : sum_re;
                    const auto &sq = part ? sq_im : sq_re;
                    double mean = sum(r, c) / samples;
                    double var = std::max(0.0, sq(r, c) / samples - mean * mean);
                    double se = std::sqrt(var / samples);
                    double want = part ? exact(r, c).imag() : exact(r, c).real();
                    EXPECT_LE(std::abs(mean - want), 5 * se + 1e-9) << r << "," << c;
                }
            }
        }
    }
}
