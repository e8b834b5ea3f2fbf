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

using namespace twirl;

namespace {

const std::vector<CliffordTableau> &group(const SystemParams &params) {
    static std::map<std::pair<int, int>, std::vector<CliffordTableau>> cache;
    auto &slot = cache[{params.n(), params.d()}];
    if (slot.empty()) {
        slot = enumerate_clifford(params);
    }
    return slot;
}

PauliString rep(const SystemParams &params, std::uint32_t label) {
    return representative(params, PauliLabel::from_index(params, label));
}

SparseOperator basis_op(const SystemParams &params, const TensorKey &key) {
    SparseOperator op(params, static_cast<int>(key.size()));
    op.add_term(key, Cyclotomic::one(params.phase_order()));
    return op;
}

SparseOperator rep_tensor(const SystemParams &params, const std::vector<PauliString> &parts) {
    return SparseOperator::from_tensor(params, PauliTensor::from_strings(params, parts));
}

std::uint64_t basis_count(const SystemParams &params, int k) {
    std::uint64_t n = 1;
    for (int i = 0; i < k; ++i) {
        n *= params.label_count();
    }
    return n;
}

/// Random elements of the group with random positive weights.
Ensemble random_subensemble(const SystemParams &params, size_t size, std::mt19937_64 &rng) {
    const auto &all = group(params);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> raw(1, 5);
    std::vector<int> w;
    int total = 0;
    for (size_t i = 0; i < size; ++i) {
        w.push_back(raw(rng));
        total += w.back();
    }
    std::vector<EnsembleEntry> entries;
    for (size_t i = 0; i < size; ++i) {
        entries.push_back({make_rational(w[i], total), all[pick(rng)]});
    }
    return Ensemble(params, entries);
}

/// {U P : P Pauli} for a few fixed U: right Pauli-invariant without being the whole group.
Ensemble pauli_closed(const SystemParams &params, std::vector<CliffordTableau> seeds) {
    std::vector<CliffordTableau> elements;
    for (const auto &u : seeds) {
        for (std::uint32_t l = 0; l < params.label_count(); ++l) {
            elements.push_back(tableau_compose(u, pauli_tableau(params, PauliLabel::from_index(params, l))));
        }
    }
    return Ensemble::uniform(params, elements);
}

std::vector<std::pair<std::string, Ensemble>> zoo(const SystemParams &params) {
    std::mt19937_64 rng(params.d() * 100 + params.n());
    std::vector<std::pair<std::string, Ensemble>> out;
    out.emplace_back("uniform", Ensemble::uniform(params, group(params)));
    out.emplace_back("pauli", Ensemble::pauli_uniform(params));
    out.emplace_back("identity", Ensemble::singleton(CliffordTableau::identity(params)));
    out.emplace_back("random-singleton", Ensemble::singleton(sample_clifford(params, rng)));
    out.emplace_back("random-weighted", random_subensemble(params, 7, rng));
    out.emplace_back("pauli-closed", pauli_closed(params, {sample_clifford(params, rng), sample_clifford(params, rng)}));
    return out;
}

/// Dense oracle: sum_e alpha_e U^{(x)k} X U^{dagger (x)k} with U built from first principles.
oracle::Matrix dense_twirl(const Ensemble &e, int k, const oracle::Matrix &x) {
    oracle::Matrix out = oracle::Matrix::Zero(x.rows(), x.cols());
    for (const auto &entry : e.entries()) {
        oracle::Matrix u = oracle::kron_power(oracle::clifford_dense(entry.element), k);
        out += entry.weight.get_d() * (u * x * u.adjoint());
    }
    return out;
}

}  // namespace

TEST(EnsembleTwirl, IdentityEnsembleIsIdentityMap) {
    SystemParams params(1, 3);
    Ensemble e = Ensemble::singleton(CliffordTableau::identity(params));
    SparseOperator x = op_add(basis_op(params, {1, 5}), op_scale(basis_op(params, {7, 0}), Cyclotomic::root(3, 1)));
    EXPECT_EQ(ensemble_twirl(e, 2, x), x);
}

TEST(EnsembleTwirl, SingleQubitPauliAveragesToZero) {
    SystemParams params(1, 2);
    Ensemble e = Ensemble::uniform(params, group(params));
    EXPECT_TRUE(ensemble_twirl(e, 1, rep_tensor(params, {generator_x(params, 0)})).is_zero());
    EXPECT_EQ(ensemble_twirl(e, 1, SparseOperator::identity(params, 1)), SparseOperator::identity(params, 1));
}

TEST(EnsembleTwirl, AnticommutingCaseMatchesPermutationCombination) {
    // X (x) Z (x) XZ twirls to (1/3)(W_(321) - W_(123)). The third factor is the
    // literal product XZ = -iY, so using the Hermitian Y scales the result by i.
    SystemParams params(1, 2);
    Ensemble e = Ensemble::uniform(params, group(params));
    PauliString x = generator_x(params, 0), z = generator_z(params, 0);
    PauliString xz = pauli_mul(params, x, z);
    SparseOperator in = rep_tensor(params, {x, z, xz});
    SparseOperator want = op_scale(op_add(w_pauli_decomposition(Permutation::parse("(321)"), params),
                                          op_scale(w_pauli_decomposition(Permutation::parse("(123)"), params), Rational(-1))),
                                   make_rational(1, 3));
    SparseOperator got = ensemble_twirl(e, 3, in);
    EXPECT_EQ(got, want);
    EXPECT_EQ(got, haar_twirl(in).first);
    EXPECT_LT(oracle::max_abs_diff(to_dense(got), dense_twirl(e, 3, to_dense(in))), 1e-9);
}

TEST(EnsembleTwirl, MatchesDenseConjugation) {
    std::mt19937_64 rng(31);
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{
             {SystemParams(1, 2), 2}, {SystemParams(1, 2), 3}, {SystemParams(1, 3), 2}, {SystemParams(2, 2), 1}}) {
        for (const auto &[name, e] : zoo(params)) {
            std::uniform_int_distribution<std::uint64_t> pick(0, basis_count(params, k) - 1);
            for (int t = 0; t < 6; ++t) {
                SparseOperator x = basis_op(params, basis_tensor(params, k, pick(rng)));
                oracle::Matrix want = dense_twirl(e, k, to_dense(x));
                EXPECT_LT(oracle::max_abs_diff(to_dense(ensemble_twirl(e, k, x)), want), 1e-9) << name;
            }
        }
    }
}

TEST(EnsembleTwirl, UnitalTracePreservingAndAdjointCompatible) {
    std::mt19937_64 rng(32);
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{{SystemParams(1, 2), 3}, {SystemParams(1, 3), 2}}) {
        for (const auto &[name, e] : zoo(params)) {
            EXPECT_EQ(ensemble_twirl(e, k, SparseOperator::identity(params, k)), SparseOperator::identity(params, k));
            std::uniform_int_distribution<std::uint64_t> pick(0, basis_count(params, k) - 1);
            for (int t = 0; t < 10; ++t) {
                SparseOperator x = op_add(basis_op(params, basis_tensor(params, k, pick(rng))),
                                          op_scale(basis_op(params, basis_tensor(params, k, pick(rng))),
                                                   Cyclotomic::root(params.phase_order(), 1)));
                SparseOperator y = ensemble_twirl(e, k, x);
                TensorKey id(k, 0);
                EXPECT_EQ(y.coeff(id), x.coeff(id)) << name;
                // Psi(X^dagger) = Psi(X)^dagger, compared densely.
                SparseOperator xd = pauli_expand_dense(
                    [&] {
                        ExactMatrix m = to_dense_exact(x);
                        ExactMatrix t(m.size(), m.ring_order());
                        for (const auto &[rc, v] : m.entries()) {
                            t.add(rc.second, rc.first, v.conj());
                        }
                        return t;
                    }(),
                    params, k);
                EXPECT_LT(oracle::max_abs_diff(to_dense(ensemble_twirl(e, k, xd)), to_dense(y).adjoint()), 1e-9);
            }
        }
    }
    EXPECT_THROW(ensemble_twirl(Ensemble::pauli_uniform(SystemParams(1, 2)), 2, SparseOperator::identity(SystemParams(1, 2), 3)),
                 ParameterError);
}

TEST(VerifyDesign, KnownDesignsAndNonDesigns) {
    SystemParams q(1, 2);
    Ensemble c1 = Ensemble::uniform(q, group(q));
    DesignReport r3 = verify_k_design(c1, 3);
    EXPECT_TRUE(r3.pass());
    EXPECT_EQ(r3.basis_size, 64u);
    EXPECT_EQ(r3.checked, 64u);
    EXPECT_TRUE(r3.witnesses.empty());
    DesignReport r4 = verify_k_design(c1, 4);
    EXPECT_FALSE(r4.pass());
    EXPECT_FALSE(r4.witnesses.empty());
    EXPECT_LE(r4.witnesses.size(), 4u);
    SystemParams t(1, 3);
    EXPECT_TRUE(verify_k_design(Ensemble::uniform(t, group(t)), 2).pass());
    EXPECT_FALSE(verify_k_design(Ensemble::uniform(t, group(t)), 3).pass());
}

TEST(VerifyDesign, AgreesWithReferenceTwirlOnEveryBasisTensor) {
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{{SystemParams(1, 2), 1},
                                                                      {SystemParams(1, 2), 2},
                                                                      {SystemParams(1, 2), 3},
                                                                      {SystemParams(1, 2), 4},
                                                                      {SystemParams(1, 3), 2},
                                                                      {SystemParams(2, 2), 2}}) {
        HaarProjector h(params, k);
        for (const auto &[name, e] : zoo(params)) {
            if (params.n() == 2 && name == "uniform") {
                continue;  // covered by the acceptance run
            }
            VerifyOptions opts;
            opts.witness_cap = 1000000;
            DesignReport report = verify_k_design(e, k, opts);
            std::uint64_t mismatches = 0;
            for (std::uint64_t b = 0; b < basis_count(params, k); ++b) {
                SparseOperator x = basis_op(params, basis_tensor(params, k, b));
                SparseOperator psi = ensemble_twirl(e, k, x);
                SparseOperator haar = h.twirl(x).first;
                if (psi != haar) {
                    ASSERT_LT(mismatches, report.witnesses.size()) << name;
                    const TwirlWitness &w = report.witnesses[mismatches];
                    EXPECT_EQ(SparseOperator::from_tensor(params, w.input), x);
                    TensorKey probe = w.probe.key(params);
                    EXPECT_EQ(w.psi, psi.coeff(probe));
                    EXPECT_EQ(w.haar, haar.coeff(probe));
                    EXPECT_NE(w.psi, w.haar);
                    EXPECT_EQ(probe_value(w.probe, psi), w.psi);
                    ++mismatches;
                }
            }
            EXPECT_EQ(report.mismatches, mismatches) << name << " k=" << k;
            EXPECT_EQ(report.checked, basis_count(params, k));
            std::uint64_t tallied = 0;
            for (const auto &[label, tally] : report.cases) {
                tallied += tally.checked;
            }
            EXPECT_EQ(tallied, report.checked);
        }
    }
}

TEST(VerifyDesign, RandomModeAndCaps) {
    SystemParams q(1, 2);
    Ensemble c1 = Ensemble::uniform(q, group(q));
    VerifyOptions opts;
    opts.mode = SweepMode::Random;
    opts.samples = 40;
    opts.seed = 9;
    DesignReport a = verify_k_design(c1, 4, opts);
    DesignReport b = verify_k_design(c1, 4, opts);
    EXPECT_EQ(a.checked, b.checked);
    EXPECT_EQ(a.mismatches, b.mismatches);
    EXPECT_LE(a.checked, 40u);
    EXPECT_TRUE(verify_k_design(c1, 3, opts).pass());
    opts.samples = 0;
    EXPECT_THROW(verify_k_design(c1, 3, opts), ParameterError);
    EXPECT_THROW(verify_k_design(Ensemble::pauli_uniform(SystemParams(2, 2)), 5), CapExceeded);
    EXPECT_THROW(verify_k_design(c1, 0), ParameterError);
}

TEST(VerifyDesign, ThreadCountDoesNotChangeReport) {
    SystemParams q(1, 2);
    Ensemble c1 = Ensemble::uniform(q, group(q));
    VerifyOptions one, four;
    four.threads = 4;
    DesignReport a = verify_k_design(c1, 4, one);
    DesignReport b = verify_k_design(c1, 4, four);
    EXPECT_EQ(a.mismatches, b.mismatches);
    ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
    for (size_t i = 0; i < a.witnesses.size(); ++i) {
        EXPECT_EQ(a.witnesses[i].input.key(q), b.witnesses[i].input.key(q));
        EXPECT_EQ(a.witnesses[i].psi, b.witnesses[i].psi);
    }
}

TEST(DesignProperties, ProjectiveAbsorption) {
    for (auto [params, k] : std::vector<std::pair<SystemParams, int>>{
             {SystemParams(1, 2), 2}, {SystemParams(1, 2), 3}, {SystemParams(1, 2), 4}, {SystemParams(1, 3), 2}, {SystemParams(1, 3), 3}}) {
        HaarProjector h(params, k);
        for (const auto &[name, e] : zoo(params)) {
            for (std::uint64_t b = 0; b < basis_count(params, k); ++b) {
                SparseOperator x = basis_op(params, basis_tensor(params, k, b));
                ASSERT_EQ(h.twirl(ensemble_twirl(e, k, x)).first, h.twirl(x).first) << name << " b=" << b;
            }
        }
    }
}

TEST(DesignProperties, PauliInvarianceKillsNonclosingTriples) {
    for (auto params : {SystemParams(1, 2), SystemParams(1, 3)}) {
        for (const auto &[name, e] : zoo(params)) {
            if (!is_pauli_invariant(e)) {
                continue;
            }
            LabelAlgebra alg(params);
            for (std::uint64_t b = 0; b < basis_count(params, 3); ++b) {
                TensorKey key = basis_tensor(params, 3, b);
                if (alg.mul_label(alg.mul_label(key[0], key[1]), key[2]) == 0) {
                    continue;
                }
                ASSERT_TRUE(ensemble_twirl(e, 3, basis_op(params, key)).is_zero()) << name << " b=" << b;
            }
        }
    }
}

TEST(DesignProperties, ImplicationChains) {
    int two_mixing_seen = 0, mixing_seen = 0;
    for (auto params : {SystemParams(1, 2), SystemParams(1, 3), SystemParams(2, 2)}) {
        for (const auto &[name, e] : zoo(params)) {
            MixingReport mix = check_pauli_mixing(e);
            MixingReport mix2 = check_pauli_2_mixing(e);
            if (mix2.pass) {
                ++two_mixing_seen;
                EXPECT_TRUE(mix.pass) << name;
            }
            if (mix.pass) {
                ++mixing_seen;
                EXPECT_TRUE(verify_k_design(e, 2).pass()) << name;
            }
            if (params.d() == 2 && mix2.pass && is_pauli_invariant(e)) {
                EXPECT_TRUE(verify_k_design(e, 3).pass()) << name;
            }
        }
    }
    EXPECT_GE(two_mixing_seen, 3);
    EXPECT_GE(mixing_seen, 3);
}

TEST(DesignProperties, CommutingCaseClosedFormAtTwoQubits) {
    SystemParams params(2, 2);
    Ensemble c2 = Ensemble::uniform(params, group(params));
    LabelAlgebra alg(params);
    auto w = [&](const char *text) { return w_pauli_decomposition(Permutation::parse(text, 3), params); };
    const long n = params.n();
    SparseOperator body = op_scale(op_add(w("(123)"), w("(321)")), Rational(1L << (2 * n - 1)));
    body = op_add(body, op_scale(op_add(op_add(w("(12)"), w("(23)")), w("(13)")), Rational(-(1L << n))));
    body = op_add(body, op_scale(SparseOperator::identity(params, 3), Rational(2)));
    const BigInt h0 = two_mixing_orbit_size(params, 0);
    ASSERT_EQ(h0, 360);
    SparseOperator want = op_scale(body, make_rational(4, h0));
    int checked = 0;
    for (std::uint32_t a = 1; a < params.label_count() && checked < 4; ++a) {
        for (std::uint32_t b = a + 1; b < params.label_count() && checked < 4; ++b) {
            if (alg.commutation(a, b) != 0) {
                continue;
            }
            PauliString p1 = rep(params, a), p2 = rep(params, b);
            SparseOperator x = rep_tensor(params, {p1, p2, pauli_mul(params, p1, p2)});
            EXPECT_EQ(ensemble_twirl(c2, 3, x), want) << a << "," << b;
            ++checked;
        }
    }
    EXPECT_EQ(checked, 4);
}

TEST(Mixing, WeightsAndDeviations) {
    SystemParams q(1, 2);
    MixingReport m = check_pauli_mixing(Ensemble::uniform(q, group(q)));
    EXPECT_TRUE(m.pass);
    ASSERT_EQ(m.classes.size(), 1u);
    EXPECT_EQ(m.classes[0].expected, make_rational(1, 6));
    MixingReport id = check_pauli_mixing(Ensemble::singleton(CliffordTableau::identity(q)));
    EXPECT_FALSE(id.pass);
    ASSERT_TRUE(id.first_deviation.has_value());
    EXPECT_EQ(id.first_deviation->observed, 1);
    EXPECT_EQ(id.first_deviation->expected, make_rational(1, 6));
    EXPECT_EQ(id.first_deviation->q[0].label, id.first_deviation->p[0]);

    MixingReport two = check_pauli_2_mixing(Ensemble::uniform(q, group(q)));
    EXPECT_TRUE(two.pass);
    ASSERT_EQ(two.classes.size(), 2u);
    EXPECT_TRUE(two.classes[0].skipped);
    EXPECT_EQ(two.classes[1].expected, make_rational(1, 24));
    EXPECT_FALSE(check_pauli_2_mixing(Ensemble::pauli_uniform(q)).pass);
}

TEST(Mixing, OrbitSizesMatchBruteForce) {
    for (auto params : {SystemParams(1, 2), SystemParams(2, 2), SystemParams(1, 3), SystemParams(1, 5), SystemParams(2, 3)}) {
        LabelAlgebra alg(params);
        std::vector<BigInt> counts(params.d());
        for (std::uint32_t a = 1; a < params.label_count(); ++a) {
            for (std::uint32_t b = 1; b < params.label_count(); ++b) {
                if (proportional_labels(params, PauliLabel::from_index(params, a), PauliLabel::from_index(params, b))) {
                    continue;
                }
                // Every label has exactly d phase choices of order d (only +-rep on qubits).
                counts[alg.commutation(a, b)] += 1;
            }
        }
        for (int l = 0; l < params.d(); ++l) {
            EXPECT_EQ(two_mixing_orbit_size(params, l), counts[l] * params.d() * params.d())
                << params.n() << "," << params.d() << " l=" << l;
        }
    }
}

TEST(FramePotential, MatchesDenseTraces) {
    std::mt19937_64 rng(41);
    for (auto params : {SystemParams(1, 2), SystemParams(1, 3)}) {
        std::vector<Ensemble> ensembles{random_subensemble(params, 5, rng), Ensemble::pauli_uniform(params),
                                        Ensemble::uniform(params, group(params))};
        for (const auto &e : ensembles) {
            std::vector<oracle::Matrix> dense;
            for (const auto &entry : e.entries()) {
                dense.push_back(oracle::clifford_dense(entry.element));
            }
            for (int k = 1; k <= 3; ++k) {
                double want = 0;
                for (size_t i = 0; i < dense.size(); ++i) {
                    for (size_t j = 0; j < dense.size(); ++j) {
                        double t = std::abs((dense[i].adjoint() * dense[j]).trace());
                        want += e.entries()[i].weight.get_d() * e.entries()[j].weight.get_d() * std::pow(t, 2 * k);
                    }
                }
                Rational got = frame_potential(e, k);
                EXPECT_NEAR(got.get_d(), want, 1e-9 * std::max(1.0, want));
                EXPECT_GE(got, haar_frame_potential(k, params.dim()));
            }
        }
    }
}

TEST(FramePotential, Examples) {
    SystemParams q(1, 2);
    Ensemble c1 = Ensemble::uniform(q, group(q));
    EXPECT_EQ(frame_potential(c1, 1), 1);
    EXPECT_EQ(frame_potential(c1, 2), 2);
    EXPECT_EQ(frame_potential(c1, 3), haar_frame_potential(3, 2));
    EXPECT_GT(frame_potential(c1, 4), haar_frame_potential(4, 2));
    SystemParams t(1, 3);
    Ensemble c3 = Ensemble::uniform(t, group(t));
    EXPECT_EQ(frame_potential(c3, 2), haar_frame_potential(2, 3));
    EXPECT_GT(frame_potential(c3, 3), haar_frame_potential(3, 3));
    EXPECT_EQ(frame_potential(Ensemble::singleton(CliffordTableau::identity(q)), 2), 16);
}

TEST(Witness, NotFourDesign) {
    SystemParams q(1, 2);
    Ensemble c1 = Ensemble::uniform(q, group(q));
    TwirlWitness w = witness_not_4_design(c1);
    EXPECT_EQ(w.verdict, "not-4-design");
    EXPECT_EQ(w.k, 4);
    EXPECT_TRUE(w.psi.is_zero());
    EXPECT_FALSE(w.haar.is_zero());
    SparseOperator x = SparseOperator::from_tensor(q, w.input);
    EXPECT_EQ(probe_value(w.probe, ensemble_twirl(c1, 4, x)), w.psi);
    EXPECT_EQ(probe_value(w.probe, haar_twirl(x).first), w.haar);
    std::map<std::string, Cyclotomic> details(w.details.begin(), w.details.end());
    EXPECT_EQ(details.at("closed_form_r1r1r2r2"), w.haar);
    EXPECT_EQ(w.probe_kind, "r1 r1 r2 r2");
    // r0^{(x)4} sees a positive probability weight.
    PauliTensor r0 = PauliTensor::from_strings(q, {rep(q, 1), rep(q, 1), rep(q, 1), rep(q, 1)});
    EXPECT_TRUE(probe_value(r0, ensemble_twirl(c1, 4, x)).is_rational());
    EXPECT_GT(probe_value(r0, ensemble_twirl(c1, 4, x)).rational_value(), 0);
    EXPECT_THROW(witness_not_4_design(Ensemble::pauli_uniform(SystemParams(1, 3))), ParameterError);
}

TEST(Witness, QuditNotThreeDesign) {
    SystemParams t(1, 3);
    Ensemble c3 = Ensemble::uniform(t, group(t));
    TwirlWitness w = witness_qudit_not_3_design(c3);
    EXPECT_EQ(w.verdict, "not-3-design");
    EXPECT_TRUE(w.psi.is_zero());
    EXPECT_FALSE(w.haar.is_zero());
    SparseOperator x = SparseOperator::from_tensor(t, w.input);
    EXPECT_EQ(probe_value(w.probe, haar_twirl(x).first), w.haar);
    std::map<std::string, Cyclotomic> details(w.details.begin(), w.details.end());
    const Cyclotomic a123 = details.at("alpha_(123)"), a321 = details.at("alpha_(321)");
    EXPECT_EQ(details.at("closed_form_r1r1r1sq"), (a123 + a321) * make_rational(1, 9));
    EXPECT_EQ(details.at("closed_form_r1r2r2r1"), (a123 + Cyclotomic::root(3, 2) * a321) * make_rational(1, 9));
    // Both probes see zero on the ensemble side.
    PauliString r1 = rep(t, 1);
    PauliTensor probe_a = PauliTensor::from_strings(t, {r1, r1, pauli_dagger(t, pauli_mul(t, r1, r1))});
    EXPECT_TRUE(probe_value(probe_a, ensemble_twirl(c3, 3, x)).is_zero());
    // <r1 (x) r1 (x) (r1^2)^dagger, W_(123)> = 1/9 as a Pauli coefficient times D^k / D^k.
    SparseOperator w123 = w_pauli_decomposition(Permutation::parse("(123)"), t);
    EXPECT_EQ(hs_inner(SparseOperator::from_tensor(t, probe_a), w123), Cyclotomic(3, make_rational(27, 9)));
    EXPECT_EQ(probe_value(probe_a, w123), Cyclotomic(3, make_rational(1, 9)));
    EXPECT_THROW(witness_qudit_not_3_design(Ensemble::pauli_uniform(SystemParams(1, 2))), ParameterError);
    EXPECT_THROW(witness_qudit_not_3_design(Ensemble::pauli_uniform(SystemParams(1, 4))), ParameterError);
}

TEST(Census, SmallGroups) {
    for (auto params : {SystemParams(1, 2), SystemParams(1, 3)}) {
        CensusReport r = clifford_census(params);
        EXPECT_TRUE(r.pass);
        EXPECT_EQ(r.order_formula, r.order_enumerated);
        for (const auto &c : r.classes) {
            EXPECT_TRUE(c.consistent);
            EXPECT_EQ(c.orbit_formula, c.orbit_observed);
        }
    }
    EXPECT_EQ(clifford_census(SystemParams(1, 3)).order_enumerated, 216);
}
