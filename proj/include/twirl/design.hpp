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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twirl/clifford.hpp"
#include "twirl/operator.hpp"
#include "twirl/perm_twirl.hpp"

namespace twirl {

/// sum_e alpha_e U_e^{(x)k} X U_e^{dagger (x)k}, applied term by term with tableau_apply.
SparseOperator ensemble_twirl(const Ensemble &e, int k, const SparseOperator &x);

/// Value of a probe tensor Y against A, normalized as a Pauli coefficient:
/// <Y, A> / D^k.
Cyclotomic probe_value(const PauliTensor &probe, const SparseOperator &a);

enum class SweepMode { Exhaustive, Random };

struct VerifyOptions {
    SweepMode mode = SweepMode::Exhaustive;
    /// Random mode: number of basis indices drawn (duplicates collapse).
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    size_t witness_cap = 4;
    int threads = 1;
};

/// Largest exhaustive sweep accepted, in basis tensors.
inline constexpr std::uint64_t kExhaustiveCap = 1u << 17;

struct TwirlWitness {
    int k = 0;
    PauliTensor input;
    PauliTensor probe;
    /// probe_value(probe, Psi(input)) and probe_value(probe, T_k(input)).
    Cyclotomic psi{2};
    Cyclotomic haar{2};
    /// "not-<k>-design" when psi != haar, "inconclusive" otherwise.
    std::string verdict;
    /// Which probe family produced the witness.
    std::string probe_kind;
    /// Named exact quantities supporting the witness (alpha values, closed forms).
    std::vector<std::pair<std::string, Cyclotomic>> details;
};

struct CaseTally {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
};

struct DesignReport {
    SystemParams params{1, 2};
    int k = 0;
    SweepMode mode = SweepMode::Exhaustive;
    std::uint64_t basis_size = 0;
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    /// Keyed by "has-identity", "product-identity", "product-nonidentity".
    std::map<std::string, CaseTally> cases;
    std::vector<TwirlWitness> witnesses;
    std::string kernel;
    double elapsed_ms = 0;

    bool pass() const { return mismatches == 0; }
};

/// Compares Psi_{E,k}(X) with T_k(X) exactly for every basis tensor X (or a
/// seeded random subset). Every X is checked through the exact residual
/// ||Psi(X) - T_k(X)||^2; witnesses carry the first differing coefficient.
DesignReport verify_k_design(const Ensemble &e, int k, const VerifyOptions &options = {});

/// Component label tuple of basis index b, component 0 most significant.
TensorKey basis_tensor(const SystemParams &params, int k, std::uint64_t b);

struct MixingClass {
    /// "all" for mixing; "F=<l>" for 2-mixing.
    std::string name;
    Rational expected;
    /// Number of target points (|P-bar| or |H_l|).
    BigInt orbit_size;
    std::uint64_t sources = 0;
    bool skipped = false;
    bool pass = true;
    std::string note;
};

struct MixingDeviation {
    std::vector<PauliLabel> p;
    std::vector<PauliString> q;
    Rational observed;
    Rational expected;
};

struct MixingReport {
    /// "mixing" or "2-mixing".
    std::string kind;
    std::vector<MixingClass> classes;
    bool pass = true;
    std::optional<MixingDeviation> first_deviation;
    /// Right Pauli-invariance, checked separately from the mixing condition.
    std::optional<bool> pauli_invariant;
};

MixingReport check_pauli_mixing(const Ensemble &e);
MixingReport check_pauli_2_mixing(const Ensemble &e);

/// |H_l|: ordered pairs of order-d Paulis with nonidentity, non-proportional
/// labels and commutation l.
BigInt two_mixing_orbit_size(const SystemParams &params, int l);

struct CensusClass {
    int l = 0;
    std::uint64_t pairs = 0;
    /// |C_{p -> p}|, identical for every pair in the class when consistent.
    BigInt stabilizer;
    BigInt orbit_formula;
    BigInt orbit_observed;
    bool consistent = true;
    bool identity_holds = false;
};

struct CensusReport {
    SystemParams params{1, 2};
    BigInt order_formula;
    BigInt order_enumerated;
    std::vector<CensusClass> classes;
    bool pass = false;
};

/// Enumerates C_n^d and checks |C_{p->p}| * |H_{F(p1,p2)}| = |C_n^d| for every
/// ordered pair of non-proportional nonidentity labels.
CensusReport clifford_census(const SystemParams &params);

/// sum over entry pairs of alpha beta |tr(U^dagger V)|^{2k}, from tableaux via
/// |tr W|^2 = sum over labels P with W P W^dagger = w^phi P of w^phi.
Rational frame_potential(const Ensemble &e, int k);
/// Integral of |tr U|^{2k} over the Haar measure: the rank of the Gram matrix.
BigInt haar_frame_potential(int k, std::int64_t dim);

/// Qubit ensembles: X = p^{(x)4}, probes r1 r1 r2 r2, r1 r2 r1 r2, then r0^{(x)4}.
TwirlWitness witness_not_4_design(const Ensemble &e);
/// Prime d > 2: X = p1 (x) p2 (x) (p2 p1)^dagger with F(p1, p2) = 1.
TwirlWitness witness_qudit_not_3_design(const Ensemble &e);

}  // namespace twirl
