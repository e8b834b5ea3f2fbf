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

#include "twirl/design.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "twirl/errors.hpp"
#include "twirl/random.hpp"
#include "twirl/kernels/tuple_images.hpp"

namespace twirl {

namespace {

int mod(long a, long m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

BigInt int_pow(std::int64_t base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) {
        r *= static_cast<long>(base);
    }
    return r;
}

BigInt to_big(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<unsigned long>(u >> 64);
    r <<= 64;
    r += static_cast<unsigned long>(u & ~static_cast<unsigned long>(0));
    return neg ? BigInt(-r) : r;
}

Cyclotomic from_rational_counts(int order, const std::vector<Rational> &counts) {
    Cyclotomic acc = Cyclotomic::zero(order);
    for (int s = 0; s < order; ++s) {
        if (counts[s] != 0) {
            acc += Cyclotomic::root(order, s) * counts[s];
        }
    }
    return acc;
}

std::string case_label(const LabelAlgebra &algebra, const TensorKey &key) {
    std::uint32_t total = 0;
    for (std::uint32_t c : key) {
        if (c == 0) {
            return "has-identity";
        }
        total = algebra.mul_label(total, c);
    }
    return total == 0 ? "product-identity" : "product-nonidentity";
}

PauliTensor tensor_of_key(const SystemParams &params, const TensorKey &key) {
    PauliTensor t;
    for (std::uint32_t c : key) {
        t.components.push_back(PauliLabel::from_index(params, c));
    }
    return t;
}

}  // namespace

SparseOperator ensemble_twirl(const Ensemble &e, int k, const SparseOperator &x) {
    if (!(x.params() == e.params()) || x.k() != k) {
        throw ParameterError("ensemble_twirl: operator shape does not match (n, d, k)");
    }
    const SystemParams &params = e.params();
    const int order = params.phase_order();
    std::vector<PauliString> reps;
    for (std::uint32_t a = 0; a < params.label_count(); ++a) {
        reps.push_back(representative(params, PauliLabel::from_index(params, a)));
    }
    SparseOperator out(params, k);
    for (const auto &[key, coeff] : x.terms()) {
        std::map<TensorKey, std::vector<Rational>> images;
        for (const auto &entry : e.entries()) {
            TensorKey image(k);
            int phase = 0;
            for (int j = 0; j < k; ++j) {
                PauliString img = tableau_apply(entry.element, reps[key[j]]);
                image[j] = img.label.index(params);
                phase += relative_phase(params, img);
            }
            auto [it, inserted] = images.try_emplace(image, std::vector<Rational>(order));
            it->second[mod(phase, order)] += entry.weight;
        }
        for (const auto &[image, counts] : images) {
            out.add_term(image, coeff * from_rational_counts(order, counts));
        }
    }
    return out;
}

Cyclotomic probe_value(const PauliTensor &probe, const SparseOperator &a) {
    return a.coeff(probe.key(a.params())).rotated(-probe.s);
}

TensorKey basis_tensor(const SystemParams &params, int k, std::uint64_t b) {
    const std::uint64_t count = static_cast<std::uint64_t>(params.label_count());
    TensorKey key(k);
    for (int j = k - 1; j >= 0; --j) {
        key[j] = static_cast<std::uint32_t>(b % count);
        b /= count;
    }
    return key;
}

namespace {

// Shared read-only state of one verification run.
struct SweepContext {
    const SystemParams &params;
    int k;
    const EnsembleImages &images;
    const HaarProjector &projector;
    std::uint32_t radix;
    int order;
    bool dense_histogram;
    std::uint64_t key_space;
    Rational psi_scale;          // D^k / L^2
    std::vector<Rational> cross_scale;  // D^{c_pi} / L
    Rational coeff_scale;        // 1 / L
    size_t witness_cap;
};

struct CachedTwirl {
    std::vector<Cyclotomic> u;
    Cyclotomic norm2{2};
    std::vector<size_t> active;
};

struct WorkerResult {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::map<std::string, CaseTally> cases;
    std::vector<TwirlWitness> witnesses;
};

class SweepWorker {
   public:
    explicit SweepWorker(const SweepContext &ctx) : ctx_(ctx) {
        const size_t size = ctx.images.size();
        keys_.resize(size);
        phases_.resize(size);
        if (ctx.dense_histogram) {
            counts_.assign(ctx.key_space * ctx.order, 0);
            touched_flag_.assign(ctx.key_space, 0);
        }
        diff_.assign(ctx.order, 0);
    }

    void run(const std::uint64_t *indices, size_t count, WorkerResult &result) {
        for (size_t i = 0; i < count; ++i) {
            check_one(indices[i], result);
        }
    }

   private:
    const CachedTwirl &twirl_for(const TensorKey &x) {
        const auto &projector = ctx_.projector;
        const size_t perms = projector.perms().size();
        std::vector<int> signature(perms, -1);
        for (size_t s = 0; s < perms; ++s) {
            if (auto theta = projector.trace_phase(s, x.data())) {
                signature[s] = *theta;
            }
        }
        auto it = cache_.find(signature);
        if (it != cache_.end()) {
            return it->second;
        }
        std::vector<Cyclotomic> v(perms, Cyclotomic::zero(ctx_.order));
        for (size_t s = 0; s < perms; ++s) {
            if (signature[s] >= 0) {
                v[s] = Cyclotomic::root(ctx_.order, -signature[s]) *
                       Rational(int_pow(ctx_.params.dim(), projector.cycle_count(s)));
            }
        }
        CachedTwirl t;
        t.u = projector.solve(v);
        t.norm2 = projector.norm2(t.u);
        for (size_t s = 0; s < perms; ++s) {
            if (!t.u[s].is_zero()) {
                t.active.push_back(s);
            }
        }
        return cache_.emplace(std::move(signature), std::move(t)).first->second;
    }

    // Fills group_keys_ and group_counts_ (order entries per key) with the
    // weighted image histogram of X.
    void histogram(const TensorKey &x) {
        const auto &images = ctx_.images;
        const int k = ctx_.k;
        const size_t size = images.size();
        kernels::TupleImageArgs args;
        for (int j = 0; j < k; ++j) {
            args.label_rows[j] = images.label_row(x[j]);
            args.phase_rows[j] = images.phase_row(x[j]);
        }
        args.k = k;
        args.count = size;
        args.radix = ctx_.radix;
        args.phase_order = static_cast<std::uint32_t>(ctx_.order);
        args.keys = keys_.data();
        args.phases = phases_.data();
        kernels::tuple_images(args);

        group_keys_.clear();
        group_counts_.clear();
        const auto weights = images.int_weights();
        const int order = ctx_.order;
        if (ctx_.dense_histogram) {
            touched_.clear();
            for (size_t e = 0; e < size; ++e) {
                const std::uint32_t key = keys_[e];
                if (!touched_flag_[key]) {
                    touched_flag_[key] = 1;
                    touched_.push_back(key);
                }
                counts_[static_cast<size_t>(key) * order + phases_[e]] += weights[e];
            }
            for (std::uint32_t key : touched_) {
                touched_flag_[key] = 0;
                std::int64_t *c = &counts_[static_cast<size_t>(key) * order];
                group_keys_.push_back(key);
                group_counts_.insert(group_counts_.end(), c, c + order);
                std::fill(c, c + order, 0);
            }
            return;
        }
        sorted_.resize(size);
        for (size_t e = 0; e < size; ++e) {
            sorted_[e] = {(static_cast<std::uint64_t>(keys_[e]) << 16) | phases_[e], weights[e]};
        }
        std::sort(sorted_.begin(), sorted_.end());
        for (const auto &[packed, w] : sorted_) {
            const std::uint32_t key = static_cast<std::uint32_t>(packed >> 16);
            if (group_keys_.empty() || group_keys_.back() != key) {
                group_keys_.push_back(key);
                group_counts_.resize(group_counts_.size() + order, 0);
            }
            group_counts_[group_counts_.size() - order + (packed & 0xffff)] += w;
        }
    }

    TensorKey decode(std::uint32_t key) const {
        TensorKey t(ctx_.k);
        for (int j = ctx_.k - 1; j >= 0; --j) {
            t[j] = key % ctx_.radix;
            key /= ctx_.radix;
        }
        return t;
    }

    void check_one(std::uint64_t b, WorkerResult &result) {
        const int order = ctx_.order;
        const TensorKey x = basis_tensor(ctx_.params, ctx_.k, b);
        histogram(x);
        const CachedTwirl &twirl = twirl_for(x);

        std::fill(diff_.begin(), diff_.end(), 0);
        cross_.assign(twirl.active.size() * order, 0);
        const size_t groups = group_keys_.size();
        for (size_t g = 0; g < groups; ++g) {
            const std::int64_t *c = &group_counts_[g * order];
            for (int s = 0; s < order; ++s) {
                if (c[s] == 0) {
                    continue;
                }
                for (int t = 0; t < order; ++t) {
                    if (c[t] != 0) {
                        diff_[mod(s - t, order)] += static_cast<__int128>(c[s]) * c[t];
                    }
                }
            }
            if (twirl.active.empty()) {
                continue;
            }
            const TensorKey y = decode(group_keys_[g]);
            for (size_t a = 0; a < twirl.active.size(); ++a) {
                auto theta = ctx_.projector.trace_phase(twirl.active[a], y.data());
                if (!theta) {
                    continue;
                }
                for (int s = 0; s < order; ++s) {
                    cross_[a * order + mod(*theta - s, order)] += c[s];
                }
            }
        }

        std::vector<BigInt> big(order);
        for (int r = 0; r < order; ++r) {
            big[r] = to_big(diff_[r]);
        }
        Cyclotomic residual = Cyclotomic::from_phase_counts(order, big, ctx_.psi_scale) + twirl.norm2;
        Cyclotomic cross_sum = Cyclotomic::zero(order);
        for (size_t a = 0; a < twirl.active.size(); ++a) {
            const size_t pi = twirl.active[a];
            for (int r = 0; r < order; ++r) {
                big[r] = to_big(cross_[a * order + r]);
            }
            cross_sum += twirl.u[pi] * Cyclotomic::from_phase_counts(order, big, ctx_.cross_scale[pi]);
        }
        residual -= cross_sum + cross_sum.conj();

        const std::string label = case_label(ctx_.projector.algebra(), x);
        CaseTally &tally = result.cases[label];
        ++tally.checked;
        ++result.checked;
        if (residual.is_zero()) {
            return;
        }
        ++tally.mismatches;
        ++result.mismatches;
        if (result.witnesses.size() < ctx_.witness_cap) {
            result.witnesses.push_back(make_witness(x, twirl, residual));
        }
    }

    TwirlWitness make_witness(const TensorKey &x, const CachedTwirl &twirl, const Cyclotomic &residual) const {
        const int order = ctx_.order;
        SparseOperator psi(ctx_.params, ctx_.k);
        for (size_t g = 0; g < group_keys_.size(); ++g) {
            std::vector<BigInt> c(order);
            for (int s = 0; s < order; ++s) {
                c[s] = group_counts_[g * order + s];
            }
            psi.add_term(decode(group_keys_[g]), Cyclotomic::from_phase_counts(order, c, ctx_.coeff_scale));
        }
        SparseOperator haar = ctx_.projector.combine(twirl.u);
        // First key, in lexicographic order, where the two operators differ.
        TensorKey probe;
        auto a = psi.terms().begin();
        auto b = haar.terms().begin();
        while (a != psi.terms().end() || b != haar.terms().end()) {
            if (b == haar.terms().end() || (a != psi.terms().end() && a->first < b->first)) {
                probe = a->first;
                break;
            }
            if (a == psi.terms().end() || b->first < a->first) {
                probe = b->first;
                break;
            }
            if (a->second != b->second) {
                probe = a->first;
                break;
            }
            ++a;
            ++b;
        }
        TwirlWitness w;
        w.k = ctx_.k;
        w.input = tensor_of_key(ctx_.params, x);
        w.probe = tensor_of_key(ctx_.params, probe);
        w.psi = psi.coeff(probe);
        w.haar = haar.coeff(probe);
        w.verdict = "not-" + std::to_string(ctx_.k) + "-design";
        w.probe_kind = "first-differing-coefficient";
        w.details.emplace_back("residual", residual);
        return w;
    }

    const SweepContext &ctx_;
    std::vector<std::uint32_t> keys_;
    std::vector<std::uint16_t> phases_;
    std::vector<std::int64_t> counts_;
    std::vector<std::uint8_t> touched_flag_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::pair<std::uint64_t, std::int64_t>> sorted_;
    std::vector<std::uint32_t> group_keys_;
    std::vector<std::int64_t> group_counts_;
    std::vector<__int128> diff_;
    std::vector<__int128> cross_;
    std::map<std::vector<int>, CachedTwirl> cache_;
};

}  // namespace

DesignReport verify_k_design(const Ensemble &e, int k, const VerifyOptions &options) {
    const auto start = std::chrono::steady_clock::now();
    const SystemParams &params = e.params();
    if (k < 1) {
        throw ParameterError("k must be >= 1");
    }
    if (k > kernels::kMaxTupleRows) {
        throw ParameterError("k must be <= " + std::to_string(kernels::kMaxTupleRows));
    }
    const std::uint32_t radix = static_cast<std::uint32_t>(params.label_count());
    BigInt basis_size = int_pow(radix, k);
    if (basis_size >= BigInt(1UL << 32)) {
        throw CapExceeded("basis of d^{2nk} = " + basis_size.get_str() + " tensors does not fit 32-bit keys");
    }
    const std::uint64_t basis = basis_size.get_ui();
    std::vector<std::uint64_t> indices;
    if (options.mode == SweepMode::Exhaustive) {
        if (basis > kExhaustiveCap) {
            throw CapExceeded("exhaustive sweep over " + std::to_string(basis) + " basis tensors exceeds the cap of " +
                              std::to_string(kExhaustiveCap) + "; use random mode");
        }
        indices.resize(basis);
        for (std::uint64_t b = 0; b < basis; ++b) {
            indices[b] = b;
        }
    } else {
        if (options.samples == 0) {
            throw ParameterError("random mode needs samples >= 1");
        }
        std::mt19937_64 rng(options.seed);
        for (std::uint64_t i = 0; i < options.samples; ++i) {
            indices.push_back(uniform_below(rng, basis));
        }
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    }

    EnsembleImages images(e);
    HaarProjector projector(params, k);
    const Rational L(images.denominator());
    SweepContext ctx{params,
                     k,
                     images,
                     projector,
                     radix,
                     params.phase_order(),
                     basis * params.phase_order() <= (1u << 21),
                     basis,
                     Rational(int_pow(params.dim(), k)) / (L * L),
                     {},
                     1 / L,
                     options.witness_cap};
    for (size_t s = 0; s < projector.perms().size(); ++s) {
        ctx.cross_scale.push_back(Rational(int_pow(params.dim(), projector.cycle_count(s))) / L);
    }

    const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(indices.size())));
    std::vector<WorkerResult> results(threads);
    const size_t chunk = (indices.size() + threads - 1) / threads;
    auto work = [&](int w) {
        const size_t begin = std::min(indices.size(), w * chunk);
        const size_t end = std::min(indices.size(), begin + chunk);
        SweepWorker worker(ctx);
        worker.run(indices.data() + begin, end - begin, results[w]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    DesignReport report;
    report.params = params;
    report.k = k;
    report.mode = options.mode;
    report.basis_size = basis;
    report.kernel = kernels::isa_name(kernels::active_isa());
    for (auto &r : results) {
        report.checked += r.checked;
        report.mismatches += r.mismatches;
        for (const auto &[name, tally] : r.cases) {
            report.cases[name].checked += tally.checked;
            report.cases[name].mismatches += tally.mismatches;
        }
        for (auto &w : r.witnesses) {
            if (report.witnesses.size() < options.witness_cap) {
                report.witnesses.push_back(std::move(w));
            }
        }
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// ---------------------------------------------------------------------------
// Mixing.

BigInt two_mixing_orbit_size(const SystemParams &params, int l) {
    const BigInt d = params.d();
    const BigInt p2n = int_pow(params.d(), 2 * params.n());
    if (mod(l, params.d()) == 0) {
        return d * (p2n - 1) * (p2n - d * d);
    }
    return d * p2n * (p2n - 1);
}

namespace {

PauliString phased(const SystemParams &params, std::uint32_t label, int j) {
    PauliString p = representative(params, PauliLabel::from_index(params, label));
    p.s = mod(p.s + j * params.omega_step(), params.phase_order());
    return p;
}

}  // namespace

MixingReport check_pauli_mixing(const Ensemble &e) {
    const SystemParams &params = e.params();
    EnsembleImages images(e);
    const std::uint32_t count = images.label_count();
    const int d = params.d();
    const int step = params.omega_step();
    const BigInt targets = BigInt(d) * (count - 1);
    const Rational expected(1, targets);
    const Rational L(images.denominator());

    MixingReport report;
    report.kind = "mixing";
    MixingClass cls;
    cls.name = "all";
    cls.expected = expected;
    cls.orbit_size = targets;
    std::vector<std::int64_t> hist(static_cast<size_t>(count) * d);
    for (std::uint32_t p = 1; p < count; ++p) {
        ++cls.sources;
        std::fill(hist.begin(), hist.end(), 0);
        const std::uint16_t *lab = images.label_row(p);
        const std::uint16_t *ph = images.phase_row(p);
        for (size_t i = 0; i < images.size(); ++i) {
            hist[static_cast<size_t>(lab[i]) * d + ph[i] / step] += images.int_weight(i);
        }
        for (std::uint32_t q = 1; q < count; ++q) {
            for (int j = 0; j < d; ++j) {
                Rational observed = Rational(hist[static_cast<size_t>(q) * d + j]) / L;
                if (observed == expected) {
                    continue;
                }
                cls.pass = false;
                if (!report.first_deviation) {
                    report.first_deviation = MixingDeviation{
                        {PauliLabel::from_index(params, p)}, {phased(params, q, j)}, observed, expected};
                }
            }
        }
    }
    report.pass = cls.pass;
    report.classes.push_back(cls);
    return report;
}

namespace {

// Packed target pair (q1, j1, q2, j2), lexicographic in that order.
std::uint64_t pack_pair(std::uint32_t q1, int j1, std::uint32_t q2, int j2, int d) {
    return ((static_cast<std::uint64_t>(q1) * d + j1) << 32) | (static_cast<std::uint64_t>(q2) * d + j2);
}

}  // namespace

MixingReport check_pauli_2_mixing(const Ensemble &e) {
    const SystemParams &params = e.params();
    EnsembleImages images(e);
    const std::uint32_t count = images.label_count();
    const int d = params.d();
    const int step = params.omega_step();
    const Rational L(images.denominator());
    std::vector<PauliLabel> labels;
    for (std::uint32_t a = 0; a < count; ++a) {
        labels.push_back(PauliLabel::from_index(params, a));
    }

    MixingReport report;
    report.kind = "2-mixing";
    std::vector<MixingClass> classes(d);
    for (int l = 0; l < d; ++l) {
        classes[l].name = "F=" + std::to_string(l);
        classes[l].orbit_size = two_mixing_orbit_size(params, l);
        if (classes[l].orbit_size == 0) {
            classes[l].skipped = true;
            classes[l].note = "empty orbit class: no commuting non-proportional pairs";
        } else {
            classes[l].expected = Rational(1, classes[l].orbit_size);
        }
    }

    std::vector<std::pair<std::uint64_t, std::int64_t>> hist;
    for (std::uint32_t p1 = 1; p1 < count; ++p1) {
        for (std::uint32_t p2 = 1; p2 < count; ++p2) {
            if (p1 == p2 || proportional_labels(params, labels[p1], labels[p2])) {
                continue;
            }
            const int l = commutation(params, labels[p1], labels[p2]);
            MixingClass &cls = classes[l];
            ++cls.sources;
            hist.clear();
            const std::uint16_t *l1 = images.label_row(p1);
            const std::uint16_t *h1 = images.phase_row(p1);
            const std::uint16_t *l2 = images.label_row(p2);
            const std::uint16_t *h2 = images.phase_row(p2);
            for (size_t i = 0; i < images.size(); ++i) {
                hist.emplace_back(pack_pair(l1[i], h1[i] / step, l2[i], h2[i] / step, d), images.int_weight(i));
            }
            std::sort(hist.begin(), hist.end());
            // Merge repeats.
            size_t out = 0;
            for (size_t i = 0; i < hist.size(); ++i) {
                if (out > 0 && hist[out - 1].first == hist[i].first) {
                    hist[out - 1].second += hist[i].second;
                } else {
                    hist[out++] = hist[i];
                }
            }
            hist.resize(out);

            auto in_orbit = [&](std::uint64_t packed) {
                std::uint32_t q1 = static_cast<std::uint32_t>((packed >> 32) / d);
                std::uint32_t q2 = static_cast<std::uint32_t>((packed & 0xffffffffu) / d);
                return q1 != 0 && q2 != 0 && q1 != q2 && !proportional_labels(params, labels[q1], labels[q2]) &&
                       commutation(params, labels[q1], labels[q2]) == l;
            };
            bool ok = BigInt(static_cast<unsigned long>(hist.size())) == cls.orbit_size;
            for (const auto &[packed, w] : hist) {
                ok = ok && in_orbit(packed) && Rational(w) / L == cls.expected;
            }
            if (ok) {
                continue;
            }
            cls.pass = false;
            if (report.first_deviation) {
                continue;
            }
            // Lexicographically first target whose weight is off: scan the orbit
            // and the observed support together.
            auto observed_at = [&](std::uint64_t packed) {
                auto it = std::lower_bound(hist.begin(), hist.end(), std::make_pair(packed, std::int64_t{INT64_MIN}));
                return it != hist.end() && it->first == packed ? Rational(it->second) / L : Rational(0);
            };
            std::optional<std::uint64_t> first;
            for (std::uint32_t q1 = 1; q1 < count && !first; ++q1) {
                for (int j1 = 0; j1 < d && !first; ++j1) {
                    for (std::uint32_t q2 = 1; q2 < count && !first; ++q2) {
                        for (int j2 = 0; j2 < d && !first; ++j2) {
                            std::uint64_t packed = pack_pair(q1, j1, q2, j2, d);
                            Rational want = in_orbit(packed) ? cls.expected : Rational(0);
                            if (observed_at(packed) != want) {
                                first = packed;
                            }
                        }
                    }
                }
            }
            if (first) {
                std::uint64_t a = *first >> 32;
                std::uint64_t b = *first & 0xffffffffu;
                report.first_deviation = MixingDeviation{
                    {labels[p1], labels[p2]},
                    {phased(params, static_cast<std::uint32_t>(a / d), static_cast<int>(a % d)),
                     phased(params, static_cast<std::uint32_t>(b / d), static_cast<int>(b % d))},
                    observed_at(*first),
                    in_orbit(*first) ? cls.expected : Rational(0)};
            }
        }
    }
    report.pass = true;
    for (auto &cls : classes) {
        if (cls.skipped && cls.sources > 0) {
            cls.pass = false;
            cls.note = "orbit class is empty but source pairs exist";
        }
        report.pass = report.pass && cls.pass;
    }
    report.classes = std::move(classes);
    report.pauli_invariant = is_pauli_invariant(e);
    return report;
}

CensusReport clifford_census(const SystemParams &params) {
    CensusReport report;
    report.params = params;
    report.order_formula = clifford_group_order(params);
    Ensemble group = Ensemble::clifford_uniform(params);
    report.order_enumerated = static_cast<unsigned long>(group.size());
    EnsembleImages images(group);
    const std::uint32_t count = images.label_count();
    const int d = params.d();
    const int step = params.omega_step();
    std::vector<PauliLabel> labels;
    for (std::uint32_t a = 0; a < count; ++a) {
        labels.push_back(PauliLabel::from_index(params, a));
    }
    std::vector<std::optional<CensusClass>> classes(d);
    std::vector<std::uint64_t> seen;
    for (std::uint32_t p1 = 1; p1 < count; ++p1) {
        for (std::uint32_t p2 = 1; p2 < count; ++p2) {
            if (p1 == p2 || proportional_labels(params, labels[p1], labels[p2])) {
                continue;
            }
            const int l = commutation(params, labels[p1], labels[p2]);
            std::uint64_t stabilizer = 0;
            seen.clear();
            const std::uint16_t *l1 = images.label_row(p1);
            const std::uint16_t *h1 = images.phase_row(p1);
            const std::uint16_t *l2 = images.label_row(p2);
            const std::uint16_t *h2 = images.phase_row(p2);
            for (size_t i = 0; i < images.size(); ++i) {
                if (l1[i] == p1 && h1[i] == 0 && l2[i] == p2 && h2[i] == 0) {
                    ++stabilizer;
                }
                seen.push_back(pack_pair(l1[i], h1[i] / step, l2[i], h2[i] / step, d));
            }
            std::sort(seen.begin(), seen.end());
            const auto orbit = static_cast<unsigned long>(std::unique(seen.begin(), seen.end()) - seen.begin());
            if (!classes[l]) {
                CensusClass cls;
                cls.l = l;
                cls.stabilizer = static_cast<unsigned long>(stabilizer);
                cls.orbit_formula = two_mixing_orbit_size(params, l);
                cls.orbit_observed = orbit;
                classes[l] = cls;
            }
            CensusClass &cls = *classes[l];
            ++cls.pairs;
            if (cls.stabilizer != static_cast<unsigned long>(stabilizer) || cls.orbit_observed != orbit) {
                cls.consistent = false;
            }
        }
    }
    report.pass = report.order_formula == report.order_enumerated;
    for (auto &cls : classes) {
        if (!cls) {
            continue;
        }
        cls->identity_holds = cls->consistent && cls->stabilizer * cls->orbit_formula == report.order_formula &&
                              cls->orbit_observed == cls->orbit_formula;
        report.pass = report.pass && cls->identity_holds;
        report.classes.push_back(*cls);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Frame potential.

Rational frame_potential(const Ensemble &e, int k) {
    if (k < 1) {
        throw ParameterError("frame potential needs k >= 1");
    }
    const SystemParams &params = e.params();
    const double work = static_cast<double>(e.size()) * e.size() * params.label_count();
    if (work > 5e8) {
        throw CapExceeded("frame potential needs |E|^2 d^{2n} <= 5e8, got " + std::to_string(work));
    }
    std::vector<EnsembleEntry> inverses;
    for (const auto &entry : e.entries()) {
        inverses.push_back(EnsembleEntry{entry.weight, tableau_inverse(entry.element)});
    }
    EnsembleImages fwd(e);
    EnsembleImages inv(Ensemble(params, std::move(inverses)));
    const std::uint32_t count = fwd.label_count();
    const size_t size = fwd.size();
    const int order = params.phase_order();

    // Transposed tables: images of every label under one element.
    auto element_major = [&](const EnsembleImages &t, std::vector<std::uint16_t> &lab, std::vector<std::uint16_t> &ph) {
        lab.resize(static_cast<size_t>(count) * size);
        ph.resize(static_cast<size_t>(count) * size);
        for (std::uint32_t a = 0; a < count; ++a) {
            for (size_t i = 0; i < size; ++i) {
                lab[i * count + a] = t.label_row(a)[i];
                ph[i * count + a] = t.phase_row(a)[i];
            }
        }
    };
    std::vector<std::uint16_t> fl, fp, il, ip;
    element_major(fwd, fl, fp);
    element_major(inv, il, ip);

    // |tr(U^dagger V)|^2 = sum over labels P fixed by U^-1 V of the phase picked up.
    std::map<std::vector<int>, __int128> classes;
    std::vector<int> phases(order);
    for (size_t u = 0; u < size; ++u) {
        for (size_t v = 0; v < size; ++v) {
            std::fill(phases.begin(), phases.end(), 0);
            for (std::uint32_t a = 0; a < count; ++a) {
                const std::uint16_t mid = fl[v * count + a];
                if (il[u * count + mid] == a) {
                    ++phases[(fp[v * count + a] + ip[u * count + mid]) % order];
                }
            }
            classes[phases] += static_cast<__int128>(fwd.int_weight(u)) * fwd.int_weight(v);
        }
    }
    Cyclotomic total = Cyclotomic::zero(order);
    for (const auto &[vec, weight] : classes) {
        std::vector<long> counts(vec.begin(), vec.end());
        Cyclotomic tr2 = Cyclotomic::from_phase_counts(order, counts, Rational(1));
        Cyclotomic power = Cyclotomic::one(order);
        for (int i = 0; i < k; ++i) {
            power = power * tr2;
        }
        total += power * Rational(to_big(weight));
    }
    const Rational L(fwd.denominator());
    total = total * (1 / (L * L));
    if (!total.is_rational()) {
        throw ContractViolation("frame potential is not rational: " + total.str());
    }
    return total.rational_value();
}

BigInt haar_frame_potential(int k, std::int64_t dim) {
    auto g = gram_matrix(k, dim);
    RationalMatrix m(g.size(), std::vector<Rational>(g.size()));
    for (size_t i = 0; i < g.size(); ++i) {
        for (size_t j = 0; j < g.size(); ++j) {
            m[i][j] = Rational(g[i][j]);
        }
    }
    return static_cast<unsigned long>(exact_rank(std::move(m)));
}

// ---------------------------------------------------------------------------
// Witnesses.

namespace {

// u averaged over conjugation by S_k. Valid whenever X is invariant under
// permuting its factors, and then constant on conjugacy classes.
std::vector<Cyclotomic> class_average(const HaarCoefficients &c) {
    const auto &perms = c.perms;
    std::map<Permutation, size_t> index;
    for (size_t i = 0; i < perms.size(); ++i) {
        index.emplace(perms[i], i);
    }
    const int order = c.u.empty() ? 2 : c.u[0].order();
    std::vector<Cyclotomic> avg(perms.size(), Cyclotomic::zero(order));
    const Rational scale(1, static_cast<unsigned long>(perms.size()));
    for (size_t i = 0; i < perms.size(); ++i) {
        for (const auto &s : perms) {
            avg[i] += c.u[index.at(compose(compose(s, perms[i]), s.inverse()))];
        }
        avg[i] = avg[i] * scale;
    }
    return avg;
}

Cyclotomic alpha_of(const HaarCoefficients &c, const std::vector<Cyclotomic> &u, const std::string &cycle) {
    Permutation pi = Permutation::parse(cycle, c.perms.front().k());
    for (size_t i = 0; i < c.perms.size(); ++i) {
        if (c.perms[i] == pi) {
            return u[i];
        }
    }
    throw ContractViolation("permutation not found");
}

PauliTensor rep_tensor(const SystemParams &params, std::initializer_list<std::uint32_t> labels) {
    PauliTensor t;
    for (std::uint32_t a : labels) {
        t.components.push_back(PauliLabel::from_index(params, a));
    }
    return t;
}

// Lexicographically first ordered label pair (a, b) with F(a, b) = l.
std::pair<std::uint32_t, std::uint32_t> first_pair(const SystemParams &params, int l) {
    const auto count = static_cast<std::uint32_t>(params.label_count());
    for (std::uint32_t a = 1; a < count; ++a) {
        for (std::uint32_t b = 1; b < count; ++b) {
            if (commutation(params, PauliLabel::from_index(params, a), PauliLabel::from_index(params, b)) == l) {
                return {a, b};
            }
        }
    }
    throw ContractViolation("no label pair with the requested commutation");
}

}  // namespace

TwirlWitness witness_not_4_design(const Ensemble &e) {
    const SystemParams &params = e.params();
    if (params.d() != 2) {
        throw ParameterError("witness_not_4_design needs qubits (d = 2), got d=" + std::to_string(params.d()));
    }
    const int k = 4;
    const std::uint32_t p = 1;
    PauliTensor input = rep_tensor(params, {p, p, p, p});
    SparseOperator x = SparseOperator::from_tensor(params, input);
    SparseOperator psi = ensemble_twirl(e, k, x);
    HaarProjector projector(params, k);
    auto [haar, coeffs] = projector.twirl(x);
    std::vector<Cyclotomic> avg = class_average(coeffs);
    Cyclotomic alpha4 = alpha_of(coeffs, avg, "(1234)");
    Cyclotomic alpha22 = alpha_of(coeffs, avg, "(12)(34)");
    const BigInt dim = static_cast<long>(params.dim());
    Cyclotomic closed = alpha4 * make_rational(2, dim * dim * dim) + alpha22 * Rational(1, dim * dim);

    auto [r1, r2] = first_pair(params, 1);
    std::vector<std::pair<std::string, PauliTensor>> probes{{"r1 r1 r2 r2", rep_tensor(params, {r1, r1, r2, r2})},
                                                            {"r1 r2 r1 r2", rep_tensor(params, {r1, r2, r1, r2})}};
    for (std::uint32_t r0 = 1; r0 < params.label_count(); ++r0) {
        probes.emplace_back("r0 r0 r0 r0", rep_tensor(params, {r0, r0, r0, r0}));
    }
    TwirlWitness w;
    w.k = k;
    w.input = input;
    w.details = {{"alpha_4", alpha4}, {"alpha_2,2", alpha22}, {"closed_form_r1r1r2r2", closed}};
    for (const auto &[kind, probe] : probes) {
        Cyclotomic a = probe_value(probe, psi);
        Cyclotomic b = probe_value(probe, haar);
        w.probe = probe;
        w.probe_kind = kind;
        w.psi = a;
        w.haar = b;
        if (a != b) {
            w.verdict = "not-4-design";
            return w;
        }
    }
    w.probe = probes.front().second;
    w.probe_kind = probes.front().first;
    w.psi = probe_value(w.probe, psi);
    w.haar = probe_value(w.probe, haar);
    w.verdict = "inconclusive";
    return w;
}

TwirlWitness witness_qudit_not_3_design(const Ensemble &e) {
    const SystemParams &params = e.params();
    if (params.d() == 2 || !params.is_prime_d()) {
        throw ParameterError("witness_qudit_not_3_design needs prime d > 2, got d=" + std::to_string(params.d()));
    }
    const int k = 3;
    const int order = params.phase_order();
    auto rep = [&](std::uint32_t a) { return representative(params, PauliLabel::from_index(params, a)); };

    auto [p1, p2] = first_pair(params, 1);
    PauliTensor input = PauliTensor::from_strings(
        params, {rep(p1), rep(p2), pauli_dagger(params, pauli_mul(params, rep(p2), rep(p1)))});
    SparseOperator x = SparseOperator::from_tensor(params, input);
    SparseOperator psi = ensemble_twirl(e, k, x);
    HaarProjector projector(params, k);
    auto [haar, coeffs] = projector.twirl(x);
    Cyclotomic a123 = coeffs.alpha(Permutation::parse("(123)", k));
    Cyclotomic a321 = coeffs.alpha(Permutation::parse("(321)", k));
    const BigInt d2n = int_pow(params.d(), 2 * params.n());
    Cyclotomic omega2 = Cyclotomic::root(order, 2 * params.omega_step());
    Cyclotomic closed_a = (a123 + a321) * Rational(1, d2n);
    Cyclotomic closed_b = (a123 + omega2 * a321) * Rational(1, d2n);

    const std::uint32_t r1 = 1;
    PauliTensor probe_a = PauliTensor::from_strings(
        params, {rep(r1), rep(r1), pauli_dagger(params, pauli_pow(params, rep(r1), 2))});
    auto [s1, s2] = first_pair(params, 2);
    PauliTensor probe_b = PauliTensor::from_strings(
        params, {rep(s1), rep(s2), pauli_dagger(params, pauli_mul(params, rep(s2), rep(s1)))});

    TwirlWitness w;
    w.k = k;
    w.input = input;
    w.details = {{"alpha_(123)", a123},
                 {"alpha_(321)", a321},
                 {"closed_form_r1r1r1sq", closed_a},
                 {"closed_form_r1r2r2r1", closed_b}};
    for (const auto &[kind, probe] :
         std::vector<std::pair<std::string, PauliTensor>>{{"r1 r1 (r1^2)^dagger", probe_a},
                                                          {"r1 r2 (r2 r1)^dagger", probe_b}}) {
        w.probe = probe;
        w.probe_kind = kind;
        w.psi = probe_value(probe, psi);
        w.haar = probe_value(probe, haar);
        if (w.psi != w.haar) {
            w.verdict = "not-3-design";
            return w;
        }
    }
    w.verdict = "inconclusive";
    return w;
}

}  // namespace twirl
