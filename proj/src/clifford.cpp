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

#include "twirl/clifford.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "twirl/errors.hpp"
#include "twirl/random.hpp"

namespace twirl {

namespace {

int mod(long a, long m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

PauliString slot_generator(const SystemParams &params, int t) {
    return t % 2 == 0 ? generator_x(params, t / 2) : generator_z(params, t / 2);
}

void require_prime(const SystemParams &params, const char *what) {
    if (!params.is_prime_d()) {
        throw ParameterError(std::string(what) + " needs prime d, got d=" + std::to_string(params.d()));
    }
}

void require_valid(const CliffordTableau &c) {
    if (c.known_valid()) {
        return;
    }
    ValidityReport r = tableau_validate(c);
    if (!r.ok) {
        throw ContractViolation("invalid Clifford tableau: " + r.message);
    }
}

}  // namespace

// Grants the enumeration and sampling code access to the unvalidated constructor
// for tableaux that are valid by construction.
class CliffordBuilder {
   public:
    static CliffordTableau make(const SystemParams &params, std::vector<PauliString> xs, std::vector<PauliString> zs) {
        return CliffordTableau(params, std::move(xs), std::move(zs), true);
    }
};

CliffordTableau::CliffordTableau(const SystemParams &params, std::vector<PauliString> x_images,
                                 std::vector<PauliString> z_images, bool known_valid)
    : params_(params), x_images_(std::move(x_images)), z_images_(std::move(z_images)), known_valid_(known_valid) {}

CliffordTableau CliffordTableau::identity(const SystemParams &params) {
    std::vector<PauliString> xs;
    std::vector<PauliString> zs;
    for (int j = 0; j < params.n(); ++j) {
        xs.push_back(generator_x(params, j));
        zs.push_back(generator_z(params, j));
    }
    return CliffordTableau(params, std::move(xs), std::move(zs), true);
}

CliffordTableau CliffordTableau::from_images(const SystemParams &params, std::vector<PauliString> x_images,
                                             std::vector<PauliString> z_images) {
    CliffordTableau c(params, std::move(x_images), std::move(z_images), false);
    ValidityReport r = tableau_validate(c);
    if (!r.ok) {
        throw ContractViolation("invalid Clifford tableau: " + r.message);
    }
    c.known_valid_ = true;
    return c;
}

CliffordTableau CliffordTableau::unchecked(const SystemParams &params, std::vector<PauliString> x_images,
                                           std::vector<PauliString> z_images) {
    return CliffordTableau(params, std::move(x_images), std::move(z_images), false);
}

std::strong_ordering operator<=>(const CliffordTableau &a, const CliffordTableau &b) {
    if (auto c = a.params_.n() <=> b.params_.n(); c != 0) {
        return c;
    }
    if (auto c = a.params_.d() <=> b.params_.d(); c != 0) {
        return c;
    }
    if (auto c = a.x_images_ <=> b.x_images_; c != 0) {
        return c;
    }
    return a.z_images_ <=> b.z_images_;
}

ValidityReport tableau_validate(const CliffordTableau &c) {
    const SystemParams &params = c.params();
    ValidityReport report;
    if (static_cast<int>(c.x_images().size()) != params.n() || static_cast<int>(c.z_images().size()) != params.n()) {
        report.ok = false;
        report.message = "tableau needs exactly n X-images and n Z-images";
        return report;
    }
    const int slots = 2 * params.n();
    for (int t = 0; t < slots; ++t) {
        const PauliString &img = c.slot_image(t);
        try {
            check_shape(params, img);
        } catch (const ParameterError &e) {
            report.ok = false;
            report.message = "slot " + std::to_string(t) + ": " + e.what();
            report.slots = std::make_pair(t, t);
            return report;
        }
        if (img.label.is_identity()) {
            report.ok = false;
            report.message = "slot " + std::to_string(t) + " maps to the identity";
            report.slots = std::make_pair(t, t);
            return report;
        }
        if (relative_phase(params, img) % params.omega_step() != 0) {
            report.ok = false;
            report.message = "slot " + std::to_string(t) + " image " + to_string(img) + " has order not dividing d";
            report.slots = std::make_pair(t, t);
            return report;
        }
    }
    for (int t = 0; t < slots; ++t) {
        for (int u = t + 1; u < slots; ++u) {
            int want = commutation(params, slot_generator(params, t), slot_generator(params, u));
            int got = commutation(params, c.slot_image(t), c.slot_image(u));
            if (want != got) {
                report.ok = false;
                report.message = "slots " + std::to_string(t) + "," + std::to_string(u) + ": images " +
                                 to_string(c.slot_image(t)) + " and " + to_string(c.slot_image(u)) +
                                 " have commutation " + std::to_string(got) + ", generators have " +
                                 std::to_string(want);
                report.slots = std::make_pair(t, u);
                return report;
            }
        }
    }
    return report;
}

PauliString tableau_apply(const CliffordTableau &c, const PauliString &p) {
    const SystemParams &params = c.params();
    check_shape(params, p);
    require_valid(c);
    PauliString acc{PauliLabel::identity(params), p.s};
    for (int j = 0; j < params.n(); ++j) {
        for (int e = 0; e < p.label.x[j]; ++e) {
            acc = pauli_mul(params, acc, c.x_images()[j]);
        }
        for (int e = 0; e < p.label.z[j]; ++e) {
            acc = pauli_mul(params, acc, c.z_images()[j]);
        }
    }
    return acc;
}

CliffordTableau tableau_compose(const CliffordTableau &c1, const CliffordTableau &c2) {
    if (!(c1.params() == c2.params())) {
        throw ParameterError("tableau_compose: parameter mismatch");
    }
    require_valid(c1);
    require_valid(c2);
    std::vector<PauliString> xs;
    std::vector<PauliString> zs;
    for (int j = 0; j < c1.params().n(); ++j) {
        xs.push_back(tableau_apply(c1, c2.x_images()[j]));
        zs.push_back(tableau_apply(c1, c2.z_images()[j]));
    }
    return CliffordTableau(c1.params(), std::move(xs), std::move(zs), true);
}

CliffordTableau tableau_inverse(const CliffordTableau &c) {
    require_valid(c);
    const SystemParams &params = c.params();
    auto preimage = [&](const PauliString &g) {
        // F(X_i, v) = -z_v[i] and F(Z_i, v) = x_v[i]; F is preserved by c.
        PauliString v{PauliLabel::identity(params), 0};
        for (int i = 0; i < params.n(); ++i) {
            v.label.x[i] = static_cast<std::uint8_t>(commutation(params, c.z_images()[i], g));
            v.label.z[i] = static_cast<std::uint8_t>(mod(-commutation(params, c.x_images()[i], g), params.d()));
        }
        PauliString image = tableau_apply(c, v);
        if (image.label != g.label) {
            throw ContractViolation("tableau_inverse: tableau is not symplectic");
        }
        v.s = mod(g.s - image.s, params.phase_order());
        return v;
    };
    std::vector<PauliString> xs;
    std::vector<PauliString> zs;
    for (int j = 0; j < params.n(); ++j) {
        xs.push_back(preimage(generator_x(params, j)));
        zs.push_back(preimage(generator_z(params, j)));
    }
    return CliffordTableau(params, std::move(xs), std::move(zs), true);
}

CliffordTableau pauli_tableau(const SystemParams &params, const PauliLabel &label) {
    check_shape(params, label);
    std::vector<PauliString> xs;
    std::vector<PauliString> zs;
    for (int j = 0; j < params.n(); ++j) {
        PauliString gx = generator_x(params, j);
        PauliString gz = generator_z(params, j);
        gx.s = mod(params.omega_step() * commutation(params, label, gx.label), params.phase_order());
        gz.s = mod(params.omega_step() * commutation(params, label, gz.label), params.phase_order());
        xs.push_back(gx);
        zs.push_back(gz);
    }
    return CliffordTableau(params, std::move(xs), std::move(zs), true);
}

BigInt clifford_group_order(const SystemParams &params) {
    require_prime(params, "clifford_group_order");
    BigInt d = params.d();
    BigInt order = 1;
    const int n = params.n();
    for (int i = 0; i < n * n + 2 * n; ++i) {
        order *= d;
    }
    BigInt d2j = 1;
    for (int j = 1; j <= n; ++j) {
        d2j *= d * d;
        order *= d2j - 1;
    }
    return order;
}

namespace {

// Candidate generator images for slot `t` given the images already chosen,
// in (label index, phase) lexicographic order.
class SlotCandidates {
   public:
    explicit SlotCandidates(const SystemParams &params)
        : params_(params), count_(static_cast<std::uint32_t>(params.label_count())) {
        labels_.reserve(count_);
        for (std::uint32_t a = 0; a < count_; ++a) {
            labels_.push_back(PauliLabel::from_index(params, a));
        }
        for (int t = 0; t < 2 * params.n(); ++t) {
            generators_.push_back(slot_generator(params, t).label);
        }
    }

    std::vector<std::uint32_t> labels_for(int t, std::span<const std::uint32_t> chosen) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t a = 1; a < count_; ++a) {
            bool ok = true;
            for (int u = 0; u < t && ok; ++u) {
                ok = commutation(params_, labels_[chosen[u]], labels_[a]) ==
                     commutation(params_, generators_[u], generators_[t]);
            }
            if (ok) {
                out.push_back(a);
            }
        }
        return out;
    }

    PauliString image(std::uint32_t label, int phase_index) const {
        PauliString p = representative(params_, labels_[label]);
        p.s = mod(p.s + phase_index * params_.omega_step(), params_.phase_order());
        return p;
    }

   private:
    SystemParams params_;
    std::uint32_t count_;
    std::vector<PauliLabel> labels_;
    std::vector<PauliLabel> generators_;
};

void check_enumeration_cap(const SystemParams &params, std::uint64_t cap) {
    require_prime(params, "enumerate_clifford");
    BigInt order = clifford_group_order(params);
    if (order > BigInt(static_cast<unsigned long>(cap))) {
        throw CapExceeded("Clifford group order " + order.get_str() + " exceeds enumeration cap " +
                          std::to_string(cap));
    }
}

}  // namespace

void for_each_clifford(const SystemParams &params, const std::function<void(const CliffordTableau &)> &visit,
                       std::uint64_t cap) {
    check_enumeration_cap(params, cap);
    SlotCandidates cands(params);
    const int slots = 2 * params.n();
    std::vector<std::uint32_t> chosen(slots);
    std::vector<PauliString> images(slots);
    std::function<void(int)> recurse = [&](int t) {
        if (t == slots) {
            std::vector<PauliString> xs;
            std::vector<PauliString> zs;
            for (int j = 0; j < params.n(); ++j) {
                xs.push_back(images[2 * j]);
                zs.push_back(images[2 * j + 1]);
            }
            visit(CliffordBuilder::make(params, std::move(xs), std::move(zs)));
            return;
        }
        for (std::uint32_t a : cands.labels_for(t, chosen)) {
            chosen[t] = a;
            for (int j = 0; j < params.d(); ++j) {
                images[t] = cands.image(a, j);
                recurse(t + 1);
            }
        }
    };
    recurse(0);
}

std::vector<CliffordTableau> enumerate_clifford(const SystemParams &params, std::uint64_t cap) {
    std::vector<CliffordTableau> out;
    for_each_clifford(params, [&](const CliffordTableau &c) { out.push_back(c); }, cap);
    return out;
}

namespace {

std::filesystem::path cache_path(const std::filesystem::path &dir, const SystemParams &params) {
    return dir / ("clifford_n" + std::to_string(params.n()) + "_d" + std::to_string(params.d()) + ".txt");
}

std::optional<std::vector<CliffordTableau>> read_cache(const std::filesystem::path &path, const SystemParams &params,
                                                       const BigInt &order) {
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    std::string magic;
    int n = 0;
    int d = 0;
    std::string count;
    in >> magic >> n >> d >> count;
    if (magic != "twirl-lab-clifford-v1" || n != params.n() || d != params.d() || count != order.get_str()) {
        return std::nullopt;
    }
    std::vector<CliffordTableau> out;
    const int slots = 2 * params.n();
    for (BigInt i = 0; i < order; ++i) {
        std::vector<PauliString> xs;
        std::vector<PauliString> zs;
        for (int t = 0; t < slots; ++t) {
            std::uint32_t label = 0;
            int s = 0;
            char colon = 0;
            if (!(in >> label >> colon >> s) || colon != ':' || label >= params.label_count() || s < 0 ||
                s >= params.phase_order()) {
                return std::nullopt;
            }
            PauliString p{PauliLabel::from_index(params, label), s};
            (t % 2 == 0 ? xs : zs).push_back(p);
        }
        CliffordTableau c = CliffordTableau::unchecked(params, std::move(xs), std::move(zs));
        if (!tableau_validate(c).ok) {
            return std::nullopt;
        }
        out.push_back(CliffordTableau::from_images(params, c.x_images(), c.z_images()));
    }
    return out;
}

void write_cache(const std::filesystem::path &path, const SystemParams &params,
                 const std::vector<CliffordTableau> &elements) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            return;
        }
        out << "twirl-lab-clifford-v1 " << params.n() << " " << params.d() << " " << elements.size() << "\n";
        for (const auto &c : elements) {
            for (int t = 0; t < 2 * params.n(); ++t) {
                const PauliString &p = c.slot_image(t);
                out << (t ? " " : "") << p.label.index(params) << ":" << p.s;
            }
            out << "\n";
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace

std::vector<CliffordTableau> enumerate_clifford_cached(const SystemParams &params, std::uint64_t cap) {
    const char *dir = std::getenv("TWIRL_LAB_CACHE");
    if (dir == nullptr || *dir == '\0') {
        return enumerate_clifford(params, cap);
    }
    check_enumeration_cap(params, cap);
    std::filesystem::path path = cache_path(dir, params);
    if (auto cached = read_cache(path, params, clifford_group_order(params))) {
        return std::move(*cached);
    }
    std::vector<CliffordTableau> elements = enumerate_clifford(params, cap);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    write_cache(path, params, elements);
    return elements;
}

CliffordTableau sample_clifford(const SystemParams &params, std::mt19937_64 &rng) {
    require_prime(params, "sample_clifford");
    if (params.label_count() > (1 << 20)) {
        throw CapExceeded("sample_clifford scans d^{2n} labels per slot; d^{2n} = " +
                          std::to_string(params.label_count()) + " exceeds 2^20");
    }
    SlotCandidates cands(params);
    const int slots = 2 * params.n();
    std::vector<std::uint32_t> chosen(slots);
    std::vector<PauliString> xs;
    std::vector<PauliString> zs;
    for (int t = 0; t < slots; ++t) {
        std::vector<std::uint32_t> labels = cands.labels_for(t, chosen);
        std::uint64_t r = uniform_below(rng, labels.size() * params.d());
        chosen[t] = labels[r / params.d()];
        (t % 2 == 0 ? xs : zs).push_back(cands.image(chosen[t], static_cast<int>(r % params.d())));
    }
    return CliffordBuilder::make(params, std::move(xs), std::move(zs));
}

CliffordTableau sample_clifford(const SystemParams &params, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_clifford(params, rng);
}

Ensemble::Ensemble(const SystemParams &params, std::vector<EnsembleEntry> entries)
    : params_(params), entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw ContractViolation("ensemble has no entries");
    }
    Rational total = 0;
    for (size_t i = 0; i < entries_.size(); ++i) {
        const auto &entry = entries_[i];
        if (entry.weight < 0) {
            throw ContractViolation("entry " + std::to_string(i) + " has negative weight " + to_string(entry.weight));
        }
        if (!(entry.element.params() == params_)) {
            throw ContractViolation("entry " + std::to_string(i) + " has mismatched (n, d)");
        }
        if (!entry.element.known_valid()) {
            ValidityReport r = tableau_validate(entry.element);
            if (!r.ok) {
                throw ContractViolation("entry " + std::to_string(i) + " is not a valid tableau: " + r.message);
            }
        }
        total += entry.weight;
    }
    if (total != 1) {
        Rational deficit = 1 - total;
        throw ContractViolation("weights sum to " + to_string(total) + " (deficit " + to_string(deficit) + ")");
    }
}

Ensemble Ensemble::uniform(const SystemParams &params, std::vector<CliffordTableau> elements) {
    if (elements.empty()) {
        throw ContractViolation("uniform ensemble over an empty set");
    }
    Rational w(1, static_cast<unsigned long>(elements.size()));
    std::vector<EnsembleEntry> entries;
    entries.reserve(elements.size());
    for (auto &c : elements) {
        entries.push_back(EnsembleEntry{w, std::move(c)});
    }
    return Ensemble(params, std::move(entries));
}

Ensemble Ensemble::clifford_uniform(const SystemParams &params) {
    return uniform(params, enumerate_clifford_cached(params));
}

Ensemble Ensemble::pauli_uniform(const SystemParams &params) {
    if (params.label_count() > (1 << 20)) {
        throw CapExceeded("pauli_uniform needs d^{2n} <= 2^20");
    }
    std::vector<CliffordTableau> elements;
    for (std::uint32_t a = 0; a < params.label_count(); ++a) {
        elements.push_back(pauli_tableau(params, PauliLabel::from_index(params, a)));
    }
    return uniform(params, std::move(elements));
}

Ensemble Ensemble::singleton(const CliffordTableau &element) {
    return Ensemble(element.params(), {EnsembleEntry{Rational(1), element}});
}

Rational subensemble_weight(const Ensemble &e, std::span<const PauliLabel> p, std::span<const PauliString> q) {
    if (p.size() != q.size() || p.empty()) {
        throw ParameterError("subensemble_weight: tuples must be nonempty and of equal length");
    }
    const SystemParams &params = e.params();
    for (size_t i = 0; i < p.size(); ++i) {
        check_shape(params, p[i]);
        check_shape(params, q[i]);
    }
    for (size_t i = 0; i < p.size(); ++i) {
        for (size_t j = i + 1; j < p.size(); ++j) {
            if (commutation(params, p[i], p[j]) != commutation(params, q[i].label, q[j].label)) {
                return 0;
            }
        }
    }
    std::vector<PauliString> reps;
    for (const auto &label : p) {
        reps.push_back(representative(params, label));
    }
    Rational total = 0;
    for (const auto &entry : e.entries()) {
        bool match = true;
        for (size_t i = 0; i < reps.size() && match; ++i) {
            match = tableau_apply(entry.element, reps[i]) == q[i];
        }
        if (match) {
            total += entry.weight;
        }
    }
    return total;
}

bool is_pauli_invariant(const Ensemble &e) {
    std::map<CliffordTableau, Rational> weights;
    for (const auto &entry : e.entries()) {
        weights[entry.element] += entry.weight;
    }
    const SystemParams &params = e.params();
    std::vector<CliffordTableau> paulis;
    for (std::uint32_t a = 1; a < params.label_count(); ++a) {
        paulis.push_back(pauli_tableau(params, PauliLabel::from_index(params, a)));
    }
    for (const auto &[element, weight] : weights) {
        if (weight == 0) {
            continue;
        }
        for (const auto &p : paulis) {
            auto it = weights.find(tableau_compose(element, p));
            if (it == weights.end() || it->second != weight) {
                return false;
            }
        }
    }
    return true;
}

EnsembleImages::EnsembleImages(const Ensemble &e)
    : params_(e.params()),
      label_count_(static_cast<std::uint32_t>(e.params().label_count())),
      size_(e.size()) {
    if (params_.label_count() > 65536) {
        throw CapExceeded("image tables need d^{2n} <= 65536, got " + std::to_string(params_.label_count()));
    }
    if (static_cast<double>(label_count_) * static_cast<double>(size_) > 4e8) {
        throw CapExceeded("image table of " + std::to_string(label_count_) + " x " + std::to_string(size_) +
                          " entries exceeds 4e8");
    }
    BigInt lcm = 1;
    for (const auto &entry : e.entries()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), entry.weight.get_den_mpz_t());
    }
    if (lcm > BigInt(1L << 40)) {
        throw CapExceeded("common weight denominator " + lcm.get_str() + " exceeds 2^40");
    }
    denominator_ = lcm;
    weights_.reserve(size_);
    for (const auto &entry : e.entries()) {
        Rational scaled = entry.weight * lcm;
        weights_.push_back(scaled.get_num().get_si());
    }

    labels_.resize(static_cast<size_t>(label_count_) * size_);
    phases_.resize(static_cast<size_t>(label_count_) * size_);
    std::vector<PauliString> reps;
    for (std::uint32_t a = 0; a < label_count_; ++a) {
        reps.push_back(representative(params_, PauliLabel::from_index(params_, a)));
    }
    for (size_t i = 0; i < size_; ++i) {
        const CliffordTableau &c = e.entries()[i].element;
        for (std::uint32_t a = 0; a < label_count_; ++a) {
            PauliString img = tableau_apply(c, reps[a]);
            labels_[a * size_ + i] = static_cast<std::uint16_t>(img.label.index(params_));
            phases_[a * size_ + i] = static_cast<std::uint16_t>(relative_phase(params_, img));
        }
    }
}

}  // namespace twirl
