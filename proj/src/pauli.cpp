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

#include "twirl/pauli.hpp"

#include <cctype>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

int mod(long a, long m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

SystemParams::SystemParams(int n, int d) : n_(n), d_(d), dim_(1) {
    if (n < 1) {
        throw ParameterError("n must be positive, got " + std::to_string(n));
    }
    if (d < 2 || d > 255) {
        throw ParameterError("d must lie in [2, 255], got " + std::to_string(d));
    }
    for (int i = 0; i < n; ++i) {
        dim_ *= d;
        if (dim_ > (1 << 15)) {
            throw CapExceeded("d^n exceeds 32768 (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
        }
    }
}

bool SystemParams::is_prime_d() const {
    for (int f = 2; f * f <= d_; ++f) {
        if (d_ % f == 0) {
            return false;
        }
    }
    return true;
}

PauliLabel PauliLabel::identity(const SystemParams &params) {
    return PauliLabel{std::vector<std::uint8_t>(params.n(), 0), std::vector<std::uint8_t>(params.n(), 0)};
}

PauliLabel PauliLabel::from_index(const SystemParams &params, std::uint32_t index) {
    PauliLabel out = identity(params);
    auto dim = static_cast<std::uint32_t>(params.dim());
    std::uint32_t xv = index / dim;
    std::uint32_t zv = index % dim;
    for (int j = params.n() - 1; j >= 0; --j) {
        out.x[j] = static_cast<std::uint8_t>(xv % params.d());
        out.z[j] = static_cast<std::uint8_t>(zv % params.d());
        xv /= params.d();
        zv /= params.d();
    }
    return out;
}

std::uint32_t PauliLabel::index(const SystemParams &params) const {
    std::uint32_t xv = 0;
    std::uint32_t zv = 0;
    for (size_t j = 0; j < x.size(); ++j) {
        xv = xv * params.d() + x[j];
        zv = zv * params.d() + z[j];
    }
    return xv * static_cast<std::uint32_t>(params.dim()) + zv;
}

bool PauliLabel::is_identity() const {
    for (size_t j = 0; j < x.size(); ++j) {
        if (x[j] != 0 || z[j] != 0) {
            return false;
        }
    }
    return true;
}

void check_shape(const SystemParams &params, const PauliLabel &label) {
    if (label.num_qudits() != params.n() || static_cast<int>(label.z.size()) != params.n()) {
        throw ParameterError("Pauli label on " + std::to_string(label.num_qudits()) + " qudits used with n=" +
                             std::to_string(params.n()));
    }
    for (int j = 0; j < params.n(); ++j) {
        if (label.x[j] >= params.d() || label.z[j] >= params.d()) {
            throw ParameterError("Pauli exponent out of range for d=" + std::to_string(params.d()));
        }
    }
}

void check_shape(const SystemParams &params, const PauliString &p) {
    check_shape(params, p.label);
    if (p.s < 0 || p.s >= params.phase_order()) {
        throw ParameterError("phase exponent " + std::to_string(p.s) + " not reduced mod " +
                             std::to_string(params.phase_order()));
    }
}

int representative_phase(const SystemParams &params, const PauliLabel &label) {
    if (params.d() % 2 != 0) {
        return 0;
    }
    long dot = 0;
    for (size_t j = 0; j < label.x.size(); ++j) {
        dot += static_cast<long>(label.x[j]) * label.z[j];
    }
    return mod(dot, params.phase_order());
}

PauliString representative(const SystemParams &params, const PauliLabel &label) {
    return PauliString{label, representative_phase(params, label)};
}

int relative_phase(const SystemParams &params, const PauliString &p) {
    return mod(p.s - representative_phase(params, p.label), params.phase_order());
}

PauliString generator_x(const SystemParams &params, int site) {
    PauliString p{PauliLabel::identity(params), 0};
    p.label.x.at(site) = 1;
    return p;
}

PauliString generator_z(const SystemParams &params, int site) {
    PauliString p{PauliLabel::identity(params), 0};
    p.label.z.at(site) = 1;
    return p;
}

PauliString pauli_mul(const SystemParams &params, const PauliString &p, const PauliString &q) {
    check_shape(params, p);
    check_shape(params, q);
    const int d = params.d();
    PauliString out{PauliLabel::identity(params), 0};
    long zx = 0;
    for (int j = 0; j < params.n(); ++j) {
        zx += static_cast<long>(p.label.z[j]) * q.label.x[j];
        out.label.x[j] = static_cast<std::uint8_t>((p.label.x[j] + q.label.x[j]) % d);
        out.label.z[j] = static_cast<std::uint8_t>((p.label.z[j] + q.label.z[j]) % d);
    }
    out.s = mod(p.s + q.s + params.omega_step() * zx, params.phase_order());
    return out;
}

PauliString pauli_dagger(const SystemParams &params, const PauliString &p) {
    check_shape(params, p);
    const int d = params.d();
    PauliString out{PauliLabel::identity(params), 0};
    long xz = 0;
    for (int j = 0; j < params.n(); ++j) {
        xz += static_cast<long>(p.label.x[j]) * p.label.z[j];
        out.label.x[j] = static_cast<std::uint8_t>((d - p.label.x[j]) % d);
        out.label.z[j] = static_cast<std::uint8_t>((d - p.label.z[j]) % d);
    }
    out.s = mod(-p.s + params.omega_step() * xz, params.phase_order());
    return out;
}

PauliString pauli_pow(const SystemParams &params, const PauliString &p, int e) {
    if (e < 0) {
        throw ParameterError("negative Pauli power");
    }
    PauliString acc{PauliLabel::identity(params), 0};
    for (int i = 0; i < e; ++i) {
        acc = pauli_mul(params, acc, p);
    }
    return acc;
}

int commutation(const SystemParams &params, const PauliLabel &p, const PauliLabel &q) {
    check_shape(params, p);
    check_shape(params, q);
    long f = 0;
    for (int j = 0; j < params.n(); ++j) {
        f += static_cast<long>(p.z[j]) * q.x[j] - static_cast<long>(p.x[j]) * q.z[j];
    }
    return mod(f, params.d());
}

bool proportional_labels(const SystemParams &params, const PauliLabel &p, const PauliLabel &q) {
    if (p.is_identity() || q.is_identity()) {
        return false;
    }
    for (int j = 1; j < params.d(); ++j) {
        bool match = true;
        for (int i = 0; i < params.n() && match; ++i) {
            match = (j * p.x[i]) % params.d() == q.x[i] && (j * p.z[i]) % params.d() == q.z[i];
        }
        if (match) {
            return true;
        }
    }
    return false;
}

std::vector<PauliString> enumerate_paulis(const SystemParams &params, PauliFilter filter) {
    if (params.dim() > 256) {
        throw CapExceeded("enumerate_paulis needs d^n <= 256, got " + std::to_string(params.dim()));
    }
    if (filter == PauliFilter::HermitianReps && params.d() != 2) {
        throw ParameterError("Hermitian representatives exist only for d = 2");
    }
    std::vector<PauliString> out;
    auto count = static_cast<std::uint32_t>(params.label_count());
    out.reserve(count);
    for (std::uint32_t i = filter == PauliFilter::All ? 0 : 1; i < count; ++i) {
        out.push_back(representative(params, PauliLabel::from_index(params, i)));
    }
    return out;
}

std::string to_string(const PauliLabel &label) {
    std::string out = "X";
    for (auto v : label.x) {
        out += static_cast<char>('0' + v);
    }
    out += " Z";
    for (auto v : label.z) {
        out += static_cast<char>('0' + v);
    }
    return out;
}

std::string to_string(const PauliString &p) {
    std::string body = to_string(p.label);
    return p.s == 0 ? body : "w^" + std::to_string(p.s) + " " + body;
}

PauliString parse_pauli(const SystemParams &params, std::string_view text) {
    auto fail = [&](const std::string &why) {
        return ParameterError("cannot parse Pauli '" + std::string(text) + "': " + why);
    };
    if (params.d() > 10) {
        throw fail("digit syntax supports d <= 10");
    }
    PauliString out{PauliLabel::identity(params), 0};
    bool saw_x = false;
    bool saw_z = false;
    size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
            ++end;
        }
        std::string_view tok = text.substr(pos, end - pos);
        pos = end;
        if (tok.starts_with("w^")) {
            std::string_view digits = tok.substr(2);
            if (digits.empty() || saw_x || saw_z) {
                throw fail("misplaced phase token");
            }
            long s = 0;
            for (char c : digits) {
                if (!std::isdigit(static_cast<unsigned char>(c))) {
                    throw fail("bad phase exponent");
                }
                s = s * 10 + (c - '0');
                if (s > 1000000) {
                    throw fail("phase exponent too large");
                }
            }
            out.s = mod(s, params.phase_order());
            continue;
        }
        char kind = tok.empty() ? '\0' : tok.front();
        if ((kind != 'X' && kind != 'Z') || (kind == 'X' && (saw_x || saw_z)) || (kind == 'Z' && saw_z)) {
            throw fail("expected X<digits> then Z<digits>");
        }
        std::string_view digits = tok.substr(1);
        if (static_cast<int>(digits.size()) != params.n()) {
            throw fail("expected " + std::to_string(params.n()) + " digits");
        }
        auto &target = kind == 'X' ? out.label.x : out.label.z;
        for (int j = 0; j < params.n(); ++j) {
            int v = digits[j] - '0';
            if (v < 0 || v >= params.d()) {
                throw fail("digit out of range");
            }
            target[j] = static_cast<std::uint8_t>(v);
        }
        (kind == 'X' ? saw_x : saw_z) = true;
    }
    if (!saw_x || !saw_z) {
        throw fail("both X and Z parts are required");
    }
    return out;
}

LabelAlgebra::LabelAlgebra(const SystemParams &params)
    : params_(params),
      count_(static_cast<std::uint32_t>(params.label_count())),
      phase_order_(params.phase_order()),
      tabulated_(params.label_count() <= 4096) {
    dagger_label_.resize(count_);
    dagger_phase_.resize(count_);
    rep_phase_.resize(count_);
    std::vector<PauliString> reps;
    reps.reserve(count_);
    for (std::uint32_t a = 0; a < count_; ++a) {
        reps.push_back(representative(params, PauliLabel::from_index(params, a)));
        rep_phase_[a] = static_cast<std::uint16_t>(reps.back().s);
    }
    for (std::uint32_t a = 0; a < count_; ++a) {
        PauliString dg = pauli_dagger(params, reps[a]);
        dagger_label_[a] = dg.label.index(params);
        dagger_phase_[a] = static_cast<std::uint16_t>(relative_phase(params, dg));
    }
    if (tabulated_) {
        mul_label_.resize(static_cast<size_t>(count_) * count_);
        mul_phase_.resize(static_cast<size_t>(count_) * count_);
        for (std::uint32_t a = 0; a < count_; ++a) {
            for (std::uint32_t b = 0; b < count_; ++b) {
                PauliString prod = pauli_mul(params, reps[a], reps[b]);
                mul_label_[static_cast<size_t>(a) * count_ + b] = prod.label.index(params);
                mul_phase_[static_cast<size_t>(a) * count_ + b] = static_cast<std::uint16_t>(relative_phase(params, prod));
            }
        }
    }
}

std::uint32_t LabelAlgebra::mul_label(std::uint32_t a, std::uint32_t b) const {
    if (tabulated_) {
        return mul_label_[static_cast<size_t>(a) * count_ + b];
    }
    PauliString prod = pauli_mul(params_, representative(params_, PauliLabel::from_index(params_, a)),
                                 representative(params_, PauliLabel::from_index(params_, b)));
    return prod.label.index(params_);
}

int LabelAlgebra::mul_phase(std::uint32_t a, std::uint32_t b) const {
    if (tabulated_) {
        return mul_phase_[static_cast<size_t>(a) * count_ + b];
    }
    PauliString prod = pauli_mul(params_, representative(params_, PauliLabel::from_index(params_, a)),
                                 representative(params_, PauliLabel::from_index(params_, b)));
    return relative_phase(params_, prod);
}

int LabelAlgebra::commutation(std::uint32_t a, std::uint32_t b) const {
    return twirl::commutation(params_, PauliLabel::from_index(params_, a), PauliLabel::from_index(params_, b));
}

}  // namespace twirl
