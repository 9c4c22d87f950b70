// Copyright 2026 The varqite Authors
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

#include "varqite/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace varqite {

char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::X:
            return 'X';
        case PauliAxis::Y:
            return 'Y';
        case PauliAxis::Z:
            return 'Z';
    }
    return '?';
}

PauliString::PauliString(std::map<int, PauliAxis> ops) : ops_(std::move(ops)) {
    for (const auto &[q, _] : ops_) {
        if (q < 0) {
            throw std::invalid_argument("negative qubit index in Pauli string");
        }
    }
}

namespace {

PauliString parse_factors(const std::vector<std::string> &factors, int line) {
    if (factors.empty()) {
        throw ParseError(line, "term has no Pauli factors");
    }
    if (factors.size() == 1 && factors[0] == "I") {
        return PauliString{};
    }
    std::map<int, PauliAxis> ops;
    for (const auto &f : factors) {
        if (f == "I") {
            throw ParseError(line, "identity factor 'I' must appear alone");
        }
        if (f.size() < 2) {
            throw ParseError(line, "malformed factor '" + f + "'");
        }
        PauliAxis axis;
        switch (f[0]) {
            case 'X':
                axis = PauliAxis::X;
                break;
            case 'Y':
                axis = PauliAxis::Y;
                break;
            case 'Z':
                axis = PauliAxis::Z;
                break;
            default:
                throw ParseError(line, "unknown Pauli axis in factor '" + f + "'");
        }
        std::string_view digits(f.data() + 1, f.size() - 1);
        if (digits.front() == '-') {
            throw ParseError(line, "negative qubit index in factor '" + f + "'");
        }
        int q = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
            throw ParseError(line, "malformed qubit index in factor '" + f + "'");
        }
        if (!ops.emplace(q, axis).second) {
            throw ParseError(line, "qubit " + std::to_string(q) + " appears twice in one term");
        }
    }
    return PauliString(std::move(ops));
}

std::vector<std::string> split_ws(const std::string &s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::string format_coefficient(double c) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), c);
    std::string s(buf, ptr);
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

}  // namespace

PauliString PauliString::from_text(std::string_view text) {
    return parse_factors(split_ws(std::string(text)), 0);
}

int PauliString::min_qubits() const {
    return ops_.empty() ? 0 : ops_.rbegin()->first + 1;
}

std::uint64_t PauliString::x_mask(int n_qubits) const {
    std::uint64_t m = 0;
    for (const auto &[q, a] : ops_) {
        if (a != PauliAxis::Z) {
            m |= std::uint64_t{1} << (n_qubits - 1 - q);
        }
    }
    return m;
}

std::uint64_t PauliString::z_mask(int n_qubits) const {
    std::uint64_t m = 0;
    for (const auto &[q, a] : ops_) {
        if (a != PauliAxis::X) {
            m |= std::uint64_t{1} << (n_qubits - 1 - q);
        }
    }
    return m;
}

int PauliString::y_count() const {
    return static_cast<int>(
        std::count_if(ops_.begin(), ops_.end(), [](const auto &kv) { return kv.second == PauliAxis::Y; }));
}

std::string PauliString::str() const {
    if (ops_.empty()) {
        return "I";
    }
    std::string s;
    for (const auto &[q, a] : ops_) {
        if (!s.empty()) {
            s += ' ';
        }
        s += axis_char(a);
        s += std::to_string(q);
    }
    return s;
}

Hamiltonian::Hamiltonian(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("Hamiltonian needs at least one qubit");
    }
    for (auto &t : terms) {
        if (!std::isfinite(t.coefficient)) {
            throw std::invalid_argument("non-finite coefficient on term " + t.string.str());
        }
        if (t.string.min_qubits() > n_qubits) {
            throw std::invalid_argument("term " + t.string.str() + " exceeds " + std::to_string(n_qubits) +
                                        " qubits");
        }
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const PauliTerm &u) { return u.string == t.string; });
        if (it == terms_.end()) {
            terms_.push_back(std::move(t));
        } else {
            it->coefficient += t.coefficient;
        }
    }
    std::erase_if(terms_, [](const PauliTerm &t) { return std::abs(t.coefficient) < kMergeTolerance; });
}

bool Hamiltonian::equivalent(const Hamiltonian &other, double tol) const {
    if (n_qubits_ != other.n_qubits_ || terms_.size() != other.terms_.size()) {
        return false;
    }
    for (const auto &t : terms_) {
        auto it = std::find_if(other.terms_.begin(), other.terms_.end(),
                               [&](const PauliTerm &u) { return u.string == t.string; });
        if (it == other.terms_.end() || std::abs(it->coefficient - t.coefficient) > tol) {
            return false;
        }
    }
    return true;
}

ParseError::ParseError(int line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Hamiltonian parse_hamiltonian(std::istream &in) {
    std::string raw;
    int line_no = 0;
    int declared = -1;
    bool seen_content = false;
    std::vector<PauliTerm> terms;
    int max_qubits = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto toks = split_ws(raw);
        if (toks.empty() || toks[0].front() == '#') {
            continue;
        }
        if (toks[0] == "qubits") {
            if (seen_content) {
                throw ParseError(line_no, "'qubits' header must precede all terms");
            }
            seen_content = true;
            if (toks.size() != 2) {
                throw ParseError(line_no, "malformed 'qubits' header");
            }
            int n = 0;
            const auto &v = toks[1];
            auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
            if (ec != std::errc{} || ptr != v.data() + v.size() || n < 1 || n > 62) {
                throw ParseError(line_no, "malformed 'qubits' header");
            }
            declared = n;
            continue;
        }
        seen_content = true;
        double coef = 0.0;
        const auto &c = toks[0];
        const char *first = c.data() + (c.front() == '+' ? 1 : 0);
        auto [ptr, ec] = std::from_chars(first, c.data() + c.size(), coef);
        if (ec != std::errc{} || ptr != c.data() + c.size() || !std::isfinite(coef)) {
            throw ParseError(line_no, "malformed coefficient '" + c + "'");
        }
        auto ps = parse_factors({toks.begin() + 1, toks.end()}, line_no);
        if (declared > 0 && ps.min_qubits() > declared) {
            throw ParseError(line_no, "qubit index exceeds declared count " + std::to_string(declared));
        }
        max_qubits = std::max(max_qubits, ps.min_qubits());
        terms.push_back({coef, std::move(ps)});
    }
    if (terms.empty()) {
        throw ParseError(line_no, "no Hamiltonian terms in input");
    }
    return Hamiltonian(declared > 0 ? declared : std::max(1, max_qubits), std::move(terms));
}

Hamiltonian parse_hamiltonian(std::string_view text) {
    std::istringstream ss{std::string(text)};
    return parse_hamiltonian(ss);
}

std::string serialize_hamiltonian(const Hamiltonian &h) {
    std::string out = "qubits " + std::to_string(h.n_qubits());
    for (const auto &t : h.terms()) {
        out += '\n';
        out += format_coefficient(t.coefficient);
        out += ' ';
        out += t.string.str();
    }
    out += '\n';
    return out;
}

namespace {

PauliString ps(std::initializer_list<std::pair<const int, PauliAxis>> ops) { return PauliString(ops); }

}  // namespace

Hamiltonian builtin_hamiltonian(std::string_view name) {
    using enum PauliAxis;
    if (name == "h2-sto3g-0.75") {
        // Reduced two-qubit H2 Hamiltonian at R = 0.75 A (Hartree).
        return Hamiltonian(2, {
                                  {0.2252, ps({})},
                                  {0.3435, ps({{0, Z}})},
                                  {-0.4347, ps({{1, Z}})},
                                  {0.5716, ps({{0, Z}, {1, Z}})},
                                  {0.0910, ps({{0, Y}, {1, Y}})},
                                  {0.0910, ps({{0, X}, {1, X}})},
                              });
    }
    // Diagonal toy matrices written as Z sums; diag(1,2,3,0) and diag(1,1,2,0).
    if (name == "toy-a") {
        return Hamiltonian(2, {{1.5, ps({})}, {0.5, ps({{1, Z}})}, {-1.0, ps({{0, Z}, {1, Z}})}});
    }
    if (name == "toy-b") {
        return Hamiltonian(2, {{1.0, ps({})}, {0.5, ps({{1, Z}})}, {-0.5, ps({{0, Z}, {1, Z}})}});
    }
    throw std::invalid_argument("unknown builtin Hamiltonian '" + std::string(name) + "'");
}

std::vector<std::string> builtin_hamiltonian_names() { return {"h2-sto3g-0.75", "toy-a", "toy-b"}; }

}  // namespace varqite
