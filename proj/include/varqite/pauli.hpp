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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace varqite {

enum class PauliAxis : std::uint8_t { X, Y, Z };

char axis_char(PauliAxis a);

/// Tensor product of single-qubit Paulis. Qubits absent from the map act as
/// identity; the empty map is the identity operator.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::map<int, PauliAxis> ops);

    /// Parses the compact form used by the text format, e.g. "X0 Y1" or "I".
    static PauliString from_text(std::string_view text);

    const std::map<int, PauliAxis> &ops() const { return ops_; }
    bool is_identity() const { return ops_.empty(); }
    /// One past the largest qubit index touched; 0 for the identity.
    int min_qubits() const;

    /// Bit masks under the q0-most-significant convention. X and Y set the
    /// flip mask, Z and Y set the phase mask.
    std::uint64_t x_mask(int n_qubits) const;
    std::uint64_t z_mask(int n_qubits) const;
    int y_count() const;

    std::string str() const;

    friend bool operator==(const PauliString &, const PauliString &) = default;
    friend auto operator<=>(const PauliString &, const PauliString &) = default;

   private:
    std::map<int, PauliAxis> ops_;
};

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;
};

/// Weighted Pauli sum on a fixed number of qubits. Terms with identical
/// strings are merged on construction; merged coefficients with magnitude
/// below kMergeTolerance are dropped.
class Hamiltonian {
   public:
    static constexpr double kMergeTolerance = 1e-12;

    Hamiltonian(int n_qubits, std::vector<PauliTerm> terms);

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm> &terms() const { return terms_; }

    /// Equal qubit count and equal term multiset (order-insensitive).
    bool equivalent(const Hamiltonian &other, double tol = 0.0) const;

   private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(int line, const std::string &what);
    int line() const { return line_; }

   private:
    int line_;
};

Hamiltonian parse_hamiltonian(std::istream &in);
Hamiltonian parse_hamiltonian(std::string_view text);
std::string serialize_hamiltonian(const Hamiltonian &h);

/// Names: "h2-sto3g-0.75", "toy-a", "toy-b".
Hamiltonian builtin_hamiltonian(std::string_view name);
std::vector<std::string> builtin_hamiltonian_names();

}  // namespace varqite
