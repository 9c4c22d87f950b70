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

#include <cstddef>

#include "varqite/ansatz.hpp"
#include "varqite/pauli.hpp"
#include "varqite/solver.hpp"

namespace varqite {

/// A Pauli insertion: term `term` of the derivative rule of gate `gate`.
struct Insertion {
    std::size_t gate = 0;
    std::size_t term = 0;
};

/// Re(e^{i phase} <V_bra | V_ket>), where V_x is the circuit with the
/// insertion x applied just before its gate.
struct OverlapTerm {
    Insertion bra;
    Insertion ket;
    double phase = 0.0;
};

/// Re(e^{i phase} <V_bra | h_t V>), h_t being Hamiltonian term t without its coefficient.
struct EnergyTerm {
    Insertion bra;
    std::size_t hamiltonian_term = 0;
    double phase = 0.0;
};

/// Simulates the ancilla-assisted interference circuit on n + 1 qubits
/// (ancilla at index 0) and returns the ancilla's <Z>.
double hadamard_test(const AnsatzCircuit &a, const ParamVector &theta, const OverlapTerm &term);
double hadamard_test(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h, const EnergyTerm &term);

/// The same quantities by direct inner products on n qubits.
double direct_overlap(const AnsatzCircuit &a, const ParamVector &theta, const OverlapTerm &term);
double direct_overlap(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h, const EnergyTerm &term);

/// A and C assembled entirely from interference-circuit expectations.
AMatrix a_matrix_by_hadamard(const AnsatzCircuit &a, const ParamVector &theta);
CVector c_vector_by_hadamard(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h);

}  // namespace varqite
