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

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "varqite/kernels.hpp"
#include "varqite/pauli.hpp"

namespace varqite {

using Complex = std::complex<double>;

/// Dense amplitude vector of length 2^n. Basis index of |q0 q1 ... q_{n-1}>
/// is sum_k q_k 2^{n-1-k}, i.e. qubit 0 is the most significant bit.
class StateVector {
   public:
    StateVector(int n_qubits, std::vector<Complex> amplitudes, bool normalised = true);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> mutable_amplitudes() { return amps_; }
    const Complex &operator[](std::size_t k) const { return amps_[k]; }

    /// False for tangent vectors produced by derivative expansion.
    bool normalised() const { return normalised_; }
    void mark_unnormalised() { normalised_ = false; }
    double norm_squared() const;

   private:
    int n_qubits_;
    std::vector<Complex> amps_;
    bool normalised_;
};

enum class GateKind { RX, RY, RZ, X, Y, Z, H, CNOT, CRY, PauliExp, GlobalPhase, PauliString };

std::string_view gate_kind_name(GateKind k);

/// One circuit operation. Conventions:
///   rx/ry/rz(t)   = exp(-i t sigma / 2) on qubits[0]
///   cnot, cry(t)  : qubits = {control, target}
///   pauli-exp(t)  = exp(+i t sigma_a (x) sigma_b) on qubits = {a, b}, axes = {sigma_a, sigma_b}
///   global-phase  = multiplication by exp(i t)
///   pauli-string  : applies 'pauli', optionally controlled on 'control'
struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    double angle = 0.0;
    std::array<PauliAxis, 2> axes{PauliAxis::X, PauliAxis::X};
    PauliString pauli;
    std::optional<int> control;

    static GateOp rx(int q, double t);
    static GateOp ry(int q, double t);
    static GateOp rz(int q, double t);
    static GateOp x(int q);
    static GateOp y(int q);
    static GateOp z(int q);
    static GateOp h(int q);
    static GateOp cnot(int control, int target);
    static GateOp cry(int control, int target, double t);
    static GateOp pauli_exp(int qa, PauliAxis a, int qb, PauliAxis b, double t);
    static GateOp global_phase(double t);
    static GateOp pauli_string(PauliString p, std::optional<int> control = std::nullopt);

    bool parametrised() const;
    /// The same gate with its angle replaced.
    GateOp with_angle(double t) const;
};

/// Throws std::out_of_range / std::invalid_argument when indices are invalid for n.
void validate_gate(const GateOp &g, int n_qubits);

/// The 2x2 unitary of a single-qubit kind (RX..H); also the target block of CNOT/CRY.
kernels::Mat2 single_qubit_matrix(GateKind kind, double angle);

kernels::PauliMasks pauli_masks(const PauliString &p, int n_qubits);

/// bits: '0'/'1' characters, qubit 0 first.
StateVector basis_state(int n_qubits, std::string_view bits);

StateVector apply_gate(const StateVector &state, const GateOp &gate);
void apply_gate_in_place(StateVector &state, const GateOp &gate);

Complex inner_product(const StateVector &bra, const StateVector &ket);
StateVector apply_pauli_string(const StateVector &state, const PauliString &p);
/// H|psi> as an unnormalised vector.
StateVector apply_hamiltonian(const StateVector &state, const Hamiltonian &h);
/// sum_a lambda_a <psi|h_a|psi>; the imaginary residue is discarded.
double expectation(const StateVector &state, const Hamiltonian &h);

std::vector<kernels::WeightedPauli> compile_hamiltonian(const Hamiltonian &h);

}  // namespace varqite
