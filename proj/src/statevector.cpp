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

#include "varqite/statevector.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace varqite {

namespace k = kernels::omp;

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes, bool normalised)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)), normalised_(normalised) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("state vector qubit count out of range: " + std::to_string(n_qubits));
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) + " is not 2^" +
                                    std::to_string(n_qubits));
    }
}

double StateVector::norm_squared() const { return k::inner_product(amps_, amps_).real(); }

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "rx";
        case GateKind::RY:
            return "ry";
        case GateKind::RZ:
            return "rz";
        case GateKind::X:
            return "x";
        case GateKind::Y:
            return "y";
        case GateKind::Z:
            return "z";
        case GateKind::H:
            return "h";
        case GateKind::CNOT:
            return "cnot";
        case GateKind::CRY:
            return "cry";
        case GateKind::PauliExp:
            return "pauli-exp";
        case GateKind::GlobalPhase:
            return "global-phase";
        case GateKind::PauliString:
            return "pauli-string";
    }
    return "?";
}

GateOp GateOp::rx(int q, double t) { return {.kind = GateKind::RX, .qubits = {q}, .angle = t}; }
GateOp GateOp::ry(int q, double t) { return {.kind = GateKind::RY, .qubits = {q}, .angle = t}; }
GateOp GateOp::rz(int q, double t) { return {.kind = GateKind::RZ, .qubits = {q}, .angle = t}; }
GateOp GateOp::x(int q) { return {.kind = GateKind::X, .qubits = {q}}; }
GateOp GateOp::y(int q) { return {.kind = GateKind::Y, .qubits = {q}}; }
GateOp GateOp::z(int q) { return {.kind = GateKind::Z, .qubits = {q}}; }
GateOp GateOp::h(int q) { return {.kind = GateKind::H, .qubits = {q}}; }
GateOp GateOp::cnot(int control, int target) { return {.kind = GateKind::CNOT, .qubits = {control, target}}; }
GateOp GateOp::cry(int control, int target, double t) {
    return {.kind = GateKind::CRY, .qubits = {control, target}, .angle = t};
}
GateOp GateOp::pauli_exp(int qa, PauliAxis a, int qb, PauliAxis b, double t) {
    return {.kind = GateKind::PauliExp, .qubits = {qa, qb}, .angle = t, .axes = {a, b}};
}
GateOp GateOp::global_phase(double t) { return {.kind = GateKind::GlobalPhase, .angle = t}; }
GateOp GateOp::pauli_string(PauliString p, std::optional<int> control) {
    return {.kind = GateKind::PauliString, .pauli = std::move(p), .control = control};
}

bool GateOp::parametrised() const {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CRY:
        case GateKind::PauliExp:
        case GateKind::GlobalPhase:
            return true;
        default:
            return false;
    }
}

GateOp GateOp::with_angle(double t) const {
    GateOp g = *this;
    g.angle = t;
    return g;
}

void validate_gate(const GateOp &g, int n_qubits) {
    std::size_t expected = 0;
    switch (g.kind) {
        case GateKind::GlobalPhase:
        case GateKind::PauliString:
            expected = 0;
            break;
        case GateKind::CNOT:
        case GateKind::CRY:
        case GateKind::PauliExp:
            expected = 2;
            break;
        default:
            expected = 1;
    }
    if (g.qubits.size() != expected) {
        throw std::invalid_argument(std::string(gate_kind_name(g.kind)) + " expects " + std::to_string(expected) +
                                    " qubit(s)");
    }
    std::set<int> seen;
    auto check = [&](int q) {
        if (q < 0 || q >= n_qubits) {
            throw std::out_of_range(std::string(gate_kind_name(g.kind)) + ": qubit " + std::to_string(q) +
                                    " out of range for " + std::to_string(n_qubits) + " qubits");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument(std::string(gate_kind_name(g.kind)) + ": repeated qubit " +
                                        std::to_string(q));
        }
    };
    for (int q : g.qubits) {
        check(q);
    }
    if (g.kind == GateKind::PauliString) {
        for (const auto &[q, _] : g.pauli.ops()) {
            check(q);
        }
        if (g.control) {
            check(*g.control);
        }
    } else if (g.control) {
        throw std::invalid_argument("only pauli-string gates take an explicit control");
    }
}

kernels::Mat2 single_qubit_matrix(GateKind kind, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const Complex i{0, 1};
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::RX:
            return {c, -i * s, -i * s, c};
        case GateKind::RY:
        case GateKind::CRY:
            return {c, -s, s, c};
        case GateKind::RZ:
            return {std::exp(-i * (angle / 2)), 0, 0, std::exp(i * (angle / 2))};
        case GateKind::X:
        case GateKind::CNOT:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -i, i, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::H:
            return {r, r, r, -r};
        default:
            throw std::invalid_argument(std::string(gate_kind_name(kind)) + " is not a single-qubit kind");
    }
}

kernels::PauliMasks pauli_masks(const PauliString &p, int n_qubits) {
    return {p.x_mask(n_qubits), p.z_mask(n_qubits), p.y_count()};
}

StateVector basis_state(int n_qubits, std::string_view bits) {
    if (bits.size() != static_cast<std::size_t>(n_qubits)) {
        throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) + " does not match " +
                                    std::to_string(n_qubits) + " qubits");
    }
    std::size_t index = 0;
    for (char b : bits) {
        if (b != '0' && b != '1') {
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        }
        index = (index << 1) | static_cast<std::size_t>(b == '1');
    }
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    amps[index] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

void apply_gate_in_place(StateVector &state, const GateOp &gate) {
    const int n = state.n_qubits();
    validate_gate(gate, n);
    auto amps = state.mutable_amplitudes();
    auto bit = [n](int q) { return std::uint64_t{1} << (n - 1 - q); };
    switch (gate.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
            k::apply_1q(amps, n, gate.qubits[0], single_qubit_matrix(gate.kind, gate.angle));
            return;
        case GateKind::CNOT:
        case GateKind::CRY:
            k::apply_1q(amps, n, gate.qubits[1], single_qubit_matrix(gate.kind, gate.angle), bit(gate.qubits[0]));
            return;
        case GateKind::PauliExp: {
            PauliString p({{gate.qubits[0], gate.axes[0]}, {gate.qubits[1], gate.axes[1]}});
            k::apply_pauli_exp(amps, pauli_masks(p, n), gate.angle);
            return;
        }
        case GateKind::GlobalPhase:
            k::scale(amps, std::exp(Complex{0, gate.angle}));
            return;
        case GateKind::PauliString: {
            if (gate.pauli.is_identity()) {
                return;
            }
            std::vector<Complex> out(amps.size());
            k::apply_pauli(amps, out, pauli_masks(gate.pauli, n), gate.control ? bit(*gate.control) : 0);
            std::copy(out.begin(), out.end(), amps.begin());
            return;
        }
    }
}

StateVector apply_gate(const StateVector &state, const GateOp &gate) {
    StateVector out = state;
    apply_gate_in_place(out, gate);
    return out;
}

Complex inner_product(const StateVector &bra, const StateVector &ket) {
    if (bra.n_qubits() != ket.n_qubits()) {
        throw std::invalid_argument("inner product of states with different qubit counts");
    }
    return k::inner_product(bra.amplitudes(), ket.amplitudes());
}

StateVector apply_pauli_string(const StateVector &state, const PauliString &p) {
    if (p.min_qubits() > state.n_qubits()) {
        throw std::out_of_range("Pauli string " + p.str() + " exceeds state qubit count");
    }
    std::vector<Complex> out(state.dim());
    k::apply_pauli(state.amplitudes(), out, pauli_masks(p, state.n_qubits()));
    return StateVector(state.n_qubits(), std::move(out), state.normalised());
}

std::vector<kernels::WeightedPauli> compile_hamiltonian(const Hamiltonian &h) {
    std::vector<kernels::WeightedPauli> out;
    out.reserve(h.terms().size());
    for (const auto &t : h.terms()) {
        out.push_back({t.coefficient, pauli_masks(t.string, h.n_qubits())});
    }
    return out;
}

namespace {

void check_dims(const StateVector &state, const Hamiltonian &h) {
    if (state.n_qubits() != h.n_qubits()) {
        throw std::invalid_argument("Hamiltonian acts on " + std::to_string(h.n_qubits()) + " qubits, state has " +
                                    std::to_string(state.n_qubits()));
    }
}

}  // namespace

StateVector apply_hamiltonian(const StateVector &state, const Hamiltonian &h) {
    check_dims(state, h);
    std::vector<Complex> out(state.dim());
    const auto terms = compile_hamiltonian(h);
    k::apply_weighted_paulis(state.amplitudes(), out, terms);
    return StateVector(state.n_qubits(), std::move(out), false);
}

double expectation(const StateVector &state, const Hamiltonian &h) {
    check_dims(state, h);
    double e = 0.0;
    for (const auto &t : h.terms()) {
        e += t.coefficient * k::pauli_expectation(state.amplitudes(), pauli_masks(t.string, h.n_qubits())).real();
    }
    return e;
}

}  // namespace varqite
