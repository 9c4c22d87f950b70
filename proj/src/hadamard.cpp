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

#include "varqite/hadamard.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace varqite {

namespace {

PauliString shift(const PauliString &p) {
    std::map<int, PauliAxis> ops;
    for (const auto &[q, ax] : p.ops()) {
        ops.emplace(q + 1, ax);
    }
    return PauliString(std::move(ops));
}

GateOp shift(GateOp g) {
    for (auto &q : g.qubits) {
        ++q;
    }
    g.pauli = shift(g.pauli);
    if (g.control) {
        ++*g.control;
    }
    return g;
}

DerivativeTerm insertion_term(const AnsatzCircuit &a, const Insertion &ins) {
    if (ins.gate >= a.gate_count()) {
        throw std::out_of_range("insertion gate index out of range");
    }
    const auto &g = a.gates()[ins.gate];
    if (!g.binding.param) {
        throw std::invalid_argument("insertion on a gate without a parameter");
    }
    const auto rule = derivative_rule(g.op);
    if (ins.term >= rule.size()) {
        throw std::out_of_range("insertion term index out of range");
    }
    return rule[ins.term];
}

void run_gates(StateVector &s, const AnsatzCircuit &a, const ParamVector &theta, std::size_t from, std::size_t to,
               bool shifted) {
    for (std::size_t g = from; g < to; ++g) {
        const GateOp op = a.resolved(g, theta);
        apply_gate_in_place(s, shifted ? shift(op) : op);
    }
}

double ancilla_z(const StateVector &s) {
    const std::size_t half = s.amplitudes().size() / 2;
    double z = 0.0;
    for (std::size_t k = 0; k < s.amplitudes().size(); ++k) {
        z += (k < half ? 1.0 : -1.0) * std::norm(s[k]);
    }
    return z;
}

// H then RZ(phase) on the ancilla, the system left in its initial bits.
StateVector ancilla_start(const AnsatzCircuit &a, double phase) {
    StateVector s = basis_state(a.n_qubits() + 1, "0" + a.initial_bits());
    apply_gate_in_place(s, GateOp::h(0));
    apply_gate_in_place(s, GateOp::rz(0, phase));
    return s;
}

void anti_controlled(StateVector &s, const PauliString &sigma) {
    apply_gate_in_place(s, GateOp::x(0));
    apply_gate_in_place(s, GateOp::pauli_string(shift(sigma), 0));
    apply_gate_in_place(s, GateOp::x(0));
}

StateVector inserted_state(const AnsatzCircuit &a, const ParamVector &theta, const Insertion &ins,
                           std::size_t stop) {
    StateVector s = basis_state(a.n_qubits(), a.initial_bits());
    run_gates(s, a, theta, 0, ins.gate, false);
    s = apply_pauli_string(s, insertion_term(a, ins).sigma);
    run_gates(s, a, theta, ins.gate, stop, false);
    return s;
}

}  // namespace

double hadamard_test(const AnsatzCircuit &a, const ParamVector &theta, const OverlapTerm &term) {
    a.check_params(theta);
    Insertion first = term.bra;
    Insertion second = term.ket;
    double phase = term.phase;
    // Re(e^{ip}<x|y>) = Re(e^{-ip}<y|x>), so the earlier insertion can always
    // sit on the anti-controlled branch.
    if (first.gate > second.gate) {
        std::swap(first, second);
        phase = -phase;
    }
    const PauliString sigma_first = insertion_term(a, first).sigma;
    const PauliString sigma_second = insertion_term(a, second).sigma;

    StateVector s = ancilla_start(a, phase);
    run_gates(s, a, theta, 0, first.gate, true);
    anti_controlled(s, sigma_first);
    run_gates(s, a, theta, first.gate, second.gate, true);
    apply_gate_in_place(s, GateOp::pauli_string(shift(sigma_second), 0));
    apply_gate_in_place(s, GateOp::h(0));
    return ancilla_z(s);
}

double hadamard_test(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h,
                     const EnergyTerm &term) {
    a.check_params(theta);
    if (term.hamiltonian_term >= h.terms().size()) {
        throw std::out_of_range("Hamiltonian term index out of range");
    }
    StateVector s = ancilla_start(a, term.phase);
    run_gates(s, a, theta, 0, term.bra.gate, true);
    anti_controlled(s, insertion_term(a, term.bra).sigma);
    run_gates(s, a, theta, term.bra.gate, a.gate_count(), true);
    apply_gate_in_place(s, GateOp::pauli_string(shift(h.terms()[term.hamiltonian_term].string), 0));
    apply_gate_in_place(s, GateOp::h(0));
    return ancilla_z(s);
}

double direct_overlap(const AnsatzCircuit &a, const ParamVector &theta, const OverlapTerm &term) {
    a.check_params(theta);
    const auto bra = inserted_state(a, theta, term.bra, a.gate_count());
    const auto ket = inserted_state(a, theta, term.ket, a.gate_count());
    return (std::polar(1.0, term.phase) * inner_product(bra, ket)).real();
}

double direct_overlap(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h,
                      const EnergyTerm &term) {
    a.check_params(theta);
    if (term.hamiltonian_term >= h.terms().size()) {
        throw std::out_of_range("Hamiltonian term index out of range");
    }
    const auto bra = inserted_state(a, theta, term.bra, a.gate_count());
    const auto ket = apply_pauli_string(prepare_state(a, theta), h.terms()[term.hamiltonian_term].string);
    return (std::polar(1.0, term.phase) * inner_product(bra, ket)).real();
}

namespace {

struct WeightedInsertion {
    Insertion ins;
    Complex factor;
};

std::vector<WeightedInsertion> insertions_of(const AnsatzCircuit &a, int param) {
    std::vector<WeightedInsertion> out;
    for (std::size_t g : a.bindings(param)) {
        const auto rule = derivative_rule(a.gates()[g].op);
        for (std::size_t k = 0; k < rule.size(); ++k) {
            out.push_back({{g, k}, rule[k].factor});
        }
    }
    return out;
}

}  // namespace

AMatrix a_matrix_by_hadamard(const AnsatzCircuit &a, const ParamVector &theta) {
    const int n = a.n_params();
    AMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        const auto left = insertions_of(a, i);
        for (int j = i; j < n; ++j) {
            const auto right = insertions_of(a, j);
            double acc = 0.0;
            for (const auto &l : left) {
                for (const auto &r : right) {
                    const Complex w = std::conj(l.factor) * r.factor;
                    acc += std::abs(w) * hadamard_test(a, theta, OverlapTerm{l.ins, r.ins, std::arg(w)});
                }
            }
            out(i, j) = acc;
            out(j, i) = acc;
        }
    }
    return out;
}

CVector c_vector_by_hadamard(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h) {
    const int n = a.n_params();
    CVector out(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto &l : insertions_of(a, i)) {
            for (std::size_t t = 0; t < h.terms().size(); ++t) {
                const Complex w = -std::conj(l.factor) * h.terms()[t].coefficient;
                acc += std::abs(w) * hadamard_test(a, theta, h, EnergyTerm{l.ins, t, std::arg(w)});
            }
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace varqite
