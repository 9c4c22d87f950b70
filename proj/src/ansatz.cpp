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

#include "varqite/ansatz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace varqite {

std::vector<DerivativeTerm> derivative_rule(const GateOp &gate) {
    const Complex i{0, 1};
    switch (gate.kind) {
        case GateKind::RX:
            return {{-0.5 * i, PauliString({{gate.qubits[0], PauliAxis::X}})}};
        case GateKind::RY:
            return {{-0.5 * i, PauliString({{gate.qubits[0], PauliAxis::Y}})}};
        case GateKind::RZ:
            return {{-0.5 * i, PauliString({{gate.qubits[0], PauliAxis::Z}})}};
        case GateKind::CRY: {
            const int c = gate.qubits[0];
            const int t = gate.qubits[1];
            return {{-0.25 * i, PauliString({{t, PauliAxis::Y}})},
                    {0.25 * i, PauliString({{c, PauliAxis::Z}, {t, PauliAxis::Y}})}};
        }
        case GateKind::GlobalPhase:
            return {{i, PauliString{}}};
        case GateKind::PauliExp:
            return {{i, PauliString({{gate.qubits[0], gate.axes[0]}, {gate.qubits[1], gate.axes[1]}})}};
        default:
            throw std::invalid_argument(std::string(gate_kind_name(gate.kind)) + " has no parameter derivative");
    }
}

AnsatzCircuit::AnsatzCircuit(int n_qubits, std::string initial_bits, std::vector<AnsatzGate> gates, int n_params)
    : n_qubits_(n_qubits),
      initial_bits_(std::move(initial_bits)),
      gates_(std::move(gates)),
      n_params_(n_params),
      bindings_(static_cast<std::size_t>(std::max(n_params, 0))) {
    if (initial_bits_.size() != static_cast<std::size_t>(n_qubits)) {
        throw std::invalid_argument("initial bitstring length does not match qubit count");
    }
    if (n_params < 0) {
        throw std::invalid_argument("negative parameter count");
    }
    for (std::size_t g = 0; g < gates_.size(); ++g) {
        const auto &ag = gates_[g];
        validate_gate(ag.op, n_qubits);
        if (!ag.binding.param) {
            continue;
        }
        const int p = *ag.binding.param;
        if (p < 0 || p >= n_params) {
            throw std::invalid_argument("gate " + std::to_string(g) + " binds parameter " + std::to_string(p) +
                                        " outside 0.." + std::to_string(n_params - 1));
        }
        if (!ag.op.parametrised()) {
            throw std::invalid_argument("gate " + std::to_string(g) + " (" + std::string(gate_kind_name(ag.op.kind)) +
                                        ") cannot bind a parameter");
        }
        bindings_[static_cast<std::size_t>(p)].push_back(g);
    }
    for (int p = 0; p < n_params; ++p) {
        if (bindings_[static_cast<std::size_t>(p)].empty()) {
            throw std::invalid_argument("parameter " + std::to_string(p) + " is not bound to any gate");
        }
    }
}

GateOp AnsatzCircuit::resolved(std::size_t g, const ParamVector &theta) const {
    const auto &ag = gates_.at(g);
    if (!ag.op.parametrised()) {
        return ag.op;
    }
    return ag.op.with_angle(ag.binding.param ? theta[*ag.binding.param] : ag.binding.constant);
}

double AnsatzCircuit::tangent_bound(int param) const {
    double bound = 0.0;
    for (std::size_t g : bindings(param)) {
        for (const auto &term : derivative_rule(gates_[g].op)) {
            bound += std::abs(term.factor);
        }
    }
    return bound;
}

void AnsatzCircuit::check_params(const ParamVector &theta) const {
    if (theta.size() != n_params_) {
        throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) + ", ansatz needs " +
                                    std::to_string(n_params_));
    }
    if (!theta.allFinite()) {
        throw std::invalid_argument("parameter vector has non-finite entries");
    }
}

namespace {

int option_int(const AnsatzOptions &opts, const std::string &key, int fallback) {
    auto it = opts.find(key);
    if (it == opts.end()) {
        return fallback;
    }
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) {
        throw std::invalid_argument("ansatz option " + key + " is not an integer: " + it->second);
    }
    return v;
}

void reject_unknown(const AnsatzOptions &opts, std::initializer_list<std::string> allowed, const std::string &name) {
    for (const auto &[k, _] : opts) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            throw std::invalid_argument("ansatz '" + name + "' has no option '" + k + "'");
        }
    }
}

AnsatzGate bound(GateOp op, int param) { return {std::move(op), {param, 0.0}}; }
AnsatzGate fixed(GateOp op) { return {std::move(op), {}}; }

AnsatzCircuit h2_universal() {
    // RY,RZ on each wire, CNOT (wire 0 controls wire 1), RY,RZ on each wire.
    std::vector<AnsatzGate> g;
    g.push_back(bound(GateOp::ry(0, 0), 0));
    g.push_back(bound(GateOp::rz(0, 0), 1));
    g.push_back(bound(GateOp::ry(1, 0), 2));
    g.push_back(bound(GateOp::rz(1, 0), 3));
    g.push_back(fixed(GateOp::cnot(0, 1)));
    g.push_back(bound(GateOp::ry(0, 0), 4));
    g.push_back(bound(GateOp::rz(0, 0), 5));
    g.push_back(bound(GateOp::ry(1, 0), 6));
    g.push_back(bound(GateOp::rz(1, 0), 7));
    return AnsatzCircuit(2, "00", std::move(g), 8);
}

AnsatzCircuit toy_a() {
    std::vector<AnsatzGate> g;
    g.push_back(bound(GateOp::rx(0, 0), 0));
    g.push_back(bound(GateOp::cry(0, 1, 0), 1));
    g.push_back(bound(GateOp::global_phase(0), 2));
    return AnsatzCircuit(2, "00", std::move(g), 3);
}

AnsatzCircuit toy_b() {
    std::vector<AnsatzGate> g;
    g.push_back(bound(GateOp::rx(0, 0), 0));
    g.push_back(bound(GateOp::rx(1, 0), 0));
    g.push_back(bound(GateOp::cry(0, 1, 0), 1));
    g.push_back(bound(GateOp::global_phase(0), 2));
    return AnsatzCircuit(2, "01", std::move(g), 3);
}

AnsatzCircuit ldca(int n, int depth, std::string bits) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("ldca needs an even qubit count >= 2, got " + std::to_string(n));
    }
    if (depth < 1) {
        throw std::invalid_argument("ldca depth must be >= 1");
    }
    if (bits.empty()) {
        bits.assign(static_cast<std::size_t>(n), '0');
    }
    if (bits.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("ldca bitstring length " + std::to_string(bits.size()) + " does not match n = " +
                                    std::to_string(n));
    }
    std::vector<AnsatzGate> g;
    int p = 0;
    for (int q = 0; q < n; ++q) {
        g.push_back(bound(GateOp::rz(q, 0), p++));
        g.push_back(bound(GateOp::ry(q, 0), p++));
        g.push_back(bound(GateOp::rx(q, 0), p++));
        g.push_back(bound(GateOp::rz(q, 0), p++));
    }
    // U = e^{i a YX} e^{i b XY} e^{i c ZZ} e^{i d YY} e^{i e XX}; rightmost factor acts first.
    using enum PauliAxis;
    const std::array<std::array<PauliAxis, 2>, 5> order{{{X, X}, {Y, Y}, {Z, Z}, {X, Y}, {Y, X}}};
    auto add_block = [&](int q) {
        for (const auto &ax : order) {
            g.push_back(bound(GateOp::pauli_exp(q, ax[0], q + 1, ax[1], 0), p++));
        }
    };
    for (int m = 0; m < depth; ++m) {
        for (int q = 0; q + 1 < n; q += 2) {
            add_block(q);
        }
        for (int q = 1; q + 1 < n; q += 2) {
            add_block(q);
        }
    }
    return AnsatzCircuit(n, std::move(bits), std::move(g), p);
}

}  // namespace

int ldca_param_count(int n_qubits, int depth) { return 5 * depth * (n_qubits - 1) + 4 * n_qubits; }

AnsatzCircuit builtin_ansatz(const std::string &name, const AnsatzOptions &options) {
    if (name == "h2-universal") {
        reject_unknown(options, {}, name);
        return h2_universal();
    }
    if (name == "toy-a") {
        reject_unknown(options, {}, name);
        return toy_a();
    }
    if (name == "toy-b") {
        reject_unknown(options, {}, name);
        return toy_b();
    }
    if (name == "ldca") {
        reject_unknown(options, {"n", "depth", "bits"}, name);
        auto bits = options.contains("bits") ? options.at("bits") : std::string{};
        return ldca(option_int(options, "n", 8), option_int(options, "depth", 3), std::move(bits));
    }
    throw std::invalid_argument("unknown ansatz '" + name + "'");
}

std::vector<std::string> builtin_ansatz_names() { return {"h2-universal", "toy-a", "toy-b", "ldca"}; }

StateVector prepare_state(const AnsatzCircuit &a, const ParamVector &theta) {
    a.check_params(theta);
    StateVector psi = basis_state(a.n_qubits(), a.initial_bits());
    for (std::size_t g = 0; g < a.gate_count(); ++g) {
        apply_gate_in_place(psi, a.resolved(g, theta));
    }
    return psi;
}

namespace {

// Adds f * (gates g..end) sigma |prefix> into acc.
void accumulate_insertion(const AnsatzCircuit &a, const ParamVector &theta, const StateVector &prefix,
                          std::size_t g, const DerivativeTerm &term, std::vector<Complex> &acc) {
    StateVector s = apply_pauli_string(prefix, term.sigma);
    for (std::size_t h = g; h < a.gate_count(); ++h) {
        apply_gate_in_place(s, a.resolved(h, theta));
    }
    const auto amps = s.amplitudes();
    for (std::size_t k = 0; k < acc.size(); ++k) {
        acc[k] += term.factor * amps[k];
    }
}

}  // namespace

StateVector derivative_state(const AnsatzCircuit &a, const ParamVector &theta, int i) {
    a.check_params(theta);
    if (i < 0 || i >= a.n_params()) {
        throw std::out_of_range("parameter index " + std::to_string(i) + " out of range");
    }
    std::vector<Complex> acc(std::size_t{1} << a.n_qubits());
    StateVector prefix = basis_state(a.n_qubits(), a.initial_bits());
    std::size_t next = 0;
    for (std::size_t g : a.bindings(i)) {
        for (; next < g; ++next) {
            apply_gate_in_place(prefix, a.resolved(next, theta));
        }
        for (const auto &term : derivative_rule(a.gates()[g].op)) {
            accumulate_insertion(a, theta, prefix, g, term, acc);
        }
    }
    return StateVector(a.n_qubits(), std::move(acc), false);
}

std::vector<StateVector> tangent_states(const AnsatzCircuit &a, const ParamVector &theta) {
    a.check_params(theta);
    const std::size_t n_gates = a.gate_count();
    // prefixes[g] = state before gate g, kept only for bound gates.
    std::vector<std::optional<StateVector>> prefixes(n_gates);
    StateVector psi = basis_state(a.n_qubits(), a.initial_bits());
    for (std::size_t g = 0; g < n_gates; ++g) {
        if (a.gates()[g].binding.param) {
            prefixes[g] = psi;
        }
        apply_gate_in_place(psi, a.resolved(g, theta));
    }
    const int n_params = a.n_params();
    const std::size_t dim = psi.dim();
    std::vector<std::vector<Complex>> acc(static_cast<std::size_t>(n_params), std::vector<Complex>(dim));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_params; ++i) {
        for (std::size_t g : a.bindings(i)) {
            for (const auto &term : derivative_rule(a.gates()[g].op)) {
                accumulate_insertion(a, theta, *prefixes[g], g, term, acc[static_cast<std::size_t>(i)]);
            }
        }
    }
    std::vector<StateVector> out;
    out.reserve(acc.size());
    for (auto &v : acc) {
        out.emplace_back(a.n_qubits(), std::move(v), false);
    }
    return out;
}

}  // namespace varqite
