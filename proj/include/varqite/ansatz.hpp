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

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varqite/statevector.hpp"

namespace varqite {

using ParamVector = Eigen::VectorXd;

/// Gate angle source: a parameter index, or a fixed constant when unset.
struct ParamBinding {
    std::optional<int> param;
    double constant = 0.0;
};

struct AnsatzGate {
    GateOp op;
    ParamBinding binding;
};

/// One term of dU/dtheta = sum_k f_k U sigma_k. The Pauli insertion sigma_k
/// commutes with U for every supported kind, so its placement is immaterial;
/// it is applied immediately before the gate.
struct DerivativeTerm {
    Complex factor;
    PauliString sigma;
};

/// Rules: rotations f = -i/2, sigma = axis; cry f = (-i/4, +i/4) with
/// sigma = (I (x) Y, Z (x) Y) on (control, target); global-phase f = i, sigma = I;
/// pauli-exp f = i, sigma = the Pauli pair.
std::vector<DerivativeTerm> derivative_rule(const GateOp &gate);

class AnsatzCircuit {
   public:
    AnsatzCircuit(int n_qubits, std::string initial_bits, std::vector<AnsatzGate> gates, int n_params);

    int n_qubits() const { return n_qubits_; }
    const std::string &initial_bits() const { return initial_bits_; }
    const std::vector<AnsatzGate> &gates() const { return gates_; }
    int n_params() const { return n_params_; }
    std::size_t gate_count() const { return gates_.size(); }

    /// Gate indices bound to parameter i, in circuit order.
    const std::vector<std::size_t> &bindings(int param) const { return bindings_.at(param); }

    /// Gate g with its angle resolved against theta.
    GateOp resolved(std::size_t g, const ParamVector &theta) const;

    /// Upper bound on |<v|d_i phi>| for unit v: sum of |f_k| over every
    /// insertion term of every gate bound to parameter i.
    double tangent_bound(int param) const;

    void check_params(const ParamVector &theta) const;

   private:
    int n_qubits_;
    std::string initial_bits_;
    std::vector<AnsatzGate> gates_;
    int n_params_;
    std::vector<std::vector<std::size_t>> bindings_;
};

using AnsatzOptions = std::map<std::string, std::string>;

/// Names: "h2-universal", "toy-a", "toy-b", "ldca" (options n, depth, bits).
AnsatzCircuit builtin_ansatz(const std::string &name, const AnsatzOptions &options = {});
std::vector<std::string> builtin_ansatz_names();

/// Parameter count of the ldca layout: 5 depth (n - 1) + 4 n.
int ldca_param_count(int n_qubits, int depth);

StateVector prepare_state(const AnsatzCircuit &a, const ParamVector &theta);

/// d|phi>/d theta_i by the product rule over every gate bound to i.
StateVector derivative_state(const AnsatzCircuit &a, const ParamVector &theta, int i);

/// All tangent vectors at once, reusing the forward prefix states.
std::vector<StateVector> tangent_states(const AnsatzCircuit &a, const ParamVector &theta);

}  // namespace varqite
