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

// Dense linear-algebra ground truth. Everything here assembles explicit
// 2^n x 2^n matrices by Kronecker products and diagonalises them, so it is
// independent of the bit-mask kernels used by the engine.

#include <Eigen/Dense>

#include "varqite/ansatz.hpp"
#include "varqite/pauli.hpp"
#include "varqite/statevector.hpp"

namespace varqite {

using DenseHermitian = Eigen::MatrixXcd;

inline constexpr int kOracleMaxQubits = 12;

DenseHermitian dense_matrix(const Hamiltonian &h);
/// Kronecker product of 2x2 Paulis, qubit 0 leftmost.
Eigen::MatrixXcd dense_pauli(const PauliString &p, int n_qubits);

struct GroundState {
    double energy = 0.0;
    StateVector state;
    bool degenerate = false;
    /// Dimension of the eigenspace within kDegeneracyTol of the minimum.
    int degeneracy = 1;
};

inline constexpr double kDegeneracyTol = 1e-9;

GroundState ground_state(const Hamiltonian &h);

/// Caches the eigendecomposition of H for repeated propagation of one initial state.
class ImaginaryTimePropagator {
   public:
    ImaginaryTimePropagator(const Hamiltonian &h, const StateVector &psi0);

    /// A(tau) e^{-H tau} psi0 with A(tau) = <psi0|e^{-2 H tau}|psi0>^{-1/2}.
    StateVector evolve(double tau) const;
    /// Projector of the lowest eigenspace applied to psi, squared norm.
    double ground_space_weight(const StateVector &psi) const;
    double ground_energy() const { return eigenvalues_[0]; }

   private:
    int n_qubits_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
    Eigen::VectorXcd overlaps_;  // <v_k|psi0>
};

StateVector exact_imag_evolve(const Hamiltonian &h, const StateVector &psi0, double tau);

/// |<a|b>|^2
double fidelity(const StateVector &a, const StateVector &b);

/// Central differences of E(theta) = <phi(theta)|H|phi(theta)>.
Eigen::VectorXd finite_diff_gradient(const AnsatzCircuit &a, const Hamiltonian &h, const ParamVector &theta,
                                     double step);

}  // namespace varqite
