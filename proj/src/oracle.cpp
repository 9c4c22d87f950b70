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

#include "varqite/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace varqite {

namespace {

void guard_size(int n) {
    if (n > kOracleMaxQubits) {
        throw std::invalid_argument("dense oracle limited to " + std::to_string(kOracleMaxQubits) + " qubits, got " +
                                    std::to_string(n));
    }
}

Eigen::Matrix2cd pauli_2x2(std::optional<PauliAxis> a) {
    const Complex i{0, 1};
    Eigen::Matrix2cd m;
    if (!a) {
        m << 1, 0, 0, 1;
        return m;
    }
    switch (*a) {
        case PauliAxis::X:
            m << 0, 1, 1, 0;
            break;
        case PauliAxis::Y:
            m << 0, -i, i, 0;
            break;
        case PauliAxis::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

StateVector to_state(int n, const Eigen::VectorXcd &v) {
    return StateVector(n, std::vector<Complex>(v.data(), v.data() + v.size()));
}

Eigen::VectorXcd to_eigen(const StateVector &s) {
    return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

}  // namespace

Eigen::MatrixXcd dense_pauli(const PauliString &p, int n_qubits) {
    guard_size(n_qubits);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
        auto it = p.ops().find(q);
        m = kron(m, pauli_2x2(it == p.ops().end() ? std::nullopt : std::optional{it->second}));
    }
    return m;
}

DenseHermitian dense_matrix(const Hamiltonian &h) {
    guard_size(h.n_qubits());
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
    DenseHermitian m = DenseHermitian::Zero(dim, dim);
    for (const auto &t : h.terms()) {
        m += t.coefficient * dense_pauli(t.string, h.n_qubits());
    }
    return m;
}

GroundState ground_state(const Hamiltonian &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigensolver failed");
    }
    const auto &ev = es.eigenvalues();
    int deg = 1;
    while (deg < ev.size() && ev[deg] - ev[0] < kDegeneracyTol) {
        ++deg;
    }
    return {ev[0], to_state(h.n_qubits(), es.eigenvectors().col(0)), deg > 1, deg};
}

ImaginaryTimePropagator::ImaginaryTimePropagator(const Hamiltonian &h, const StateVector &psi0)
    : n_qubits_(h.n_qubits()) {
    if (psi0.n_qubits() != h.n_qubits()) {
        throw std::invalid_argument("initial state and Hamiltonian qubit counts differ");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigensolver failed");
    }
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    overlaps_ = eigenvectors_.adjoint() * to_eigen(psi0);
}

StateVector ImaginaryTimePropagator::evolve(double tau) const {
    if (tau < 0) {
        throw std::invalid_argument("imaginary time must be non-negative");
    }
    // Shifted by the ground energy; a psi0 with no weight on low states can underflow.
    const double shift = eigenvalues_[0];
    Eigen::VectorXcd w(overlaps_.size());
    double norm2 = 0.0;
    for (Eigen::Index k = 0; k < overlaps_.size(); ++k) {
        w[k] = overlaps_[k] * std::exp(-(eigenvalues_[k] - shift) * tau);
        norm2 += std::norm(w[k]);
    }
    if (!(norm2 > 1e-300)) {
        throw std::runtime_error("imaginary-time propagated state has vanishing norm");
    }
    Eigen::VectorXcd out = eigenvectors_ * w / std::sqrt(norm2);
    return to_state(n_qubits_, out);
}

double ImaginaryTimePropagator::ground_space_weight(const StateVector &psi) const {
    const Eigen::VectorXcd v = to_eigen(psi);
    double w = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues_.size() && eigenvalues_[k] - eigenvalues_[0] < kDegeneracyTol; ++k) {
        w += std::norm(eigenvectors_.col(k).dot(v));
    }
    return w;
}

StateVector exact_imag_evolve(const Hamiltonian &h, const StateVector &psi0, double tau) {
    return ImaginaryTimePropagator(h, psi0).evolve(tau);
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("fidelity of states with different qubit counts");
    }
    Complex acc{};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        acc += std::conj(a[k]) * b[k];
    }
    return std::min(1.0, std::norm(acc));
}

Eigen::VectorXd finite_diff_gradient(const AnsatzCircuit &a, const Hamiltonian &h, const ParamVector &theta,
                                     double step) {
    if (!(step > 0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    Eigen::VectorXd grad(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        ParamVector plus = theta;
        ParamVector minus = theta;
        plus[i] += step;
        minus[i] -= step;
        grad[i] = (expectation(prepare_state(a, plus), h) - expectation(prepare_state(a, minus), h)) / (2 * step);
    }
    return grad;
}

}  // namespace varqite
