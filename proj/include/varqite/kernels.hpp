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

// Statevector kernels. Two implementations share every signature:
//   kernels::ref  - plain serial loops, kept as the reference for testing
//   kernels::omp  - OpenMP data-parallel loops used by the engine
// Amplitude index convention: qubit q lives at bit (n - 1 - q).
// Reductions in kernels::omp use a fixed block decomposition so results are
// bitwise identical for any thread count.

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace varqite::kernels {

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;  // row-major

/// Pauli operator compiled to masks: (P psi)[k ^ x] = i^y (-1)^popcount(k & z) psi[k].
struct PauliMasks {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int y = 0;
};

struct WeightedPauli {
    double weight = 0.0;
    PauliMasks masks;
};

inline Complex i_pow(int y) {
    switch (y & 3) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

/// i^y (-1)^popcount(k & z)
inline Complex pauli_phase(const PauliMasks &p, std::uint64_t k) {
    const Complex base = i_pow(p.y);
    return (std::popcount(k & p.z) & 1) ? -base : base;
}

/// Block length for deterministic reductions.
inline constexpr std::size_t kReduceBlock = 1024;

// Declared once, instantiated in both namespaces below.
//   apply_1q:  amps <- m on target, only where every ctrl_mask bit is set
//   apply_pauli: out <- P in where ctrl_mask bits are set, out <- in elsewhere
//   apply_pauli_exp: amps <- exp(i theta P) amps
//   inner_product: sum_k conj(bra_k) ket_k
//   pauli_expectation: <psi|P|psi>
//   apply_weighted_paulis: out <- sum_a w_a P_a in
#define VARQITE_KERNEL_DECLS                                                                                   \
    void apply_1q(std::span<Complex> amps, int n_qubits, int target, const Mat2 &m,                           \
                  std::uint64_t ctrl_mask = 0);                                                               \
    void apply_pauli(std::span<const Complex> in, std::span<Complex> out, const PauliMasks &p,                \
                     std::uint64_t ctrl_mask = 0);                                                            \
    void apply_pauli_exp(std::span<Complex> amps, const PauliMasks &p, double theta);                         \
    void scale(std::span<Complex> amps, Complex factor);                                                      \
    Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);                        \
    Complex pauli_expectation(std::span<const Complex> psi, const PauliMasks &p);                             \
    void apply_weighted_paulis(std::span<const Complex> in, std::span<Complex> out,                           \
                               std::span<const WeightedPauli> terms);

namespace ref {
VARQITE_KERNEL_DECLS
}  // namespace ref

namespace omp {
VARQITE_KERNEL_DECLS
}  // namespace omp

#undef VARQITE_KERNEL_DECLS

}  // namespace varqite::kernels
