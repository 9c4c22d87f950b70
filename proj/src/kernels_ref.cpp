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

#include "varqite/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace varqite::kernels::ref {

void apply_1q(std::span<Complex> amps, int n_qubits, int target, const Mat2 &m, std::uint64_t ctrl_mask) {
    const std::uint64_t bit = std::uint64_t{1} << (n_qubits - 1 - target);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) || (i & ctrl_mask) != ctrl_mask) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_pauli(std::span<const Complex> in, std::span<Complex> out, const PauliMasks &p, std::uint64_t ctrl_mask) {
    for (std::uint64_t k = 0; k < in.size(); ++k) {
        if ((k & ctrl_mask) == ctrl_mask) {
            out[k ^ p.x] = pauli_phase(p, k) * in[k];
        } else {
            out[k] = in[k];
        }
    }
}

void apply_pauli_exp(std::span<Complex> amps, const PauliMasks &p, double theta) {
    const double c = std::cos(theta);
    const Complex is{0.0, std::sin(theta)};
    std::vector<Complex> rotated(amps.size());
    apply_pauli(amps, rotated, p);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        amps[k] = c * amps[k] + is * rotated[k];
    }
}

void scale(std::span<Complex> amps, Complex factor) {
    for (auto &a : amps) {
        a *= factor;
    }
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
    Complex acc{};
    for (std::size_t k = 0; k < bra.size(); ++k) {
        acc += std::conj(bra[k]) * ket[k];
    }
    return acc;
}

Complex pauli_expectation(std::span<const Complex> psi, const PauliMasks &p) {
    Complex acc{};
    for (std::uint64_t k = 0; k < psi.size(); ++k) {
        acc += std::conj(psi[k ^ p.x]) * pauli_phase(p, k) * psi[k];
    }
    return acc;
}

void apply_weighted_paulis(std::span<const Complex> in, std::span<Complex> out, std::span<const WeightedPauli> terms) {
    std::fill(out.begin(), out.end(), Complex{});
    for (const auto &t : terms) {
        for (std::uint64_t k = 0; k < in.size(); ++k) {
            out[k ^ t.masks.x] += t.weight * pauli_phase(t.masks, k) * in[k];
        }
    }
}

}  // namespace varqite::kernels::ref
