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
#include <bit>
#include <cmath>
#include <vector>

namespace varqite::kernels::omp {

namespace {

// Below this many amplitudes the fork/join overhead dominates.
constexpr std::int64_t kParallelMin = std::int64_t{1} << 12;

inline std::uint64_t insert_zero_bit(std::uint64_t k, int pos) {
    const std::uint64_t low = k & ((std::uint64_t{1} << pos) - 1);
    return ((k >> pos) << (pos + 1)) | low;
}

}  // namespace

void apply_1q(std::span<Complex> amps, int n_qubits, int target, const Mat2 &m, std::uint64_t ctrl_mask) {
    const int pos = n_qubits - 1 - target;
    const std::uint64_t bit = std::uint64_t{1} << pos;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    Complex *a = amps.data();
#pragma omp parallel for schedule(static) if (half >= kParallelMin)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), pos);
        if ((i0 & ctrl_mask) != ctrl_mask) {
            continue;
        }
        const std::uint64_t i1 = i0 | bit;
        const Complex a0 = a[i0];
        const Complex a1 = a[i1];
        a[i0] = m[0] * a0 + m[1] * a1;
        a[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_pauli(std::span<const Complex> in, std::span<Complex> out, const PauliMasks &p, std::uint64_t ctrl_mask) {
    const auto dim = static_cast<std::int64_t>(in.size());
    const Complex *src = in.data();
    Complex *dst = out.data();
    // Gather form: each output index reads exactly one input index.
#pragma omp parallel for schedule(static) if (dim >= kParallelMin)
    for (std::int64_t j = 0; j < dim; ++j) {
        const std::uint64_t k = static_cast<std::uint64_t>(j) ^ p.x;
        if ((k & ctrl_mask) == ctrl_mask) {
            dst[j] = pauli_phase(p, k) * src[k];
        } else {
            dst[j] = src[j];
        }
    }
}

void apply_pauli_exp(std::span<Complex> amps, const PauliMasks &p, double theta) {
    const double c = std::cos(theta);
    const Complex is{0.0, std::sin(theta)};
    const auto dim = static_cast<std::int64_t>(amps.size());
    Complex *a = amps.data();
    if (p.x == 0) {
#pragma omp parallel for schedule(static) if (dim >= kParallelMin)
        for (std::int64_t k = 0; k < dim; ++k) {
            a[k] *= c + is * pauli_phase(p, static_cast<std::uint64_t>(k));
        }
        return;
    }
    // Pair each index with its partner k ^ x; visit each pair once via its lower member.
    const int top = 63 - std::countl_zero(p.x);
    const auto half = dim / 2;
#pragma omp parallel for schedule(static) if (half >= kParallelMin)
    for (std::int64_t h = 0; h < half; ++h) {
        const std::uint64_t k = insert_zero_bit(static_cast<std::uint64_t>(h), top);
        const std::uint64_t j = k ^ p.x;
        const Complex ak = a[k];
        const Complex aj = a[j];
        a[k] = c * ak + is * pauli_phase(p, j) * aj;
        a[j] = c * aj + is * pauli_phase(p, k) * ak;
    }
}

void scale(std::span<Complex> amps, Complex factor) {
    const auto dim = static_cast<std::int64_t>(amps.size());
    Complex *a = amps.data();
#pragma omp parallel for schedule(static) if (dim >= kParallelMin)
    for (std::int64_t k = 0; k < dim; ++k) {
        a[k] *= factor;
    }
}

namespace {

template <class BlockFn>
Complex blocked_sum(std::size_t dim, BlockFn &&block_fn) {
    const auto n_blocks = static_cast<std::int64_t>((dim + kReduceBlock - 1) / kReduceBlock);
    if (n_blocks <= 1) {
        return block_fn(std::size_t{0}, dim);
    }
    std::vector<Complex> partial(static_cast<std::size_t>(n_blocks));
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(dim) >= kParallelMin)
    for (std::int64_t b = 0; b < n_blocks; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
        partial[static_cast<std::size_t>(b)] = block_fn(lo, std::min(dim, lo + kReduceBlock));
    }
    Complex acc{};
    for (const auto &v : partial) {
        acc += v;
    }
    return acc;
}

}  // namespace

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
    return blocked_sum(bra.size(), [&](std::size_t lo, std::size_t hi) {
        Complex acc{};
        for (std::size_t k = lo; k < hi; ++k) {
            acc += std::conj(bra[k]) * ket[k];
        }
        return acc;
    });
}

Complex pauli_expectation(std::span<const Complex> psi, const PauliMasks &p) {
    return blocked_sum(psi.size(), [&](std::size_t lo, std::size_t hi) {
        Complex acc{};
        for (std::uint64_t k = lo; k < hi; ++k) {
            acc += std::conj(psi[k ^ p.x]) * pauli_phase(p, k) * psi[k];
        }
        return acc;
    });
}

void apply_weighted_paulis(std::span<const Complex> in, std::span<Complex> out, std::span<const WeightedPauli> terms) {
    const auto dim = static_cast<std::int64_t>(in.size());
    const Complex *src = in.data();
    Complex *dst = out.data();
    std::vector<Complex> scaled(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
        scaled[t] = terms[t].weight * i_pow(terms[t].masks.y);
    }
    // Aligned power-of-two blocks: j ^ x maps a block onto another whole block, so
    // each term streams through contiguous memory.
    const std::int64_t block = std::min<std::int64_t>(dim, kReduceBlock);
#pragma omp parallel for schedule(static) if (dim >= kParallelMin)
    for (std::int64_t b = 0; b < dim; b += block) {
        Complex *o = dst + b;
        std::fill(o, o + block, Complex{});
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const auto &m = terms[t].masks;
            const Complex w = scaled[t];
            for (std::int64_t j = b; j < b + block; ++j) {
                const std::uint64_t k = static_cast<std::uint64_t>(j) ^ m.x;
                o[j - b] += (std::popcount(k & m.z) & 1) ? -w * src[k] : w * src[k];
            }
        }
    }
}

}  // namespace varqite::kernels::omp
