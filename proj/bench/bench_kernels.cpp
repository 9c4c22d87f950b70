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


// Serial reference kernels against their OpenMP counterparts, plus one full
// tangent-space assembly on the 8-qubit ladder ansatz.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "varqite/ansatz.hpp"
#include "varqite/engine.hpp"
#include "varqite/kernels.hpp"

namespace k = varqite::kernels;

namespace {

std::vector<k::Complex> random_amps(int n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> g;
    std::vector<k::Complex> v(std::size_t{1} << n);
    for (auto &z : v) {
        z = {g(rng), g(rng)};
    }
    return v;
}

const k::Mat2 kHadamardLike{k::Complex(0.6, 0), k::Complex(0.8, 0), k::Complex(0.8, 0), k::Complex(-0.6, 0)};
const k::PauliMasks kPauli{0b1011, 0b0110, 1};

template <auto Apply>
void bm_apply_1q(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto amps = random_amps(n);
    for (auto _ : state) {
        Apply(amps, n, n / 2, kHadamardLike, 0);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <auto Apply>
void bm_pauli_exp(benchmark::State &state) {
    auto amps = random_amps(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Apply(amps, kPauli, 0.3);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <auto Dot>
void bm_inner_product(benchmark::State &state) {
    const auto a = random_amps(static_cast<int>(state.range(0)));
    const auto b = random_amps(static_cast<int>(state.range(0)) + 1);
    const std::span<const k::Complex> bs(b.data(), a.size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(Dot(a, bs));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

template <auto Apply>
void bm_weighted_paulis(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto in = random_amps(n);
    std::vector<k::Complex> out(in.size());
    std::vector<k::WeightedPauli> terms;
    for (int t = 0; t < 20; ++t) {
        const std::uint64_t x = (std::uint64_t{0x9E37} * (t + 1)) & ((std::uint64_t{1} << n) - 1);
        const std::uint64_t z = (std::uint64_t{0x7F4A} * (t + 3)) & ((std::uint64_t{1} << n) - 1);
        terms.push_back({0.1 * t, {x, z, std::popcount(x & z)}});
    }
    for (auto _ : state) {
        Apply(in, out, terms);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()) * 20);
}

void bm_ldca_tangents(benchmark::State &state) {
    const auto a = varqite::builtin_ansatz("ldca", {{"n", "8"}, {"depth", "3"}, {"bits", "11000000"}});
    varqite::ParamVector theta = varqite::ParamVector::LinSpaced(a.n_params(), 0.1, 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(varqite::compute_a_matrix(a, theta));
    }
}

}  // namespace

BENCHMARK(bm_apply_1q<k::ref::apply_1q>)->Name("apply_1q/ref")->DenseRange(12, 22, 5);
BENCHMARK(bm_apply_1q<k::omp::apply_1q>)->Name("apply_1q/omp")->DenseRange(12, 22, 5);
BENCHMARK(bm_pauli_exp<k::ref::apply_pauli_exp>)->Name("pauli_exp/ref")->DenseRange(12, 22, 5);
BENCHMARK(bm_pauli_exp<k::omp::apply_pauli_exp>)->Name("pauli_exp/omp")->DenseRange(12, 22, 5);
BENCHMARK(bm_inner_product<k::ref::inner_product>)->Name("inner_product/ref")->DenseRange(12, 22, 5);
BENCHMARK(bm_inner_product<k::omp::inner_product>)->Name("inner_product/omp")->DenseRange(12, 22, 5);
BENCHMARK(bm_weighted_paulis<k::ref::apply_weighted_paulis>)->Name("weighted_paulis/ref")->DenseRange(12, 20, 4);
BENCHMARK(bm_weighted_paulis<k::omp::apply_weighted_paulis>)->Name("weighted_paulis/omp")->DenseRange(12, 20, 4);
BENCHMARK(bm_ldca_tangents)->Name("a_matrix/ldca-8q-137p")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
