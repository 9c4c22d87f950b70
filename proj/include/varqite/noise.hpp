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

#include <cstdint>
#include <optional>

#include "varqite/random.hpp"

namespace varqite {

/// Shot-noise and decoherence-skew model applied to A and C entries.
struct NoiseConfig {
    double gate_error_rate = 0.0;        // p, per gate
    std::optional<int> gate_count;       // D; defaults to the ansatz gate count
    long long shots_a = 1;               // N_A per A entry
    long long shots_c = 1;               // N_C per (parameter, Hamiltonian term)
    std::uint64_t seed = 0;

    void validate() const;
};

/// epsilon = (1 - p)^D
double skew_factor(double p, int gate_count);

/// Draw from Normal(eps m, (r^2 - (eps m)^2) / N), clamped to [-r, r].
double sample_expectation(double mean, double half_range, long long shots, double eps, CounterStream &stream);

/// Stream tags so A and C draws never share a counter.
enum class NoiseChannel : std::uint32_t { AEntry = 1, CTerm = 2 };

/// Stream for one sampled quantity at one iteration.
CounterStream noise_stream(std::uint64_t seed, std::uint32_t iteration, NoiseChannel channel, std::uint32_t i,
                           std::uint32_t j);

}  // namespace varqite
