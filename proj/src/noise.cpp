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

#include "varqite/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace varqite {

void NoiseConfig::validate() const {
    if (!(gate_error_rate >= 0.0 && gate_error_rate < 1.0)) {
        throw std::invalid_argument("gate error rate must lie in [0, 1)");
    }
    if (gate_count && *gate_count < 0) {
        throw std::invalid_argument("gate count must be non-negative");
    }
    if (shots_a < 1 || shots_c < 1) {
        throw std::invalid_argument("shot counts must be >= 1");
    }
}

double skew_factor(double p, int gate_count) {
    if (!(p >= 0.0 && p < 1.0) || gate_count < 0) {
        throw std::invalid_argument("skew_factor needs p in [0,1) and D >= 0");
    }
    return std::pow(1.0 - p, gate_count);
}

double sample_expectation(double mean, double half_range, long long shots, double eps, CounterStream &stream) {
    if (!(half_range > 0.0)) {
        throw std::invalid_argument("half range must be positive");
    }
    if (std::abs(mean) > half_range * (1.0 + 1e-12)) {
        throw std::invalid_argument("mean " + std::to_string(mean) + " outside [-r, r] with r = " +
                                    std::to_string(half_range));
    }
    if (shots < 1) {
        throw std::invalid_argument("shot count must be >= 1");
    }
    const double m = std::clamp(eps * mean, -half_range, half_range);
    const double var = std::max(0.0, half_range * half_range - m * m) / static_cast<double>(shots);
    const double z = stream.normal();
    return std::clamp(m + std::sqrt(var) * z, -half_range, half_range);
}

CounterStream noise_stream(std::uint64_t seed, std::uint32_t iteration, NoiseChannel channel, std::uint32_t i,
                           std::uint32_t j) {
    // Channel occupies the top byte of the iteration word.
    const std::uint32_t tagged = (static_cast<std::uint32_t>(channel) << 24) ^ (iteration & 0x00FFFFFFu);
    return CounterStream(seed, tagged, i, j);
}

}  // namespace varqite
