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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "varqite/ansatz.hpp"
#include "varqite/noise.hpp"
#include "varqite/pauli.hpp"
#include "varqite/solver.hpp"
#include "varqite/statevector.hpp"

namespace varqite {

enum class Method { ImaginaryTime, GradientDescent };

Method parse_method(const std::string &name);
std::string method_name(Method m);

struct EvolutionConfig {
    Method method = Method::ImaginaryTime;
    double dt = 0.01;
    int n_iterations = 100;
    SolverSpec solver;
    std::optional<NoiseConfig> noise;
    /// Fidelity against exact imaginary-time evolution; ignored above kFidelityMaxQubits.
    bool record_fidelity = false;
    std::uint64_t seed = 0;

    void validate() const;
};

inline constexpr int kFidelityMaxQubits = 10;
/// Runs abort when |theta_dot| exceeds this.
inline constexpr double kMaxThetaDotNorm = 1e6;

struct TrajectoryRecord {
    int iteration = 0;
    double tau = 0.0;
    ParamVector params;
    double energy = 0.0;
    std::optional<double> fidelity;
};

class EvolutionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Noise draws for one iteration; streams are keyed by (seed, iteration, i, j).
struct NoiseDraw {
    NoiseConfig config;
    double eps;
    std::uint64_t seed;
    std::uint32_t iteration;
};

/// A_ij = Re <d_i phi | d_j phi>, from N tangent states.
AMatrix a_matrix_from_tangents(const AnsatzCircuit &a, std::span<const StateVector> tangents,
                               const std::optional<NoiseDraw> &noise = std::nullopt);
/// C_i = -Re <d_i phi | H | phi>.
CVector c_vector_from_tangents(const AnsatzCircuit &a, std::span<const StateVector> tangents, const StateVector &phi,
                               const Hamiltonian &h, const std::optional<NoiseDraw> &noise = std::nullopt);

AMatrix compute_a_matrix(const AnsatzCircuit &a, const ParamVector &theta,
                         const std::optional<NoiseConfig> &noise = std::nullopt, std::uint32_t iteration = 0);
CVector compute_c_vector(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h,
                         const std::optional<NoiseConfig> &noise = std::nullopt, std::uint32_t iteration = 0);

/// Euler update. Imaginary time: theta + solve(A, C) dt. Gradient descent:
/// theta + C dt, with A unused.
ParamVector step(const ParamVector &theta, Method method, double dt, const AMatrix &a, const CVector &c,
                 const SolverSpec &solver = {});

/// Called after each record is produced; return false to stop early.
using TrajectoryObserver = std::function<bool(const TrajectoryRecord &)>;

/// n_iterations Euler steps; returns n_iterations + 1 records starting at tau = 0.
std::vector<TrajectoryRecord> evolve(const AnsatzCircuit &a, const Hamiltonian &h, const ParamVector &theta0,
                                     const EvolutionConfig &cfg, const TrajectoryObserver &observer = {});

/// JSON Lines with keys iteration, tau, energy, fidelity (nullable), params.
void write_trajectory_jsonl(std::ostream &out, std::span<const TrajectoryRecord> records);
std::vector<TrajectoryRecord> read_trajectory_jsonl(std::istream &in);

}  // namespace varqite
