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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "varqite/ansatz.hpp"
#include "varqite/engine.hpp"
#include "varqite/pauli.hpp"

namespace varqite {

enum class InitKind { Zeros, Random, Perturb, Grid };

/// Starting-point rule. "zeros", "random" (uniform in [0, 2 pi)),
/// "perturb:<delta>" (uniform in [-delta, delta] around a reference) and
/// "grid:<k>" (cell centres of a k x k grid over the first two parameters,
/// trial t taking cell (t / k, t % k), remaining parameters zero).
struct InitSpec {
    InitKind kind = InitKind::Zeros;
    double delta = 0.0;
    int grid_points = 8;
    std::optional<ParamVector> reference;

    static InitSpec parse(const std::string &text);
    std::string str() const;
};

inline constexpr double kDefaultPerturbation = 3.14159265358979323846 / 50.0;

struct ExperimentConfig {
    std::string hamiltonian = "builtin:h2-sto3g-0.75";
    std::string ansatz = "h2-universal";
    AnsatzOptions ansatz_options;
    InitSpec init;
    EvolutionConfig evolution;
    int trials = 1;
    double tolerance = 1e-3;
    /// Overrides the diagonalised ground energy, e.g. for systems past the oracle limit.
    std::optional<double> ground_energy;
    std::string out;

    void validate() const;
};

/// "builtin:<name>" or "file:<path>"; a bare name is tried as a builtin, then as a path.
Hamiltonian load_hamiltonian(const std::string &source);
/// Reads a whitespace-separated parameter list.
ParamVector load_params(const std::string &path);

/// Starting point for trial t with the given seed.
ParamVector initial_params(const InitSpec &init, int n_params, std::uint64_t seed, int trial);

struct RunResult {
    std::vector<TrajectoryRecord> trajectory;
    std::optional<double> ground_energy;
    double final_energy() const { return trajectory.back().energy; }
};

/// One trajectory from trial 0; writes JSONL to cfg.out when set.
RunResult run(const ExperimentConfig &cfg);

struct TrialSummary {
    int trial = 0;
    std::uint64_t seed = 0;
    double final_energy = 0.0;
    double best_energy = 0.0;
    /// First iteration within tolerance, if any.
    std::optional<int> converged_at;
    std::string error;
};

struct ConvergenceStats {
    std::vector<double> converged_fraction;
    /// Mean of (E - E0) over the trials converged by each iteration; NaN when none are.
    std::vector<double> mean_residual;
    std::vector<TrialSummary> trials;
    double ground_energy = 0.0;
    double final_converged_fraction() const { return converged_fraction.back(); }
};

/// Independent trials with seeds seed + 0 ... seed + trials - 1. When cfg.out is
/// set, writes <out> (per-iteration CSV) and <out>.trials.csv.
ConvergenceStats batch(const ExperimentConfig &cfg);

void write_stats_csv(std::ostream &out, const ConvergenceStats &stats);
void write_trials_csv(std::ostream &out, const ConvergenceStats &stats);
/// Reads back the columns written by write_stats_csv.
ConvergenceStats read_stats_csv(std::istream &in);

inline constexpr int kStepsizeProbeIterations = 200;
inline constexpr double kMonotoneSlack = 1e-9;

struct StepsizeReport {
    std::optional<double> best;
    /// One entry per candidate, in input order.
    std::vector<std::pair<double, bool>> verdicts;
};

/// Largest candidate for which every probe (cfg.trials noise-free runs) has
/// non-increasing energy for 200 iterations.
StepsizeReport stable_stepsize_search(const ExperimentConfig &cfg, const std::vector<double> &candidates);

}  // namespace varqite
