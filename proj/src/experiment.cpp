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

#include "varqite/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "varqite/oracle.hpp"
#include "varqite/random.hpp"

namespace varqite {

namespace {

double parse_double(const std::string &s, const std::string &what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed " + what + " '" + s + "'");
    }
    return v;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// Stream tag separating initial-point draws from noise draws.
constexpr std::uint32_t kInitStream = 0x494e4954u;

}  // namespace

InitSpec InitSpec::parse(const std::string &text) {
    InitSpec s;
    if (text == "zeros") {
        return s;
    }
    if (text == "random") {
        s.kind = InitKind::Random;
        return s;
    }
    if (text == "perturb" || text.starts_with("perturb:")) {
        s.kind = InitKind::Perturb;
        s.delta = text == "perturb" ? kDefaultPerturbation : parse_double(text.substr(8), "perturbation");
        if (!(s.delta > 0) || !std::isfinite(s.delta)) {
            throw std::invalid_argument("perturbation must be positive");
        }
        return s;
    }
    if (text == "grid" || text.starts_with("grid:")) {
        s.kind = InitKind::Grid;
        if (text != "grid") {
            const auto v = parse_double(text.substr(5), "grid size");
            if (v < 1 || v != std::floor(v) || v > 1e4) {
                throw std::invalid_argument("grid size must be a positive integer");
            }
            s.grid_points = static_cast<int>(v);
        }
        return s;
    }
    throw std::invalid_argument("unknown init mode '" + text + "' (zeros, random, perturb:<d>, grid:<k>)");
}

std::string InitSpec::str() const {
    switch (kind) {
        case InitKind::Zeros:
            return "zeros";
        case InitKind::Random:
            return "random";
        case InitKind::Perturb:
            return "perturb:" + format_double(delta);
        case InitKind::Grid:
            return "grid:" + std::to_string(grid_points);
    }
    return "?";
}

void ExperimentConfig::validate() const {
    evolution.validate();
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (!(tolerance > 0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (init.kind == InitKind::Perturb && !(init.delta > 0)) {
        throw std::invalid_argument("perturbation must be positive");
    }
    if (init.kind == InitKind::Grid && trials > init.grid_points * init.grid_points) {
        throw std::invalid_argument("more trials than grid cells");
    }
}

Hamiltonian load_hamiltonian(const std::string &source) {
    auto from_file = [](const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open Hamiltonian file '" + path + "'");
        }
        try {
            return parse_hamiltonian(in);
        } catch (const ParseError &e) {
            throw std::runtime_error(path + ": " + e.what());
        }
    };
    if (source.starts_with("builtin:")) {
        return builtin_hamiltonian(source.substr(8));
    }
    if (source.starts_with("file:")) {
        return from_file(source.substr(5));
    }
    const auto names = builtin_hamiltonian_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
        return builtin_hamiltonian(source);
    }
    return from_file(source);
}

ParamVector load_params(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open parameter file '" + path + "'");
    }
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        v.push_back(parse_double(tok, "parameter"));
    }
    return Eigen::Map<const ParamVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ParamVector initial_params(const InitSpec &init, int n_params, std::uint64_t seed, int trial) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    ParamVector theta = ParamVector::Zero(n_params);
    CounterStream stream(seed, kInitStream, 0, 0);
    switch (init.kind) {
        case InitKind::Zeros:
            break;
        case InitKind::Random:
            for (int j = 0; j < n_params; ++j) {
                theta[j] = stream.uniform(0.0, two_pi);
            }
            break;
        case InitKind::Perturb:
            if (init.reference) {
                if (init.reference->size() != n_params) {
                    throw std::invalid_argument("reference point has " + std::to_string(init.reference->size()) +
                                                " entries, ansatz has " + std::to_string(n_params));
                }
                theta = *init.reference;
            }
            for (int j = 0; j < n_params; ++j) {
                theta[j] += stream.uniform(-init.delta, init.delta);
            }
            break;
        case InitKind::Grid: {
            const int k = init.grid_points;
            if (trial < 0 || trial >= k * k) {
                throw std::out_of_range("trial outside the start grid");
            }
            const double cell = two_pi / k;
            if (n_params > 0) {
                theta[0] = (trial / k + 0.5) * cell;
            }
            if (n_params > 1) {
                theta[1] = (trial % k + 0.5) * cell;
            }
            break;
        }
    }
    return theta;
}

namespace {

struct Problem {
    Hamiltonian h;
    AnsatzCircuit a;
};

Problem load_problem(const ExperimentConfig &cfg) {
    cfg.validate();
    Problem p{load_hamiltonian(cfg.hamiltonian), builtin_ansatz(cfg.ansatz, cfg.ansatz_options)};
    if (p.a.n_qubits() != p.h.n_qubits()) {
        throw std::invalid_argument("ansatz '" + cfg.ansatz + "' acts on " + std::to_string(p.a.n_qubits()) +
                                    " qubits but the Hamiltonian has " + std::to_string(p.h.n_qubits()));
    }
    return p;
}

std::optional<double> reference_energy(const ExperimentConfig &cfg, const Hamiltonian &h) {
    if (cfg.ground_energy) {
        return cfg.ground_energy;
    }
    if (h.n_qubits() <= kOracleMaxQubits) {
        return ground_state(h).energy;
    }
    return std::nullopt;
}

EvolutionConfig trial_config(const ExperimentConfig &cfg, std::uint64_t seed) {
    EvolutionConfig e = cfg.evolution;
    e.seed = seed;
    return e;
}

}  // namespace

RunResult run(const ExperimentConfig &cfg) {
    const auto p = load_problem(cfg);
    const std::uint64_t seed = cfg.evolution.seed;
    RunResult r;
    r.trajectory = evolve(p.a, p.h, initial_params(cfg.init, p.a.n_params(), seed, 0), trial_config(cfg, seed));
    r.ground_energy = reference_energy(cfg, p.h);
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out);
        if (!out) {
            throw std::runtime_error("cannot write '" + cfg.out + "'");
        }
        write_trajectory_jsonl(out, r.trajectory);
    }
    return r;
}

ConvergenceStats batch(const ExperimentConfig &cfg) {
    const auto p = load_problem(cfg);
    const auto e0 = reference_energy(cfg, p.h);
    if (!e0) {
        throw std::invalid_argument("no ground energy: system exceeds the oracle limit and none was supplied");
    }
    const int iters = cfg.evolution.n_iterations;
    const int n_trials = cfg.trials;
    // Per-trial energy traces; slots are filled by index so output order is fixed.
    std::vector<std::vector<double>> energies(n_trials);
    std::vector<TrialSummary> summaries(n_trials);

#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < n_trials; ++t) {
        const std::uint64_t seed = cfg.evolution.seed + static_cast<std::uint64_t>(t);
        auto &s = summaries[t];
        s.trial = t;
        s.seed = seed;
        try {
            const auto traj =
                evolve(p.a, p.h, initial_params(cfg.init, p.a.n_params(), seed, t), trial_config(cfg, seed));
            for (const auto &rec : traj) {
                energies[t].push_back(rec.energy);
            }
        } catch (const EvolutionError &err) {
            s.error = err.what();
        }
    }

    ConvergenceStats stats;
    stats.ground_energy = *e0;
    stats.converged_fraction.assign(iters + 1, 0.0);
    stats.mean_residual.assign(iters + 1, 0.0);
    std::vector<int> counts(iters + 1, 0);
    for (int t = 0; t < n_trials; ++t) {
        auto &s = summaries[t];
        const auto &e = energies[t];
        if (e.empty()) {
            s.final_energy = s.best_energy = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        s.final_energy = e.back();
        s.best_energy = *std::min_element(e.begin(), e.end());
        for (int k = 0; k <= iters; ++k) {
            // A trial that aborted keeps its last recorded energy for later iterations.
            const double ek = e[std::min<std::size_t>(k, e.size() - 1)];
            if (!s.converged_at && ek - *e0 <= cfg.tolerance) {
                s.converged_at = k;
            }
            if (s.converged_at) {
                ++counts[k];
                stats.mean_residual[k] += ek - *e0;
            }
        }
    }
    for (int k = 0; k <= iters; ++k) {
        stats.converged_fraction[k] = static_cast<double>(counts[k]) / n_trials;
        stats.mean_residual[k] =
            counts[k] ? stats.mean_residual[k] / counts[k] : std::numeric_limits<double>::quiet_NaN();
    }
    stats.trials = std::move(summaries);

    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out);
        std::ofstream trials_out(cfg.out + ".trials.csv");
        if (!out || !trials_out) {
            throw std::runtime_error("cannot write '" + cfg.out + "'");
        }
        write_stats_csv(out, stats);
        write_trials_csv(trials_out, stats);
    }
    return stats;
}

void write_stats_csv(std::ostream &out, const ConvergenceStats &stats) {
    out << "iteration,converged_fraction,mean_residual\n";
    for (std::size_t k = 0; k < stats.converged_fraction.size(); ++k) {
        out << k << ',' << format_double(stats.converged_fraction[k]) << ','
            << (std::isnan(stats.mean_residual[k]) ? std::string() : format_double(stats.mean_residual[k])) << '\n';
    }
}

void write_trials_csv(std::ostream &out, const ConvergenceStats &stats) {
    out << "trial,seed,final_energy,best_energy,converged_at,error\n";
    for (const auto &t : stats.trials) {
        std::string err = t.error;
        std::replace(err.begin(), err.end(), ',', ';');
        out << t.trial << ',' << t.seed << ',' << format_double(t.final_energy) << ','
            << format_double(t.best_energy) << ',' << (t.converged_at ? std::to_string(*t.converged_at) : "") << ','
            << err << '\n';
    }
}

ConvergenceStats read_stats_csv(std::istream &in) {
    ConvergenceStats stats;
    std::string line;
    if (!std::getline(in, line) || line != "iteration,converged_fraction,mean_residual") {
        throw std::runtime_error("unexpected stats header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("malformed stats row '" + line + "'");
        }
        stats.converged_fraction.push_back(parse_double(line.substr(c1 + 1, c2 - c1 - 1), "fraction"));
        const auto res = line.substr(c2 + 1);
        stats.mean_residual.push_back(res.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                  : parse_double(res, "residual"));
    }
    return stats;
}

StepsizeReport stable_stepsize_search(const ExperimentConfig &cfg, const std::vector<double> &candidates) {
    if (candidates.empty()) {
        throw std::invalid_argument("no candidate step sizes");
    }
    const auto p = load_problem(cfg);
    StepsizeReport report;
    for (double dt : candidates) {
        EvolutionConfig e = cfg.evolution;
        e.dt = dt;
        e.n_iterations = kStepsizeProbeIterations;
        e.noise.reset();
        e.record_fidelity = false;
        bool ok = true;
        for (int t = 0; t < cfg.trials && ok; ++t) {
            const std::uint64_t seed = cfg.evolution.seed + static_cast<std::uint64_t>(t);
            e.seed = seed;
            double previous = std::numeric_limits<double>::infinity();
            try {
                evolve(p.a, p.h, initial_params(cfg.init, p.a.n_params(), seed, t), e,
                       [&](const TrajectoryRecord &r) {
                           if (r.energy > previous + kMonotoneSlack) {
                               ok = false;
                               return false;
                           }
                           previous = r.energy;
                           return true;
                       });
            } catch (const EvolutionError &) {
                ok = false;
            }
        }
        report.verdicts.emplace_back(dt, ok);
        if (ok && (!report.best || dt > *report.best)) {
            report.best = dt;
        }
    }
    return report;
}

}  // namespace varqite
