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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "varqite/experiment.hpp"
#include "varqite/oracle.hpp"

namespace {

using namespace varqite;

struct Flags {
    std::string hamiltonian = "builtin:h2-sto3g-0.75";
    std::string ansatz = "h2-universal";
    std::vector<std::string> ansatz_opts;
    std::string method = "imag";
    double dt = 0.01;
    int iters = 100;
    std::string solver = "tikhonov";
    double lambda_min = 1e-4;
    double lambda_max = 1e-2;
    double tsvd_cutoff = 1e-8;
    std::string init = "zeros";
    std::string reference;
    int trials = 1;
    double tol = 1e-3;
    std::optional<long long> shots_a;
    std::optional<long long> shots_c;
    std::optional<double> gate_error;
    std::optional<int> gate_count;
    std::uint64_t seed = 0;
    bool record_fidelity = false;
    std::optional<double> ground_energy;
    std::vector<double> candidates{0.05, 0.1, 0.2, 0.4};
    std::string out;
};

ExperimentConfig to_config(const Flags &f) {
    ExperimentConfig cfg;
    cfg.hamiltonian = f.hamiltonian;
    cfg.ansatz = f.ansatz;
    for (const auto &kv : f.ansatz_opts) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("--ansatz-opt expects key=value, got '" + kv + "'");
        }
        cfg.ansatz_options[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    cfg.init = InitSpec::parse(f.init);
    if (!f.reference.empty()) {
        cfg.init.reference = load_params(f.reference);
    }
    auto &e = cfg.evolution;
    e.method = parse_method(f.method);
    e.dt = f.dt;
    e.n_iterations = f.iters;
    e.solver.kind = parse_solver_kind(f.solver);
    e.solver.lambda_min = f.lambda_min;
    e.solver.lambda_max = f.lambda_max;
    e.solver.tsvd_cutoff = f.tsvd_cutoff;
    e.record_fidelity = f.record_fidelity;
    e.seed = f.seed;
    if (f.shots_a || f.shots_c || f.gate_error || f.gate_count) {
        NoiseConfig n;
        n.shots_a = f.shots_a.value_or(10000);
        n.shots_c = f.shots_c.value_or(10000);
        n.gate_error_rate = f.gate_error.value_or(0.0);
        n.gate_count = f.gate_count;
        e.noise = n;
    }
    cfg.trials = f.trials;
    cfg.tolerance = f.tol;
    cfg.ground_energy = f.ground_energy;
    cfg.out = f.out;
    cfg.validate();
    return cfg;
}

void print_run(const RunResult &r) {
    const auto &last = r.trajectory.back();
    std::printf("iterations   %d\n", last.iteration);
    std::printf("tau          %.6f\n", last.tau);
    std::printf("final_energy %.12f\n", last.energy);
    if (r.ground_energy) {
        std::printf("ground       %.12f\n", *r.ground_energy);
        std::printf("gap          %.3e\n", last.energy - *r.ground_energy);
    }
    if (last.fidelity) {
        std::printf("fidelity     %.9f\n", *last.fidelity);
    }
}

void print_batch(const ConvergenceStats &s) {
    int failed = 0;
    for (const auto &t : s.trials) {
        failed += t.error.empty() ? 0 : 1;
    }
    std::printf("trials              %zu\n", s.trials.size());
    std::printf("ground              %.12f\n", s.ground_energy);
    std::printf("converged_fraction  %.6f\n", s.final_converged_fraction());
    if (!std::isnan(s.mean_residual.back())) {
        std::printf("mean_residual       %.3e\n", s.mean_residual.back());
    }
    if (failed) {
        std::printf("aborted_trials      %d\n", failed);
    }
}

void print_oracle(const Hamiltonian &h) {
    const auto gs = ground_state(h);
    std::printf("qubits     %d\n", h.n_qubits());
    std::printf("energy     %.12f\n", gs.energy);
    std::printf("degeneracy %d\n", gs.degeneracy);
    const int n = h.n_qubits();
    for (std::size_t k = 0; k < gs.state.amplitudes().size(); ++k) {
        const auto amp = gs.state[k];
        if (std::abs(amp) < 1e-9) {
            continue;
        }
        std::string bits(n, '0');
        for (int q = 0; q < n; ++q) {
            if ((k >> (n - 1 - q)) & 1u) {
                bits[q] = '1';
            }
        }
        std::printf("|%s>  %+.12f %+.12fi\n", bits.c_str(), amp.real(), amp.imag());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational imaginary-time evolution on a statevector simulator"};
    app.set_config("--config", "", "TOML key = value file; command-line flags take precedence");
    app.require_subcommand(1);
    Flags f;

    app.add_option("--hamiltonian", f.hamiltonian, "builtin:<name> or file:<path>");
    app.add_option("--ansatz", f.ansatz, "h2-universal, toy-a, toy-b or ldca");
    app.add_option("--ansatz-opt", f.ansatz_opts, "ansatz option key=value (repeatable)");
    app.add_option("--method", f.method, "imag or gd");
    app.add_option("--dt", f.dt, "Euler step");
    app.add_option("--iters", f.iters, "number of steps");
    app.add_option("--solver", f.solver, "tikhonov, tsvd or pinv");
    app.add_option("--lambda-min", f.lambda_min, "smallest Tikhonov lambda");
    app.add_option("--lambda-max", f.lambda_max, "largest Tikhonov lambda");
    app.add_option("--tsvd-cutoff", f.tsvd_cutoff, "relative singular-value cutoff");
    app.add_option("--init", f.init, "zeros, random, perturb:<delta> or grid:<k>");
    app.add_option("--reference", f.reference, "parameter file used as the perturb reference point");
    app.add_option("--trials", f.trials, "independent trials (batch) or probes (stepsize)");
    app.add_option("--tol", f.tol, "convergence tolerance in Hartree");
    app.add_option("--shots-a", f.shots_a, "shots per A entry (enables noise)");
    app.add_option("--shots-c", f.shots_c, "shots per C term (enables noise)");
    app.add_option("--gate-error", f.gate_error, "error probability per gate (enables noise)");
    app.add_option("--gate-count", f.gate_count, "gate count D for the skew factor");
    app.add_option("--seed", f.seed, "base seed");
    app.add_flag("--record-fidelity", f.record_fidelity, "track fidelity to exact imaginary-time evolution");
    app.add_option("--ground-energy", f.ground_energy, "reference ground energy, bypassing diagonalisation");
    app.add_option("--candidates", f.candidates, "step sizes tried by stepsize")->delimiter(',');
    app.add_option("--out", f.out, "output path (JSONL for run, CSV for batch)");

    auto *run_cmd = app.add_subcommand("run", "single trajectory");
    auto *batch_cmd = app.add_subcommand("batch", "independent trials and convergence statistics");
    auto *step_cmd = app.add_subcommand("stepsize", "largest step with monotone energy over 200 iterations");
    auto *oracle_cmd = app.add_subcommand("oracle", "exact ground energy and state");
    for (auto *c : {run_cmd, batch_cmd, step_cmd, oracle_cmd}) {
        c->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (*oracle_cmd) {
            print_oracle(load_hamiltonian(f.hamiltonian));
            return 0;
        }
        const auto cfg = to_config(f);
        if (*run_cmd) {
            print_run(run(cfg));
        } else if (*batch_cmd) {
            print_batch(batch(cfg));
        } else {
            const auto report = stable_stepsize_search(cfg, f.candidates);
            for (const auto &[dt, ok] : report.verdicts) {
                std::printf("dt %-10g %s\n", dt, ok ? "stable" : "unstable");
            }
            if (!report.best) {
                std::fprintf(stderr, "error: no candidate step size kept the energy monotone\n");
                return 3;
            }
            std::printf("best %g\n", *report.best);
        }
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
