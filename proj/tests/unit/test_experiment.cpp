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


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "varqite/experiment.hpp"
#include "varqite/oracle.hpp"

using namespace varqite;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / "varqite-tests";
    fs::create_directories(dir);
    return dir / name;
}

ExperimentConfig toy_config(const std::string &which, Method m, double dt, int iters) {
    ExperimentConfig cfg;
    cfg.hamiltonian = "builtin:" + which;
    cfg.ansatz = which;
    cfg.evolution.method = m;
    cfg.evolution.dt = dt;
    cfg.evolution.n_iterations = iters;
    return cfg;
}

ExperimentConfig h2_config(int trials, int iters) {
    ExperimentConfig cfg;
    cfg.init = InitSpec::parse("random");
    cfg.trials = trials;
    cfg.evolution.n_iterations = iters;
    cfg.evolution.dt = 0.01;
    return cfg;
}

bool monotone(const std::vector<TrajectoryRecord> &t) {
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k].energy > t[k - 1].energy + kMonotoneSlack) {
            return false;
        }
    }
    return true;
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(VARQITE_CLI_PATH) + " " + args + " > " +
                            scratch("cli-stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(InitSpec, Parsing) {
    EXPECT_EQ(InitSpec::parse("zeros").kind, InitKind::Zeros);
    EXPECT_EQ(InitSpec::parse("random").kind, InitKind::Random);
    const auto p = InitSpec::parse("perturb:0.25");
    EXPECT_EQ(p.kind, InitKind::Perturb);
    EXPECT_EQ(p.delta, 0.25);
    EXPECT_NEAR(InitSpec::parse("perturb").delta, pi / 50, 1e-15);
    EXPECT_EQ(InitSpec::parse("grid:8").grid_points, 8);
    EXPECT_EQ(InitSpec::parse("perturb:0.25").str(), "perturb:0.25");
    for (const char *bad : {"perturb:0", "perturb:-1", "perturb:x", "grid:0", "grid:2.5", "ones"}) {
        EXPECT_THROW(InitSpec::parse(bad), std::invalid_argument) << bad;
    }
}

TEST(InitialParams, Modes) {
    const auto r1 = initial_params(InitSpec::parse("random"), 50, 3, 0);
    const auto r2 = initial_params(InitSpec::parse("random"), 50, 3, 0);
    const auto r3 = initial_params(InitSpec::parse("random"), 50, 4, 0);
    EXPECT_EQ(r1, r2);
    EXPECT_NE(r1, r3);
    EXPECT_GE(r1.minCoeff(), 0.0);
    EXPECT_LT(r1.maxCoeff(), 2 * pi);

    auto spec = InitSpec::parse("perturb:0.1");
    spec.reference = ParamVector::Constant(20, 1.0);
    const auto p = initial_params(spec, 20, 5, 0);
    EXPECT_LE((p.array() - 1.0).abs().maxCoeff(), 0.1);
    EXPECT_GT((p.array() - 1.0).abs().maxCoeff(), 0.0);
    EXPECT_THROW(initial_params(spec, 19, 5, 0), std::invalid_argument);

    const auto grid = InitSpec::parse("grid:8");
    const auto g = initial_params(grid, 3, 0, 8 * 2 + 5);
    EXPECT_NEAR(g[0], 2.5 * pi / 4, 1e-15);
    EXPECT_NEAR(g[1], 5.5 * pi / 4, 1e-15);
    EXPECT_EQ(g[2], 0.0);
    EXPECT_THROW(initial_params(grid, 3, 0, 64), std::out_of_range);
    EXPECT_EQ(initial_params(InitSpec{}, 4, 9, 0), ParamVector::Zero(4));
}

TEST(ExperimentConfig, Validation) {
    ExperimentConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.trials = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.tolerance = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.init = InitSpec::parse("grid:2");
    cfg.trials = 5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(LoadHamiltonian, Sources) {
    const auto path = scratch("ham.txt");
    std::ofstream(path) << "# test\n0.5 Z0 Z1\n";
    EXPECT_EQ(load_hamiltonian("file:" + path.string()).terms().size(), 1u);
    EXPECT_EQ(load_hamiltonian(path.string()).terms().size(), 1u);
    EXPECT_EQ(load_hamiltonian("builtin:toy-a").terms().size(), 3u);
    EXPECT_EQ(load_hamiltonian("toy-b").terms().size(), 3u);
    EXPECT_THROW(load_hamiltonian("file:/nonexistent/h.txt"), std::runtime_error);
    EXPECT_THROW(load_hamiltonian("builtin:nope"), std::invalid_argument);
    std::ofstream(path) << "0.5 Z0\nbad line\n";
    EXPECT_THROW(load_hamiltonian("file:" + path.string()), std::runtime_error);
}

TEST(Run, H2FromRandomStartConverges) {
    auto cfg = h2_config(1, 2000);
    cfg.evolution.seed = 7;
    cfg.out = scratch("h2.jsonl").string();
    const auto r = run(cfg);
    ASSERT_TRUE(r.ground_energy);
    EXPECT_LT(r.final_energy() - *r.ground_energy, 1e-3);
    std::ifstream in(cfg.out);
    const auto back = read_trajectory_jsonl(in);
    ASSERT_EQ(back.size(), r.trajectory.size());
    EXPECT_EQ(back.back().energy, r.final_energy());
    EXPECT_EQ(back.back().params, r.trajectory.back().params);
}

TEST(Run, GradientDescentFromZerosStaysPut) {
    const auto r = run(toy_config("toy-a", Method::GradientDescent, 0.2, 50));
    EXPECT_EQ(r.trajectory.back().params, ParamVector::Zero(3));
}

TEST(Batch, SingleTrialReducesToRun) {
    auto cfg = h2_config(1, 300);
    cfg.evolution.seed = 11;
    const auto stats = batch(cfg);
    ASSERT_EQ(stats.trials.size(), 1u);
    EXPECT_EQ(stats.trials[0].final_energy, run(cfg).final_energy());
    EXPECT_EQ(stats.converged_fraction.size(), 301u);
}

TEST(Batch, DeterministicMonotoneAndRoundTrips) {
    auto cfg = h2_config(12, 400);
    cfg.evolution.seed = 100;
    cfg.out = scratch("stats.csv").string();
    const auto a = batch(cfg);
    const auto b = batch(cfg);
    EXPECT_EQ(a.converged_fraction, b.converged_fraction);
    for (std::size_t k = 0; k < a.trials.size(); ++k) {
        EXPECT_EQ(a.trials[k].final_energy, b.trials[k].final_energy);
        EXPECT_EQ(a.trials[k].seed, 100 + k);
    }
    for (std::size_t k = 1; k < a.converged_fraction.size(); ++k) {
        EXPECT_GE(a.converged_fraction[k], a.converged_fraction[k - 1]);
    }
    std::ifstream in(cfg.out);
    const auto back = read_stats_csv(in);
    ASSERT_EQ(back.converged_fraction.size(), a.converged_fraction.size());
    for (std::size_t k = 0; k < back.converged_fraction.size(); ++k) {
        EXPECT_NEAR(back.converged_fraction[k], a.converged_fraction[k], 1e-12);
        if (std::isnan(a.mean_residual[k])) {
            EXPECT_TRUE(std::isnan(back.mean_residual[k]));
        } else {
            EXPECT_NEAR(back.mean_residual[k], a.mean_residual[k], 1e-12);
        }
    }
    const auto trials_csv = slurp(cfg.out + ".trials.csv");
    EXPECT_EQ(trials_csv.substr(0, trials_csv.find('\n')), "trial,seed,final_energy,best_energy,converged_at,error");
}

TEST(Batch, H2HundredRandomStartsAllConverge) {
    auto cfg = h2_config(100, 2000);
    cfg.evolution.seed = 2024;
    EXPECT_EQ(batch(cfg).final_converged_fraction(), 1.0);
}

TEST(Batch, ToyGridImaginaryTimeBeatsGradientDescent) {
    auto imag = toy_config("toy-a", Method::ImaginaryTime, 0.1, 500);
    imag.init = InitSpec::parse("grid:8");
    imag.trials = 64;
    auto gd = imag;
    gd.evolution.method = Method::GradientDescent;
    const double fi = batch(imag).final_converged_fraction();
    const double fg = batch(gd).final_converged_fraction();
    EXPECT_GE(fi, 0.9);
    EXPECT_LT(fg, fi);
}

TEST(Stepsize, ReturnsLargestPassingCandidate) {
    auto cfg = toy_config("toy-a", Method::ImaginaryTime, 0.1, 10);
    cfg.init = InitSpec::parse("random");
    cfg.trials = 4;
    const std::vector<double> cands{0.05, 0.1, 0.2, 0.4};
    const auto report = stable_stepsize_search(cfg, cands);
    ASSERT_EQ(report.verdicts.size(), 4u);
    std::optional<double> expect;
    const auto a = builtin_ansatz("toy-a");
    const auto h = builtin_hamiltonian("toy-a");
    for (double dt : cands) {
        bool ok = true;
        for (int t = 0; t < cfg.trials; ++t) {
            EvolutionConfig e = cfg.evolution;
            e.dt = dt;
            e.n_iterations = kStepsizeProbeIterations;
            ok = ok && monotone(evolve(a, h, initial_params(cfg.init, 3, cfg.evolution.seed + t, t), e));
        }
        if (ok) {
            expect = dt;
        }
    }
    EXPECT_EQ(report.best, expect);
    ASSERT_TRUE(report.best);

    const auto single = stable_stepsize_search(cfg, {*report.best});
    EXPECT_EQ(single.best, report.best);
    EXPECT_THROW(stable_stepsize_search(cfg, {}), std::invalid_argument);
}

TEST(Stepsize, NoPassingCandidateIsReported) {
    auto cfg = toy_config("toy-a", Method::GradientDescent, 0.1, 10);
    cfg.init = InitSpec::parse("random");
    cfg.trials = 4;
    const auto report = stable_stepsize_search(cfg, {25.0, 40.0});
    EXPECT_FALSE(report.best);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    const auto conf = scratch("run.toml");
    const auto out = scratch("cli.jsonl");
    std::ofstream(conf) << "hamiltonian = \"builtin:toy-a\"\nansatz = \"toy-a\"\niters = 50\ndt = 0.1\n"
                           "init = \"perturb:0.3\"\nseed = 4\n";
    ASSERT_EQ(run_cli("run --config " + conf.string() + " --iters 3 --out " + out.string()), 0)
        << slurp(scratch("cli-stdout.txt"));
    std::ifstream in(out);
    EXPECT_EQ(read_trajectory_jsonl(in).size(), 4u);
    EXPECT_NE(slurp(scratch("cli-stdout.txt")).find("final_energy"), std::string::npos);
}

TEST(Cli, VerbsAndErrors) {
    EXPECT_EQ(run_cli("oracle --hamiltonian builtin:h2-sto3g-0.75"), 0);
    EXPECT_NE(slurp(scratch("cli-stdout.txt")).find("-1.1455"), std::string::npos);
    EXPECT_NE(run_cli("run --hamiltonian file:/nonexistent/h.txt"), 0);
    EXPECT_NE(slurp(scratch("cli-stdout.txt")).find("cannot open"), std::string::npos);
    EXPECT_NE(run_cli("run --method sideways"), 0);
    EXPECT_NE(run_cli("run --ansatz ldca"), 0);
    EXPECT_EQ(run_cli("batch --hamiltonian toy-a --ansatz toy-a --init grid:2 --trials 4 --iters 20 --dt 0.1"), 0);
    EXPECT_NE(slurp(scratch("cli-stdout.txt")).find("converged_fraction"), std::string::npos);
    EXPECT_EQ(run_cli("stepsize --hamiltonian toy-a --ansatz toy-a --init random --trials 2 --candidates 0.05,0.1"), 0);
    EXPECT_NE(slurp(scratch("cli-stdout.txt")).find("best"), std::string::npos);
    EXPECT_EQ(run_cli("run --shots-a 1000 --shots-c 1000 --gate-error 1e-4 --iters 5"), 0);
}
