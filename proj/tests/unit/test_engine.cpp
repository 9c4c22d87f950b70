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
#include <omp.h>

#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "dense_reference.hpp"
#include "varqite/engine.hpp"
#include "varqite/oracle.hpp"

using namespace varqite;
using std::numbers::pi;

namespace {

AnsatzCircuit single_rx() { return AnsatzCircuit(1, "0", {{GateOp::rx(0, 0), {0, 0}}}, 1); }
Hamiltonian z0() { return Hamiltonian(1, {{1.0, PauliString::from_text("Z0")}}); }

struct System {
    std::string name;
    AnsatzCircuit a;
    Hamiltonian h;
};

std::vector<System> systems() {
    return {{"h2", builtin_ansatz("h2-universal"), builtin_hamiltonian("h2-sto3g-0.75")},
            {"toy-a", builtin_ansatz("toy-a"), builtin_hamiltonian("toy-a")},
            {"toy-b", builtin_ansatz("toy-b"), builtin_hamiltonian("toy-b")}};
}

// A_ij from finite-difference tangents computed on dense matrices.
Eigen::MatrixXd reference_a(const AnsatzCircuit &a, const ParamVector &theta) {
    std::vector<dense_ref::Vec> t;
    for (int i = 0; i < a.n_params(); ++i) {
        t.push_back(dense_ref::central_difference(a, theta, i));
    }
    Eigen::MatrixXd out(a.n_params(), a.n_params());
    for (int i = 0; i < a.n_params(); ++i) {
        for (int j = 0; j < a.n_params(); ++j) {
            out(i, j) = t[i].dot(t[j]).real();
        }
    }
    return out;
}

}  // namespace

TEST(AMatrix, Examples) {
    for (double t : {0.0, 1.1, 4.0}) {
        const auto a = compute_a_matrix(single_rx(), ParamVector{{t}});
        EXPECT_NEAR(a(0, 0), 0.25, 1e-15);
    }
    const auto toy = compute_a_matrix(builtin_ansatz("toy-a"), ParamVector::Zero(3));
    EXPECT_NEAR(toy(0, 0), 0.25, 1e-15);
    EXPECT_NEAR(toy(1, 1), 0.0, 1e-15);
    EXPECT_NEAR(toy(2, 2), 1.0, 1e-15);
    EXPECT_NEAR(toy(0, 2), 0.0, 1e-15);
    std::mt19937_64 rng(51);
    const auto th = dense_ref::random_params(3, rng);
    EXPECT_NEAR(compute_a_matrix(builtin_ansatz("toy-b"), th)(2, 2), 1.0, 1e-14);
}

TEST(AMatrix, SymmetricPsdBoundedAndMatchesOracle) {
    std::mt19937_64 rng(52);
    for (const auto &s : systems()) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto theta = dense_ref::random_params(s.a.n_params(), rng);
            const auto a = compute_a_matrix(s.a, theta);
            EXPECT_LT((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-10);
            EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff(), -1e-10);
            for (int i = 0; i < a.rows(); ++i) {
                for (int j = 0; j < a.cols(); ++j) {
                    EXPECT_LE(std::abs(a(i, j)), s.a.tangent_bound(i) * s.a.tangent_bound(j) + 1e-12);
                }
            }
            EXPECT_LT((a - reference_a(s.a, theta)).cwiseAbs().maxCoeff(), 1e-8) << s.name;
        }
    }
}

TEST(CVector, Examples) {
    for (double t : {0.3, pi / 2, 2.5}) {
        EXPECT_NEAR(compute_c_vector(single_rx(), ParamVector{{t}}, z0())[0], std::sin(t) / 2, 1e-14);
    }
    EXPECT_NEAR(compute_c_vector(single_rx(), ParamVector{{pi / 2}}, z0())[0], 0.5, 1e-14);
    const auto toy = compute_c_vector(builtin_ansatz("toy-a"), ParamVector::Zero(3), builtin_hamiltonian("toy-a"));
    EXPECT_EQ(toy[2], 0.0);
    // (pi, pi, 0) prepares |11>, the exact minimum of toy-a.
    const auto at_min = compute_c_vector(builtin_ansatz("toy-a"), ParamVector{{pi, pi, 0.0}}, builtin_hamiltonian("toy-a"));
    EXPECT_LT(at_min.head(2).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CVector, GradientIsMinusTwoC) {
    std::mt19937_64 rng(53);
    for (const auto &s : systems()) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto theta = dense_ref::random_params(s.a.n_params(), rng);
            const auto c = compute_c_vector(s.a, theta, s.h);
            const auto g = dense_ref::energy_gradient(s.a, s.h, theta);
            EXPECT_LT((g + 2 * c).cwiseAbs().maxCoeff(), 1e-6) << s.name;
        }
    }
}

TEST(Step, Examples) {
    const ParamVector zero = ParamVector::Zero(1);
    EXPECT_NEAR(step(zero, Method::GradientDescent, 0.886, AMatrix(0, 0), CVector{{0.5}})[0], 0.443, 1e-15);
    SolverSpec pinv;
    pinv.kind = SolverKind::EigenPinv;
    const ParamVector th{{0.7}};
    EXPECT_NEAR(step(th, Method::ImaginaryTime, 0.225, AMatrix{{0.25}}, CVector{{0.5}}, pinv)[0], 0.7 + 0.45, 1e-15);
    for (auto m : {Method::ImaginaryTime, Method::GradientDescent}) {
        EXPECT_EQ(step(th, m, 0.3, AMatrix{{0.25}}, CVector::Zero(1)), th);
    }
    EXPECT_THROW(step(th, Method::GradientDescent, 0.1, AMatrix{{1.0}}, CVector::Zero(2)), std::invalid_argument);
}

TEST(Evolve, ZeroStepGivesTwoIdenticalRecords) {
    EvolutionConfig cfg;
    cfg.dt = 0.0;
    cfg.n_iterations = 1;
    const ParamVector th{{0.1, 0.2, 0.3}};
    const auto traj = evolve(builtin_ansatz("toy-a"), builtin_hamiltonian("toy-a"), th, cfg);
    ASSERT_EQ(traj.size(), 2u);
    EXPECT_EQ(traj[0].params, traj[1].params);
    EXPECT_EQ(traj[0].energy, traj[1].energy);
    EXPECT_EQ(traj[1].tau, 0.0);
}

TEST(Evolve, ToyAReachesGlobalMinimum) {
    EvolutionConfig cfg;
    cfg.dt = 0.1;
    cfg.n_iterations = 500;
    const auto traj = evolve(builtin_ansatz("toy-a"), builtin_hamiltonian("toy-a"), ParamVector{{2.0, 2.5, 0.0}}, cfg);
    ASSERT_EQ(traj.size(), 501u);
    EXPECT_NEAR(traj.back().energy, 0.0, 1e-3);
    EXPECT_NEAR(traj.back().tau, 50.0, 1e-9);
    EXPECT_EQ(traj[7].iteration, 7);
    EXPECT_FALSE(traj.back().fidelity.has_value());
}

TEST(Evolve, H2ReachesGroundEnergyWithFidelity) {
    std::mt19937_64 rng(54);
    const auto h = builtin_hamiltonian("h2-sto3g-0.75");
    EvolutionConfig cfg;
    cfg.n_iterations = 2000;
    cfg.record_fidelity = true;
    const auto traj = evolve(builtin_ansatz("h2-universal"), h, dense_ref::random_params(8, rng), cfg);
    EXPECT_NEAR(traj.back().energy, ground_state(h).energy, 1e-3);
    for (const auto &r : traj) {
        ASSERT_TRUE(r.fidelity);
        EXPECT_GE(*r.fidelity, 0.0);
        EXPECT_LE(*r.fidelity, 1.0);
    }
    EXPECT_NEAR(*traj.front().fidelity, 1.0, 1e-12);
}

TEST(Evolve, GradientDescentFixedPointAtZeros) {
    EvolutionConfig cfg;
    cfg.method = Method::GradientDescent;
    cfg.dt = 0.5;
    cfg.n_iterations = 20;
    const auto traj = evolve(builtin_ansatz("toy-a"), builtin_hamiltonian("toy-a"), ParamVector::Zero(3), cfg);
    for (const auto &r : traj) {
        EXPECT_EQ(r.params, ParamVector::Zero(3));
    }
}

TEST(Evolve, DivergenceAborts) {
    const Hamiltonian huge(1, {{1e7, PauliString::from_text("Z0")}});
    EvolutionConfig cfg;
    cfg.method = Method::GradientDescent;
    cfg.n_iterations = 3;
    EXPECT_THROW(evolve(single_rx(), huge, ParamVector{{1.0}}, cfg), EvolutionError);
}

TEST(Evolve, ValidatesInputs) {
    EvolutionConfig cfg;
    EXPECT_THROW(evolve(single_rx(), builtin_hamiltonian("toy-a"), ParamVector{{1.0}}, cfg), std::invalid_argument);
    EXPECT_THROW(evolve(single_rx(), z0(), ParamVector::Zero(2), cfg), std::invalid_argument);
    cfg.n_iterations = 0;
    EXPECT_THROW(evolve(single_rx(), z0(), ParamVector{{1.0}}, cfg), std::invalid_argument);
    cfg.n_iterations = 1;
    cfg.dt = -0.1;
    EXPECT_THROW(evolve(single_rx(), z0(), ParamVector{{1.0}}, cfg), std::invalid_argument);
}

TEST(Evolve, NoisyRunsAreDeterministicAcrossThreadCounts) {
    std::mt19937_64 rng(55);
    const auto a = builtin_ansatz("ldca", {{"n", "4"}, {"depth", "1"}});
    const auto h = dense_ref::random_hamiltonian(4, 10, rng);
    const auto th = dense_ref::random_params(a.n_params(), rng);
    EvolutionConfig cfg;
    cfg.n_iterations = 15;
    cfg.seed = 77;
    cfg.noise = NoiseConfig{1e-3, std::nullopt, 1000, 1000, 5};
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = evolve(a, h, th, cfg);
    omp_set_num_threads(4);
    const auto four = evolve(a, h, th, cfg);
    omp_set_num_threads(saved);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
        EXPECT_EQ(one[k].params, four[k].params);
        EXPECT_EQ(one[k].energy, four[k].energy);
    }
    cfg.seed = 78;
    const auto other = evolve(a, h, th, cfg);
    EXPECT_NE(other.back().params, one.back().params);
}

TEST(NoisyMatrices, SymmetricBoundedAndUnbiasedAtLargeShots) {
    std::mt19937_64 rng(56);
    const auto a = builtin_ansatz("h2-universal");
    const auto h = builtin_hamiltonian("h2-sto3g-0.75");
    const auto th = dense_ref::random_params(8, rng);
    const auto exact_a = compute_a_matrix(a, th);
    const auto exact_c = compute_c_vector(a, th, h);
    NoiseConfig noisy{0.0, std::nullopt, 100, 100, 3};
    const auto na = compute_a_matrix(a, th, noisy, 4);
    EXPECT_EQ(na, na.transpose());
    EXPECT_LE(na.cwiseAbs().maxCoeff(), 0.25);
    EXPECT_NE(na, exact_a);
    EXPECT_EQ(na, compute_a_matrix(a, th, noisy, 4));
    EXPECT_NE(na, compute_a_matrix(a, th, noisy, 5));

    NoiseConfig sharp{0.0, std::nullopt, 1LL << 40, 1LL << 40, 3};
    EXPECT_LT((compute_a_matrix(a, th, sharp) - exact_a).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LT((compute_c_vector(a, th, h, sharp) - exact_c).cwiseAbs().maxCoeff(), 1e-5);

    NoiseConfig skewed{1e-2, 10, 1LL << 40, 1LL << 40, 3};
    const double eps = skew_factor(1e-2, 10);
    EXPECT_LT((compute_a_matrix(a, th, skewed) - eps * exact_a).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LT((compute_c_vector(a, th, h, skewed) - eps * exact_c).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Trajectory, JsonLinesRoundTrip) {
    EvolutionConfig cfg;
    cfg.n_iterations = 30;
    cfg.record_fidelity = true;
    const auto traj = evolve(builtin_ansatz("toy-b"), builtin_hamiltonian("toy-b"), ParamVector{{0.3, 1.9, 0.2}}, cfg);
    std::stringstream ss;
    write_trajectory_jsonl(ss, traj);
    const std::string text = ss.str();
    const auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
    for (const char *key : {"iteration", "tau", "energy", "fidelity", "params"}) {
        EXPECT_TRUE(first.contains(key)) << key;
    }
    const auto back = read_trajectory_jsonl(ss);
    ASSERT_EQ(back.size(), traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        EXPECT_EQ(back[k].iteration, traj[k].iteration);
        EXPECT_EQ(back[k].tau, traj[k].tau);
        EXPECT_EQ(back[k].energy, traj[k].energy);
        EXPECT_EQ(back[k].fidelity, traj[k].fidelity);
        EXPECT_EQ(back[k].params, traj[k].params);
    }
    TrajectoryRecord none{0, 0.0, ParamVector::Zero(1), 1.0, std::nullopt};
    std::stringstream s2;
    write_trajectory_jsonl(s2, std::span(&none, 1));
    EXPECT_TRUE(nlohmann::json::parse(s2.str())["fidelity"].is_null());
}
