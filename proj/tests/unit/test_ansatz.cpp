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

#include <numbers>
#include <random>

#include "dense_reference.hpp"
#include "varqite/ansatz.hpp"

using namespace varqite;
using std::numbers::pi;

namespace {

std::vector<std::pair<std::string, AnsatzCircuit>> all_builtins() {
    return {{"h2-universal", builtin_ansatz("h2-universal")},
            {"toy-a", builtin_ansatz("toy-a")},
            {"toy-b", builtin_ansatz("toy-b")},
            {"ldca-4-2", builtin_ansatz("ldca", {{"n", "4"}, {"depth", "2"}, {"bits", "1100"}})}};
}

AnsatzCircuit single_rx() { return AnsatzCircuit(1, "0", {{GateOp::rx(0, 0), {0, 0}}}, 1); }

}  // namespace

TEST(BuiltinAnsatz, Shapes) {
    const auto ldca = builtin_ansatz("ldca", {{"n", "8"}, {"depth", "3"}, {"bits", "11000000"}});
    EXPECT_EQ(ldca.n_params(), 137);
    EXPECT_EQ(ldca.initial_bits(), "11000000");
    const auto a = builtin_ansatz("toy-a");
    EXPECT_EQ(a.n_params(), 3);
    EXPECT_EQ(a.gate_count(), 3u);
    EXPECT_EQ(a.initial_bits(), "00");
    const auto h2 = builtin_ansatz("h2-universal");
    EXPECT_EQ(h2.n_params(), 8);
    EXPECT_EQ(h2.gate_count(), 9u);
    int cnots = 0;
    for (const auto &g : h2.gates()) {
        cnots += g.op.kind == GateKind::CNOT;
    }
    EXPECT_EQ(cnots, 1);
    const auto b = builtin_ansatz("toy-b");
    EXPECT_EQ(b.bindings(0).size(), 2u);
    EXPECT_EQ(b.initial_bits(), "01");
}

TEST(BuiltinAnsatz, LdcaCountFormula) {
    for (int n = 2; n <= 10; n += 2) {
        for (int m = 1; m <= 4; ++m) {
            const auto a = builtin_ansatz("ldca", {{"n", std::to_string(n)}, {"depth", std::to_string(m)}});
            EXPECT_EQ(a.n_params(), 5 * m * (n - 1) + 4 * n);
            EXPECT_EQ(a.n_params(), ldca_param_count(n, m));
        }
    }
}

TEST(BuiltinAnsatz, LdcaBrickOrder) {
    const auto a = builtin_ansatz("ldca", {{"n", "8"}, {"depth", "1"}});
    std::vector<int> block_starts;
    for (std::size_t g = 32; g < a.gate_count(); g += 5) {
        EXPECT_EQ(a.gates()[g].op.kind, GateKind::PauliExp);
        EXPECT_EQ(a.gates()[g].op.axes[0], PauliAxis::X);
        EXPECT_EQ(a.gates()[g].op.axes[1], PauliAxis::X);
        EXPECT_EQ(a.gates()[g + 4].op.axes[0], PauliAxis::Y);
        EXPECT_EQ(a.gates()[g + 4].op.axes[1], PauliAxis::X);
        block_starts.push_back(a.gates()[g].op.qubits[0]);
    }
    EXPECT_EQ(block_starts, (std::vector<int>{0, 2, 4, 6, 1, 3, 5}));
}

TEST(BuiltinAnsatz, Errors) {
    EXPECT_THROW(builtin_ansatz("nope"), std::invalid_argument);
    EXPECT_THROW(builtin_ansatz("ldca", {{"n", "5"}}), std::invalid_argument);
    EXPECT_THROW(builtin_ansatz("ldca", {{"n", "4"}, {"bits", "101"}}), std::invalid_argument);
    EXPECT_THROW(builtin_ansatz("toy-a", {{"n", "4"}}), std::invalid_argument);
    EXPECT_THROW(AnsatzCircuit(1, "0", {{GateOp::rx(0, 0), {0, 0}}}, 2), std::invalid_argument);
}

TEST(DerivativeRule, ReconstructsGateDerivative) {
    const double t = 0.731;
    const double h = 1e-6;
    const std::vector<GateOp> gates{GateOp::rx(0, t),
                                    GateOp::ry(1, t),
                                    GateOp::rz(0, t),
                                    GateOp::cry(0, 1, t),
                                    GateOp::cry(1, 0, t),
                                    GateOp::pauli_exp(0, PauliAxis::Y, 1, PauliAxis::X, t),
                                    GateOp::global_phase(t)};
    for (const auto &g : gates) {
        const dense_ref::Mat fd =
            (dense_ref::gate(g.with_angle(t + h), 2) - dense_ref::gate(g.with_angle(t - h), 2)) / (2 * h);
        dense_ref::Mat rule = dense_ref::Mat::Zero(4, 4);
        for (const auto &term : derivative_rule(g)) {
            rule += term.factor * dense_ref::gate(g, 2) * dense_ref::pauli_string(term.sigma, 2);
        }
        EXPECT_LT((fd - rule).norm(), 1e-8) << gate_kind_name(g.kind);
    }
    EXPECT_THROW(derivative_rule(GateOp::cnot(0, 1)), std::invalid_argument);
}

TEST(PrepareState, Examples) {
    const auto a = builtin_ansatz("toy-a");
    EXPECT_LT((dense_ref::to_vec(prepare_state(a, ParamVector::Zero(3))) - dense_ref::basis(2, "00")).norm(), 1e-15);
    const auto s = prepare_state(a, ParamVector{{pi, pi, 0.0}});
    EXPECT_NEAR(std::norm(s[3]), 1.0, 1e-14);
    const auto h2 = builtin_ansatz("h2-universal");
    EXPECT_NEAR(std::norm(prepare_state(h2, ParamVector::Zero(8))[0]), 1.0, 1e-15);
    EXPECT_THROW(prepare_state(a, ParamVector::Zero(2)), std::invalid_argument);
}

TEST(PrepareState, MatchesDenseCircuitProduct) {
    std::mt19937_64 rng(21);
    for (const auto &[name, a] : all_builtins()) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto theta = dense_ref::random_params(a.n_params(), rng);
            const auto s = prepare_state(a, theta);
            EXPECT_LT((dense_ref::to_vec(s) - dense_ref::prepare(a, theta)).norm(), 1e-12) << name;
            EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
            EXPECT_TRUE(s.normalised());
        }
    }
}

TEST(DerivativeState, SingleRotation) {
    const auto a = single_rx();
    for (double t : {0.0, 0.4, 2.2}) {
        const ParamVector theta{{t}};
        const auto d = derivative_state(a, theta, 0);
        const dense_ref::Vec expect = -0.5 * dense_ref::I1 * dense_ref::pauli('X') *
                                      dense_ref::rotation('X', t) * dense_ref::basis(1, "0");
        EXPECT_LT((dense_ref::to_vec(d) - expect).norm(), 1e-15);
        EXPECT_NEAR(d.norm_squared(), 0.25, 1e-15);
        EXPECT_LT((dense_ref::to_vec(d) - dense_ref::central_difference(a, theta, 0)).norm(), 1e-6);
        EXPECT_FALSE(d.normalised());
    }
}

TEST(DerivativeState, GlobalPhaseIsIPhi) {
    const auto a = builtin_ansatz("toy-a");
    const ParamVector theta{{0.3, 1.2, 0.7}};
    const auto d = derivative_state(a, theta, 2);
    EXPECT_LT((dense_ref::to_vec(d) - dense_ref::I1 * dense_ref::to_vec(prepare_state(a, theta))).norm(), 1e-15);
    EXPECT_NEAR(d.norm_squared(), 1.0, 1e-14);
}

TEST(DerivativeState, SharedParameterSumsInsertions) {
    const auto a = builtin_ansatz("toy-b");
    const ParamVector theta{{0.9, 2.1, 0.4}};
    const auto d = derivative_state(a, theta, 0);
    EXPECT_LT((dense_ref::to_vec(d) - dense_ref::central_difference(a, theta, 0)).norm(), 1e-6);
}

TEST(DerivativeState, AllBuiltinsMatchFiniteDifferences) {
    std::mt19937_64 rng(22);
    for (const auto &[name, a] : all_builtins()) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto theta = dense_ref::random_params(a.n_params(), rng);
            const auto phi = prepare_state(a, theta);
            const auto tangents = tangent_states(a, theta);
            ASSERT_EQ(static_cast<int>(tangents.size()), a.n_params());
            for (int i = 0; i < a.n_params(); ++i) {
                const auto d = derivative_state(a, theta, i);
                const double err = (dense_ref::to_vec(d) - dense_ref::central_difference(a, theta, i)).norm();
                EXPECT_LE(err, 1e-6) << name << " i=" << i;
                EXPECT_LT((dense_ref::to_vec(d) - dense_ref::to_vec(tangents[i])).norm(), 1e-14);
                EXPECT_NEAR(inner_product(phi, d).real(), 0.0, 1e-10);
            }
        }
    }
    const auto a = builtin_ansatz("toy-a");
    EXPECT_THROW(derivative_state(a, ParamVector::Zero(3), 3), std::out_of_range);
}

TEST(TangentBound, RotationAndPhase) {
    const auto a = builtin_ansatz("toy-a");
    EXPECT_DOUBLE_EQ(a.tangent_bound(0), 0.5);
    EXPECT_DOUBLE_EQ(a.tangent_bound(1), 0.5);
    EXPECT_DOUBLE_EQ(a.tangent_bound(2), 1.0);
    EXPECT_DOUBLE_EQ(builtin_ansatz("toy-b").tangent_bound(0), 1.0);
}
