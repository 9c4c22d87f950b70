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

#include "varqite/engine.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <string>

#include "varqite/oracle.hpp"

namespace varqite {

Method parse_method(const std::string &name) {
    if (name == "imag" || name == "imaginary-time") {
        return Method::ImaginaryTime;
    }
    if (name == "gd" || name == "gradient-descent") {
        return Method::GradientDescent;
    }
    throw std::invalid_argument("unknown method '" + name + "' (expected imag or gd)");
}

std::string method_name(Method m) { return m == Method::ImaginaryTime ? "imag" : "gd"; }

void EvolutionConfig::validate() const {
    if (!(dt >= 0) || !std::isfinite(dt)) {
        throw std::invalid_argument("time step must be finite and non-negative");
    }
    if (n_iterations < 1) {
        throw std::invalid_argument("need at least one iteration");
    }
    solver.validate();
    if (noise) {
        noise->validate();
    }
}

namespace {

NoiseDraw make_draw(const AnsatzCircuit &a, const NoiseConfig &cfg, std::uint64_t seed, std::uint32_t iteration) {
    const int gates = cfg.gate_count.value_or(static_cast<int>(a.gate_count()));
    return {cfg, skew_factor(cfg.gate_error_rate, gates), seed, iteration};
}

}  // namespace

AMatrix a_matrix_from_tangents(const AnsatzCircuit &a, std::span<const StateVector> tangents,
                               const std::optional<NoiseDraw> &noise) {
    const auto n = static_cast<int>(tangents.size());
    if (n != a.n_params()) {
        throw std::invalid_argument("tangent count does not match parameter count");
    }
    AMatrix out(n, n);
    const auto n_pairs = static_cast<std::int64_t>(n) * (n + 1) / 2;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t p = 0; p < n_pairs; ++p) {
        // Unrank p into (i, j), i <= j, row-major over the upper triangle.
        int i = 0;
        std::int64_t rest = p;
        while (rest >= n - i) {
            rest -= n - i;
            ++i;
        }
        const int j = i + static_cast<int>(rest);
        double v = inner_product(tangents[i], tangents[j]).real();
        if (noise) {
            const double r = a.tangent_bound(i) * a.tangent_bound(j);
            auto stream = noise_stream(noise->seed, noise->iteration, NoiseChannel::AEntry,
                                       static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
            v = sample_expectation(std::clamp(v, -r, r), r, noise->config.shots_a, noise->eps, stream);
        }
        out(i, j) = v;
        out(j, i) = v;
    }
    return out;
}

CVector c_vector_from_tangents(const AnsatzCircuit &a, std::span<const StateVector> tangents, const StateVector &phi,
                               const Hamiltonian &h, const std::optional<NoiseDraw> &noise) {
    const auto n = static_cast<int>(tangents.size());
    if (n != a.n_params()) {
        throw std::invalid_argument("tangent count does not match parameter count");
    }
    CVector out(n);
    if (!noise) {
        const StateVector h_phi = apply_hamiltonian(phi, h);
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            out[i] = -inner_product(tangents[i], h_phi).real();
        }
        return out;
    }
    // Each (parameter, term) expectation is measured separately. Identity terms
    // contribute Re<d_i phi|phi> = 0 exactly and are not measured.
    std::vector<std::pair<std::size_t, StateVector>> term_states;
    for (std::size_t t = 0; t < h.terms().size(); ++t) {
        if (!h.terms()[t].string.is_identity()) {
            term_states.emplace_back(t, apply_pauli_string(phi, h.terms()[t].string));
        }
    }
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const double bound = a.tangent_bound(i);
        double acc = 0.0;
        for (const auto &[t, h_phi] : term_states) {
            const double raw = -inner_product(tangents[i], h_phi).real() / bound;
            auto stream = noise_stream(noise->seed, noise->iteration, NoiseChannel::CTerm,
                                       static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t));
            const double sampled =
                sample_expectation(std::clamp(raw, -1.0, 1.0), 1.0, noise->config.shots_c, noise->eps, stream);
            acc += h.terms()[t].coefficient * bound * sampled;
        }
        out[i] = acc;
    }
    return out;
}

AMatrix compute_a_matrix(const AnsatzCircuit &a, const ParamVector &theta, const std::optional<NoiseConfig> &noise,
                         std::uint32_t iteration) {
    const auto tangents = tangent_states(a, theta);
    std::optional<NoiseDraw> draw;
    if (noise) {
        noise->validate();
        draw = make_draw(a, *noise, noise->seed, iteration);
    }
    return a_matrix_from_tangents(a, tangents, draw);
}

CVector compute_c_vector(const AnsatzCircuit &a, const ParamVector &theta, const Hamiltonian &h,
                         const std::optional<NoiseConfig> &noise, std::uint32_t iteration) {
    const auto tangents = tangent_states(a, theta);
    std::optional<NoiseDraw> draw;
    if (noise) {
        noise->validate();
        draw = make_draw(a, *noise, noise->seed, iteration);
    }
    return c_vector_from_tangents(a, tangents, prepare_state(a, theta), h, draw);
}

ParamVector step(const ParamVector &theta, Method method, double dt, const AMatrix &a, const CVector &c,
                 const SolverSpec &solver) {
    if (c.size() != theta.size()) {
        throw std::invalid_argument("C and theta lengths differ");
    }
    if (method == Method::GradientDescent) {
        return theta + c * dt;
    }
    const auto sol = solve_theta_dot(a, c, solver);
    return theta + sol.theta_dot * dt;
}

std::vector<TrajectoryRecord> evolve(const AnsatzCircuit &a, const Hamiltonian &h, const ParamVector &theta0,
                                     const EvolutionConfig &cfg, const TrajectoryObserver &observer) {
    cfg.validate();
    a.check_params(theta0);
    if (a.n_qubits() != h.n_qubits()) {
        throw std::invalid_argument("ansatz has " + std::to_string(a.n_qubits()) + " qubits, Hamiltonian has " +
                                    std::to_string(h.n_qubits()));
    }
    std::optional<ImaginaryTimePropagator> exact;
    if (cfg.record_fidelity && h.n_qubits() <= kFidelityMaxQubits) {
        exact.emplace(h, prepare_state(a, theta0));
    }
    const std::uint64_t noise_seed = cfg.noise ? cfg.seed ^ (cfg.noise->seed * 0x9E3779B97F4A7C15ull) : 0;

    std::vector<TrajectoryRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.n_iterations) + 1);
    ParamVector theta = theta0;
    for (int it = 0;; ++it) {
        const StateVector phi = prepare_state(a, theta);
        TrajectoryRecord rec{it, it * cfg.dt, theta, expectation(phi, h), std::nullopt};
        if (!std::isfinite(rec.energy)) {
            throw EvolutionError("non-finite energy at iteration " + std::to_string(it));
        }
        if (exact) {
            rec.fidelity = fidelity(phi, exact->evolve(rec.tau));
        }
        records.push_back(rec);
        if (observer && !observer(records.back())) {
            break;
        }
        if (it == cfg.n_iterations) {
            break;
        }

        const auto tangents = tangent_states(a, theta);
        std::optional<NoiseDraw> draw;
        if (cfg.noise) {
            draw = make_draw(a, *cfg.noise, noise_seed, static_cast<std::uint32_t>(it));
        }
        const CVector c = c_vector_from_tangents(a, tangents, phi, h, draw);
        Eigen::VectorXd theta_dot;
        if (cfg.method == Method::ImaginaryTime) {
            const AMatrix am = a_matrix_from_tangents(a, tangents, draw);
            theta_dot = solve_theta_dot(am, c, cfg.solver).theta_dot;
        } else {
            theta_dot = c;
        }
        if (!theta_dot.allFinite() || theta_dot.norm() > kMaxThetaDotNorm) {
            throw EvolutionError("parameter velocity diverged at iteration " + std::to_string(it) +
                                 " (|theta_dot| = " + std::to_string(theta_dot.norm()) + ")");
        }
        theta += theta_dot * cfg.dt;
    }
    return records;
}

void write_trajectory_jsonl(std::ostream &out, std::span<const TrajectoryRecord> records) {
    for (const auto &r : records) {
        nlohmann::ordered_json j;
        j["iteration"] = r.iteration;
        j["tau"] = r.tau;
        j["energy"] = r.energy;
        j["fidelity"] = r.fidelity ? nlohmann::ordered_json(*r.fidelity) : nlohmann::ordered_json(nullptr);
        j["params"] = std::vector<double>(r.params.data(), r.params.data() + r.params.size());
        out << j.dump() << '\n';
    }
}

std::vector<TrajectoryRecord> read_trajectory_jsonl(std::istream &in) {
    std::vector<TrajectoryRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto j = nlohmann::json::parse(line);
        TrajectoryRecord r;
        r.iteration = j.at("iteration").get<int>();
        r.tau = j.at("tau").get<double>();
        r.energy = j.at("energy").get<double>();
        if (!j.at("fidelity").is_null()) {
            r.fidelity = j.at("fidelity").get<double>();
        }
        const auto p = j.at("params").get<std::vector<double>>();
        r.params = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace varqite
