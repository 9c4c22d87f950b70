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

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace varqite {

using AMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXd;

enum class SolverKind { Tikhonov, TruncatedSvd, EigenPinv };

SolverKind parse_solver_kind(const std::string &name);
std::string solver_kind_name(SolverKind k);

struct SolverSpec {
    SolverKind kind = SolverKind::Tikhonov;
    double lambda_min = 1e-4;
    double lambda_max = 1e-2;
    /// Relative singular-value cutoff for the truncated SVD.
    double tsvd_cutoff = 1e-8;
    /// Absolute eigenvalue threshold for the eigen pseudo-inverse.
    double pinv_threshold = 1e-12;

    void validate() const;
};

struct SolveResult {
    Eigen::VectorXd theta_dot;
    /// Regularisation strength actually used (Tikhonov only).
    std::optional<double> lambda;
};

/// Solves A x = C under the chosen regularisation:
///   tikhonov: argmin |C - A x|^2 + lambda^2 |x|^2, lambda from the L-curve corner
///   tsvd:     pseudo-inverse dropping singular values below cutoff * s_max
///   eigen-pinv: invert eigenvalues above the threshold, zero the rest
SolveResult solve_theta_dot(const AMatrix &a, const CVector &c, const SolverSpec &spec);

/// Tikhonov solution at a fixed lambda (penalty weight lambda^2).
Eigen::VectorXd tikhonov_solve(const AMatrix &a, const CVector &c, double lambda);

struct LCurvePoint {
    double lambda = 0.0;
    double residual_norm = 0.0;  // |C - A x|
    double solution_norm = 0.0;  // |x|
    /// Signed curvature of (log residual_norm, log solution_norm) at this lambda;
    /// largest at the corner.
    double curvature = 0.0;
};

/// Evaluates the L-curve with its closed-form curvature at each lambda.
std::vector<LCurvePoint> lcurve(const AMatrix &a, const CVector &c, const std::vector<double> &lambdas);

/// Number of lambda values sampled when locating the L-curve corner.
inline constexpr int kLCurveGridPoints = 200;

/// L-curve corner: lambda is sampled log-uniformly between the smallest and largest
/// singular values of A, each interior sample is scored by the curvature of the
/// circle through it and its two neighbours, and the best sample is clamped to
/// [lmin, lmax].
double lcurve_corner(const AMatrix &a, const CVector &c, double lambda_min, double lambda_max);

}  // namespace varqite
