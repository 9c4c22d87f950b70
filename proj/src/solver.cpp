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

#include "varqite/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

namespace varqite {

SolverKind parse_solver_kind(const std::string &name) {
    if (name == "tikhonov") {
        return SolverKind::Tikhonov;
    }
    if (name == "tsvd") {
        return SolverKind::TruncatedSvd;
    }
    if (name == "pinv" || name == "eigen-pinv") {
        return SolverKind::EigenPinv;
    }
    throw std::invalid_argument("unknown solver '" + name + "' (expected tikhonov, tsvd, pinv)");
}

std::string solver_kind_name(SolverKind k) {
    switch (k) {
        case SolverKind::Tikhonov:
            return "tikhonov";
        case SolverKind::TruncatedSvd:
            return "tsvd";
        case SolverKind::EigenPinv:
            return "pinv";
    }
    return "?";
}

void SolverSpec::validate() const {
    if (!(lambda_min > 0 && lambda_max > 0 && lambda_min <= lambda_max)) {
        throw std::invalid_argument("tikhonov bounds need 0 < lambda_min <= lambda_max");
    }
    if (!(tsvd_cutoff > 0 && tsvd_cutoff < 1)) {
        throw std::invalid_argument("tsvd cutoff must lie in (0, 1)");
    }
    if (!(pinv_threshold >= 0)) {
        throw std::invalid_argument("pinv threshold must be non-negative");
    }
}

namespace {

void check_dims(const AMatrix &a, const CVector &c) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("A must be square");
    }
    if (a.rows() != c.size()) {
        throw std::invalid_argument("A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " but C has length " + std::to_string(c.size()));
    }
}

struct Spectral {
    Eigen::VectorXd s;     // singular values
    Eigen::VectorXd beta;  // U^T C
    Eigen::MatrixXd v;
    double outside2;       // |C|^2 - |beta|^2, the part of C no x can reach
};

Spectral decompose(const AMatrix &a, const CVector &c) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Spectral sp{svd.singularValues(), svd.matrixU().transpose() * c, svd.matrixV(), 0.0};
    sp.outside2 = std::max(0.0, c.squaredNorm() - sp.beta.squaredNorm());
    return sp;
}

Eigen::VectorXd filtered_solution(const Spectral &sp, double lambda) {
    Eigen::VectorXd coef(sp.s.size());
    for (Eigen::Index i = 0; i < sp.s.size(); ++i) {
        const double s = sp.s[i];
        const double denom = s * s + lambda * lambda;
        coef[i] = denom > 0 ? s * sp.beta[i] / denom : 0.0;
    }
    return sp.v * coef;
}

LCurvePoint lcurve_point(const Spectral &sp, double lambda) {
    // Filter factors f = s^2 / (s^2 + lambda^2) and their lambda-derivatives give
    // |x|^2 = sum f^2 xi^2 and |r|^2 = sum (1 - f)^2 beta^2 + |C_perp|^2 together
    // with their first two derivatives, xi = beta / s.
    double x2 = 0.0, dx2 = 0.0, ddx2 = 0.0;
    double r2 = sp.outside2, dr2 = 0.0, ddr2 = 0.0;
    for (Eigen::Index i = 0; i < sp.s.size(); ++i) {
        const double s2 = sp.s[i] * sp.s[i];
        const double b2 = sp.beta[i] * sp.beta[i];
        const double f = s2 / (s2 + lambda * lambda);
        const double f1 = -2.0 * f * (1.0 - f) / lambda;
        const double f2 = -f1 * (3.0 - 4.0 * f) / lambda;
        if (s2 > 0) {
            const double xi2 = b2 / s2;
            x2 += f * f * xi2;
            dx2 += 2.0 * f * f1 * xi2;
            ddx2 += 2.0 * (f1 * f1 + f * f2) * xi2;
        }
        r2 += (1.0 - f) * (1.0 - f) * b2;
        dr2 += -2.0 * (1.0 - f) * f1 * b2;
        ddr2 += 2.0 * (f1 * f1 - (1.0 - f) * f2) * b2;
    }
    LCurvePoint p{lambda, std::sqrt(r2), std::sqrt(x2), -std::numeric_limits<double>::infinity()};
    if (x2 > 0 && r2 > 0) {
        // Derivatives of log|x| and log|r| with respect to lambda.
        const double a1 = dx2 / (2.0 * x2);
        const double a2 = ddx2 / (2.0 * x2) - dx2 * dx2 / (2.0 * x2 * x2);
        const double b1 = dr2 / (2.0 * r2);
        const double b2 = ddr2 / (2.0 * r2) - dr2 * dr2 / (2.0 * r2 * r2);
        const double speed = b1 * b1 + a1 * a1;
        if (speed > 0) {
            p.curvature = (b1 * a2 - b2 * a1) / std::pow(speed, 1.5);
        }
    }
    return p;
}

// Signed curvature of the circle through three consecutive points of the curve.
double menger_curvature(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double ax = x1 - x0, ay = y1 - y0;
    const double bx = x2 - x1, by = y2 - y1;
    const double den = std::hypot(ax, ay) * std::hypot(bx, by) * std::hypot(x2 - x0, y2 - y0);
    return den > 0 ? 2.0 * (ax * by - ay * bx) / den : -std::numeric_limits<double>::infinity();
}

double choose_lambda(const Spectral &sp, double lambda_min, double lambda_max) {
    const Eigen::Index m = sp.s.size();
    if (m == 0 || !(sp.s[0] > 0)) {
        return std::sqrt(lambda_min * lambda_max);
    }
    const double smax = sp.s[0];
    const double smin = std::max(sp.s[m - 1], smax * std::numeric_limits<double>::epsilon());
    std::vector<double> lam(kLCurveGridPoints), lr(kLCurveGridPoints), lx(kLCurveGridPoints);
    for (int i = 0; i < kLCurveGridPoints; ++i) {
        lam[i] = smin * std::pow(smax / smin, static_cast<double>(i) / (kLCurveGridPoints - 1));
        const auto p = lcurve_point(sp, lam[i]);
        lr[i] = std::log(p.residual_norm);
        lx[i] = std::log(p.solution_norm);
    }
    int best = -1;
    double best_k = 0.0;
    for (int i = 1; i + 1 < kLCurveGridPoints; ++i) {
        const double k = menger_curvature(lr[i - 1], lx[i - 1], lr[i], lx[i], lr[i + 1], lx[i + 1]);
        if (std::isfinite(k) && (best < 0 || k > best_k)) {
            best = i;
            best_k = k;
        }
    }
    // A degenerate curve (C = 0, or C orthogonal to the range) has no corner.
    const double lambda = best < 0 ? std::sqrt(lambda_min * lambda_max) : lam[best];
    return std::clamp(lambda, lambda_min, lambda_max);
}

}  // namespace

Eigen::VectorXd tikhonov_solve(const AMatrix &a, const CVector &c, double lambda) {
    check_dims(a, c);
    if (!(lambda >= 0)) {
        throw std::invalid_argument("lambda must be non-negative");
    }
    return filtered_solution(decompose(a, c), lambda);
}

std::vector<LCurvePoint> lcurve(const AMatrix &a, const CVector &c, const std::vector<double> &lambdas) {
    check_dims(a, c);
    const Spectral sp = decompose(a, c);
    std::vector<LCurvePoint> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        if (!(lambda > 0)) {
            throw std::invalid_argument("L-curve lambdas must be positive");
        }
        out.push_back(lcurve_point(sp, lambda));
    }
    return out;
}

double lcurve_corner(const AMatrix &a, const CVector &c, double lambda_min, double lambda_max) {
    check_dims(a, c);
    return choose_lambda(decompose(a, c), lambda_min, lambda_max);
}

SolveResult solve_theta_dot(const AMatrix &a, const CVector &c, const SolverSpec &spec) {
    check_dims(a, c);
    spec.validate();
    const Eigen::Index n = a.rows();
    switch (spec.kind) {
        case SolverKind::Tikhonov: {
            const Spectral sp = decompose(a, c);
            const double lambda = choose_lambda(sp, spec.lambda_min, spec.lambda_max);
            return {filtered_solution(sp, lambda), lambda};
        }
        case SolverKind::TruncatedSvd: {
            const Spectral sp = decompose(a, c);
            Eigen::VectorXd coef = Eigen::VectorXd::Zero(n);
            const double smax = sp.s.size() ? sp.s[0] : 0.0;
            for (Eigen::Index i = 0; i < sp.s.size(); ++i) {
                if (sp.s[i] > 0 && sp.s[i] >= spec.tsvd_cutoff * smax) {
                    coef[i] = sp.beta[i] / sp.s[i];
                }
            }
            return {sp.v * coef, std::nullopt};
        }
        case SolverKind::EigenPinv: {
            const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
            const Eigen::VectorXd proj = es.eigenvectors().transpose() * c;
            Eigen::VectorXd coef = Eigen::VectorXd::Zero(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (es.eigenvalues()[i] > spec.pinv_threshold) {
                    coef[i] = proj[i] / es.eigenvalues()[i];
                }
            }
            return {es.eigenvectors() * coef, std::nullopt};
        }
    }
    throw std::logic_error("unhandled solver kind");
}

}  // namespace varqite
