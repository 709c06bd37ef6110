// Copyright 2026 The inertia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "inertia/diagnostics.hpp"
#include "inertia/errors.hpp"

namespace inertia {

namespace {

struct GaussianTerms {
    double exponent;  // d^T (s1 + s2)^-1 d / 2
    double denom;     // sqrt(Delta + delta) - sqrt(delta)
    double denom_minus_one;
};

// Single-mode Gaussian fidelity with vacuum covariance I/2:
// F = exp(-d^T (s1+s2)^-1 d / 2) / (sqrt(Delta + delta) - sqrt(delta)),
// Delta = det(s1 + s2), delta = 4 (det s1 - 1/4)(det s2 - 1/4).
GaussianTerms gaussian_terms(const GaussianState& a, const GaussianState& b) {
    const Eigen::Matrix2d sum = a.cov + b.cov;
    const Eigen::Vector2d d = a.mean - b.mean;
    const double big = sum.determinant();
    const double small = std::max(0.0, 4.0 * (a.cov.determinant() - 0.25) * (b.cov.determinant() - 0.25));
    GaussianTerms g{};
    g.exponent = 0.5 * d.dot(sum.ldlt().solve(d));
    const double root_small = std::sqrt(small);
    const double root_total = std::sqrt(big + small);
    g.denom = root_total - root_small;
    // (Delta + delta) - (1 + sqrt(delta))^2 = Delta - 1 - 2 sqrt(delta)
    g.denom_minus_one = (big - 1.0 - 2.0 * root_small) / (root_total + 1.0 + root_small);
    return g;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
    const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

struct FidelityVisitor {
    double operator()(const GaussianState& a, const GaussianState& b) const { return gaussian_fidelity(a, b); }
    double operator()(const BlochState& a, const BlochState& b) const { return bloch_fidelity(a, b); }
    double operator()(const TwoQubitState& a, const TwoQubitState& b) const {
        return uhlmann_fidelity(a.rho, b.rho);
    }
    template <class A, class B>
    double operator()(const A&, const B&) const {
        throw std::invalid_argument("fidelity: states of different kinds");
    }
};

struct InfidelityVisitor {
    double operator()(const GaussianState& a, const GaussianState& b) const { return gaussian_infidelity(a, b); }
    double operator()(const BlochState& a, const BlochState& b) const { return bloch_infidelity(a, b); }
    double operator()(const TwoQubitState& a, const TwoQubitState& b) const {
        return 1.0 - uhlmann_fidelity(a.rho, b.rho);
    }
    template <class A, class B>
    double operator()(const A&, const B&) const {
        throw std::invalid_argument("fidelity: states of different kinds");
    }
};

} // namespace

double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
    const GaussianTerms g = gaussian_terms(a, b);
    return std::exp(-g.exponent) / g.denom;
}

double gaussian_infidelity(const GaussianState& a, const GaussianState& b) {
    const GaussianTerms g = gaussian_terms(a, b);
    // 1 - e^{-x}/D = ((D - 1) + (1 - e^{-x})) / D
    return (g.denom_minus_one - std::expm1(-g.exponent)) / g.denom;
}

double bloch_fidelity(const BlochState& a, const BlochState& b) {
    const double purity = std::max(0.0, (1.0 - a.r.squaredNorm()) * (1.0 - b.r.squaredNorm()));
    return 0.5 * (1.0 + a.r.dot(b.r) + std::sqrt(purity));
}

double bloch_infidelity(const BlochState& a, const BlochState& b) {
    // 1 - F = (|d|^2 - |r1 x d|^2) / (2 [(1 - r1.r2) + sqrt((1-|r1|^2)(1-|r2|^2))]), d = r2 - r1
    const Eigen::Vector3d d = b.r - a.r;
    const double purity = std::max(0.0, (1.0 - a.r.squaredNorm()) * (1.0 - b.r.squaredNorm()));
    const double denom = (1.0 - a.r.dot(b.r)) + std::sqrt(purity);
    if (denom < 1e-8) {
        return 1.0 - bloch_fidelity(a, b);
    }
    const double numer = d.squaredNorm() - a.r.cross(d).squaredNorm();
    return 0.5 * numer / denom;
}

double uhlmann_fidelity(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    // tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) = || sqrt(rho1) sqrt(rho2) ||_nuclear
    const ComplexMatrix m = psd_sqrt(rho1) * psd_sqrt(rho2);
    const double nuclear = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues().sum();
    return nuclear * nuclear;
}

double fidelity(const DensityState& a, const DensityState& b) {
    validate_state(a);
    validate_state(b);
    return std::visit(FidelityVisitor{}, a, b);
}

double infidelity(const DensityState& a, const DensityState& b) {
    validate_state(a);
    validate_state(b);
    return std::visit(InfidelityVisitor{}, a, b);
}

double neglog_infidelity(double one_minus_f) {
    return -std::log10(std::max(one_minus_f, 1e-16));
}

} // namespace inertia
