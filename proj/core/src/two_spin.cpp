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

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>


#include "inertia/errors.hpp"
#include "quadrature.hpp"
#include "inertia/models.hpp"

namespace inertia::models {

namespace {

constexpr cplx I{0.0, 1.0};

// Real part of a single-spin block, B = i A.
Eigen::Matrix3d spin_block(double chi) {
    Eigen::Matrix3d A;
    A << 0.0, chi, 0.0, -chi, 0.0, 1.0, 0.0, -1.0, 0.0;
    return A;
}

Eigen::Matrix3d spin_block_gradient() {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    A(0, 1) = 1.0;
    A(1, 0) = -1.0;
    return A;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix local_from(const Eigen::Matrix3d& a1, const Eigen::Matrix3d& a2) {
    ComplexMatrix B = ComplexMatrix::Zero(6, 6);
    B.topLeftCorner(3, 3) = I * a1.cast<cplx>();
    B.bottomRightCorner(3, 3) = I * a2.cast<cplx>();
    return B;
}

// Kronecker sum a1 (x) 1 + 1 (x) a2, index 3a + b.
ComplexMatrix nonlocal_from(const Eigen::Matrix3d& a1, const Eigen::Matrix3d& a2) {
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    return I * (kron(a1.cast<cplx>(), id) + kron(id, a2.cast<cplx>()));
}

ComplexMatrix full_from(const ComplexMatrix& local, const ComplexMatrix& nonlocal) {
    ComplexMatrix B = ComplexMatrix::Zero(16, 16);
    B.block(0, 0, 6, 6) = local;
    B.block(6, 6, 9, 9) = nonlocal;
    return B;
}

RealVector chi_at(double t, const TwoSpinParams& p) {
    RealVector c(2);
    if (p.kind == CircuitKind::Linear) {
        c = p.chi0 + p.accel * t;
    } else {
        const double w = 2.0 * std::numbers::pi / p.period;
        c(0) = p.center(0) + p.radius * std::cos(w * t);
        c(1) = p.center(1) + p.radius * std::sin(w * t);
    }
    return c;
}

RealVector chi_rate_at(double t, const TwoSpinParams& p) {
    RealVector c(2);
    if (p.kind == CircuitKind::Linear) {
        c = p.accel;
    } else {
        const double w = 2.0 * std::numbers::pi / p.period;
        c(0) = -p.radius * w * std::sin(w * t);
        c(1) = p.radius * w * std::cos(w * t);
    }
    return c;
}

double rabi_at(double t, const TwoSpinParams& p) {
    const double r = p.rabi0 + p.rabi_rate * t;
    if (!(r > 0.0) || !(t >= 0.0)) {
        std::ostringstream msg;
        msg << "Rabi frequency not positive at t = " << t;
        throw DomainExceeded(msg.str());
    }
    return r;
}

} // namespace

std::pair<ComplexMatrix, ComplexMatrix> two_spin_generators(double chi1, double chi2) {
    const Eigen::Matrix3d a1 = spin_block(chi1);
    const Eigen::Matrix3d a2 = spin_block(chi2);
    return {local_from(a1, a2), nonlocal_from(a1, a2)};
}

ComplexMatrix two_spin_generator(double chi1, double chi2) {
    const auto [local, nonlocal] = two_spin_generators(chi1, chi2);
    return full_from(local, nonlocal);
}

GeneratorFamily two_spin_local_family() {
    return GeneratorFamily(
        "two-spin-local", 6, 2,
        [](const RealVector& chi) { return two_spin_generators(chi(0), chi(1)).first; },
        [](const RealVector&, Index i) {
            const Eigen::Matrix3d z = Eigen::Matrix3d::Zero();
            return i == 0 ? local_from(spin_block_gradient(), z) : local_from(z, spin_block_gradient());
        },
        BlockList{{0, 1, 2}, {3, 4, 5}});
}

GeneratorFamily two_spin_nonlocal_family() {
    return GeneratorFamily(
        "two-spin-nonlocal", 9, 2,
        [](const RealVector& chi) { return two_spin_generators(chi(0), chi(1)).second; },
        [](const RealVector&, Index i) {
            const Eigen::Matrix3d z = Eigen::Matrix3d::Zero();
            return i == 0 ? nonlocal_from(spin_block_gradient(), z) : nonlocal_from(z, spin_block_gradient());
        });
}

GeneratorFamily two_spin_family() {
    return GeneratorFamily(
        "two-spin", 16, 2, [](const RealVector& chi) { return two_spin_generator(chi(0), chi(1)); },
        [](const RealVector&, Index i) {
            const Eigen::Matrix3d z = Eigen::Matrix3d::Zero();
            const Eigen::Matrix3d g = spin_block_gradient();
            return i == 0 ? full_from(local_from(g, z), nonlocal_from(g, z))
                          : full_from(local_from(z, g), nonlocal_from(z, g));
        },
        BlockList{{0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9, 10, 11, 12, 13, 14}, {15}});
}

RealVector two_spin_rescale_weights() {
    RealVector w = RealVector::Zero(16);
    w.head(6).setConstant(1.0);
    w.segment(6, 9).setConstant(2.0);
    return w;
}

double two_spin_domain_end(const TwoSpinParams& p) {
    if (p.rabi_rate < 0.0) {
        return -p.rabi0 / p.rabi_rate;
    }
    return std::numeric_limits<double>::infinity();
}

Protocol two_spin_protocol(const TwoSpinParams& p) {
    Protocol pr;
    pr.omega = [p](double t) { return rabi_at(t, p); };
    pr.chi = [p](double t) { return chi_at(t, p); };
    pr.chi_rate = [p](double t) { return chi_rate_at(t, p); };
    pr.domain_end = two_spin_domain_end(p);
    return pr;
}

Eigen::Vector2d two_spin_alpha(double t, const TwoSpinParams& p) {
    Eigen::Vector2d a = p.alpha0;
    if (t == 0.0) {
        return a;
    }
    for (Index i = 0; i < 2; ++i) {
        const double integral = detail::integrate(
            [&](double s) { return chi_at(s, p)(i) * rabi_at(s, p); }, 0.0, t, 1e-13);
        a(i) -= integral;
    }
    return a;
}

DrivenSystem two_spin_system(const TwoSpinParams& p) {
    DrivenSystem sys;
    sys.family = two_spin_family();
    sys.protocol = two_spin_protocol(p);
    sys.rescale_weights = two_spin_rescale_weights();
    return sys;
}

std::vector<ComplexMatrix> two_spin_operators(double t, const TwoSpinParams& p) {
    const double R = rabi_at(t, p);
    const Eigen::Vector2d alpha = two_spin_alpha(t, p);
    const auto s1 = tls_operators(R * std::cos(alpha(0)), R * std::sin(alpha(0)));
    const auto s2 = tls_operators(R * std::cos(alpha(1)), R * std::sin(alpha(1)));
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    std::vector<ComplexMatrix> ops;
    ops.reserve(16);
    for (int a = 0; a < 3; ++a) {
        ops.push_back(kron(s1[static_cast<std::size_t>(a)], id));
    }
    for (int b = 0; b < 3; ++b) {
        ops.push_back(kron(id, s2[static_cast<std::size_t>(b)]));
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            ops.push_back(kron(s1[static_cast<std::size_t>(a)], s2[static_cast<std::size_t>(b)]));
        }
    }
    ops.push_back(ComplexMatrix::Identity(4, 4));
    return ops;
}

LiouvilleVector two_spin_initial_vector(const TwoSpinParams& p) {
    const ComplexMatrix rho = kron(density_matrix(BlochState{p.bloch1}), density_matrix(BlochState{p.bloch2}));
    const auto ops = two_spin_operators(0.0, p);
    LiouvilleVector v;
    v.coeffs.resize(16);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        v.coeffs(static_cast<Index>(i)) = (rho * ops[i]).trace().real();
    }
    return v;
}

TwoQubitState two_spin_reconstruct(const ComplexVector& v, double t, const TwoSpinParams& p) {
    // rho = sum_j x_j O_j with Gram matrix tr(O_i O_j) x = <O_i>.
    const auto ops = two_spin_operators(t, p);
    const Index n = static_cast<Index>(ops.size());
    Eigen::MatrixXd gram(n, n);
    Eigen::VectorXd rhs(n);
    for (Index i = 0; i < n; ++i) {
        rhs(i) = v(i).real();
        for (Index j = 0; j < n; ++j) {
            gram(i, j) = (ops[static_cast<std::size_t>(i)] * ops[static_cast<std::size_t>(j)]).trace().real();
        }
    }
    const Eigen::VectorXd x = gram.partialPivLu().solve(rhs);
    TwoQubitState s;
    s.rho = ComplexMatrix::Zero(4, 4);
    for (Index j = 0; j < n; ++j) {
        s.rho += x(j) * ops[static_cast<std::size_t>(j)];
    }
    return s;
}

} // namespace inertia::models
