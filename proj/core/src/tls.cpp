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
#include <sstream>

#include "inertia/errors.hpp"
#include "inertia/models.hpp"

namespace inertia::models {

namespace {

constexpr cplx I{0.0, 1.0};

double initial_z(const TLSParams& p) {
    return p.omega0 / std::hypot(p.omega0, p.epsilon);
}

// Smallest t > 0 where the quadratic z(t) reaches +1 or -1.
double first_crossing(double c2, double c1, double c0) {
    const double inf = std::numeric_limits<double>::infinity();
    double best = inf;
    for (double level : {1.0, -1.0}) {
        const double d0 = c0 - level;
        if (c2 == 0.0) {
            if (c1 != 0.0 && -d0 / c1 > 0.0) {
                best = std::min(best, -d0 / c1);
            }
            continue;
        }
        const double disc = c1 * c1 - 4.0 * c2 * d0;
        if (disc < 0.0) {
            continue;
        }
        const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
        for (double t : {q / c2, q != 0.0 ? d0 / q : inf}) {
            if (t > 0.0) {
                best = std::min(best, t);
            }
        }
    }
    return best;
}

} // namespace

ComplexMatrix tls_generator(double chi) {
    ComplexMatrix B = ComplexMatrix::Zero(3, 3);
    B(0, 1) = chi;
    B(1, 0) = -chi;
    B(1, 2) = 1.0;
    B(2, 1) = -1.0;
    return I * B;
}

ComplexMatrix tls_generator_gradient() {
    ComplexMatrix D = ComplexMatrix::Zero(3, 3);
    D(0, 1) = 1.0;
    D(1, 0) = -1.0;
    return I * D;
}

RealVector tls_rescale_weights() {
    RealVector w(4);
    w << 1.0, 1.0, 1.0, 0.0;
    return w;
}

double tls_domain_end(const TLSParams& p) {
    return first_crossing(0.5 * p.epsilon * p.accel, p.epsilon * p.chi0, initial_z(p));
}

TLSProtocolPoint tls_protocol(double t, const TLSParams& p) {
    const double z = initial_z(p) + p.epsilon * (p.chi0 * t + 0.5 * p.accel * t * t);
    if (!(std::abs(z) < 1.0) || !(t >= 0.0)) {
        std::ostringstream msg;
        msg << "qubit protocol leaves |z| < 1 at t = " << t;
        throw DomainExceeded(msg.str());
    }
    const double zdot = p.epsilon * (p.chi0 + p.accel * t);
    const double s = std::sqrt(1.0 - z * z);
    TLSProtocolPoint q{};
    q.z = z;
    q.omega = p.epsilon * z / s;
    q.rabi = p.epsilon / s;
    q.omega_dot = p.epsilon * zdot / (s * s * s);
    q.rabi_dot = p.epsilon * z * zdot / (s * s * s);
    q.mu = zdot / p.epsilon;
    return q;
}

double tls_solve_chi0(double epsilon, double rabi0, double rabi_f, double accel, double tf) {
    if (!(tf > 0.0) || !(epsilon > 0.0) || !(rabi0 > epsilon) || !(rabi_f > epsilon)) {
        throw std::invalid_argument("tls_solve_chi0: need tf > 0 and Rabi frequencies above epsilon");
    }
    const double z0 = std::sqrt(rabi0 * rabi0 - epsilon * epsilon) / rabi0;
    const double zf = std::sqrt(rabi_f * rabi_f - epsilon * epsilon) / rabi_f;
    const double chi0 = ((zf - z0) / epsilon - 0.5 * accel * tf * tf) / tf;
    TLSParams p;
    p.epsilon = epsilon;
    p.omega0 = std::sqrt(rabi0 * rabi0 - epsilon * epsilon);
    p.chi0 = chi0;
    p.accel = accel;
    if (!(tf < tls_domain_end(p))) {
        throw DomainExceeded("tls_solve_chi0: boundary conditions leave the protocol domain");
    }
    const double reached = tls_protocol(tf, p).rabi;
    if (std::abs(reached - rabi_f) > 1e-12 * rabi_f) {
        throw NotConverged("tls_solve_chi0: boundary condition not met");
    }
    return chi0;
}

DrivenSystem tls_system(const TLSParams& p) {
    if (!(p.epsilon > 0.0)) {
        throw std::invalid_argument("tls_system: epsilon must be positive");
    }
    DrivenSystem sys;
    sys.family = GeneratorFamily(
        "tls", 4, 1,
        [](const RealVector& chi) {
            ComplexMatrix B = ComplexMatrix::Zero(4, 4);
            B.topLeftCorner(3, 3) = tls_generator(chi(0));
            return B;
        },
        [](const RealVector&, Index) {
            ComplexMatrix D = ComplexMatrix::Zero(4, 4);
            D.topLeftCorner(3, 3) = tls_generator_gradient();
            return D;
        },
        BlockList{{0, 1, 2}, {3}});
    sys.protocol.omega = [p](double t) { return tls_protocol(t, p).rabi; };
    sys.protocol.chi = [p](double t) {
        RealVector c(1);
        c(0) = p.chi0 + p.accel * t;
        return c;
    };
    sys.protocol.chi_rate = [p](double) {
        RealVector c(1);
        c(0) = p.accel;
        return c;
    };
    sys.protocol.domain_end = tls_domain_end(p);
    sys.rescale_weights = tls_rescale_weights();
    return sys;
}

LiouvilleVector tls_initial_vector(const TLSParams& p) {
    LiouvilleVector v;
    v.coeffs.resize(4);
    v.coeffs << p.initial(0), p.initial(1), p.initial(2), 1.0;
    return v;
}

BlochState tls_reconstruct(const ComplexVector& v, double omega, double epsilon) {
    const double r2 = omega * omega + epsilon * epsilon;
    const double H = v(0).real();
    const double L = v(1).real();
    const double C = v(2).real();
    BlochState s;
    s.r(0) = 2.0 * (epsilon * H - omega * L) / r2;
    s.r(1) = 2.0 * C / std::sqrt(r2);
    s.r(2) = 2.0 * (omega * H + epsilon * L) / r2;
    return s;
}

Eigen::Vector3d tls_vector_from_bloch(const Eigen::Vector3d& r, double omega, double epsilon) {
    const Eigen::Vector3d S = 0.5 * r;
    return {omega * S(2) + epsilon * S(0), epsilon * S(2) - omega * S(0), std::hypot(omega, epsilon) * S(1)};
}

std::vector<ComplexMatrix> tls_operators(double omega, double epsilon) {
    const ComplexMatrix sx = 0.5 * pauli_x();
    const ComplexMatrix sy = 0.5 * pauli_y();
    const ComplexMatrix sz = 0.5 * pauli_z();
    return {omega * sz + epsilon * sx, epsilon * sz - omega * sx, std::hypot(omega, epsilon) * sy,
            ComplexMatrix::Identity(2, 2)};
}

} // namespace inertia::models
