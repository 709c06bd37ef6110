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

// Smallest positive root of c2 t^2 + c1 t + c0 = 0, or +inf.
double first_positive_root(double c2, double c1, double c0) {
    const double inf = std::numeric_limits<double>::infinity();
    if (c2 == 0.0) {
        if (c1 == 0.0) {
            return inf;
        }
        const double t = -c0 / c1;
        return t > 0.0 ? t : inf;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) {
        return inf;
    }
    // Numerically stable pair of roots.
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    double best = inf;
    for (double t : {q / c2, q != 0.0 ? c0 / q : inf}) {
        if (t > 0.0 && t < best) {
            best = t;
        }
    }
    return best;
}

} // namespace

ComplexMatrix ho_generator(double chi) {
    ComplexMatrix B = ComplexMatrix::Zero(6, 6);
    B(0, 1) = -chi;
    B(1, 0) = -chi;
    B(1, 2) = -2.0;
    B(2, 1) = 2.0;
    B(3, 3) = chi / 2.0;
    B(3, 4) = 1.0;
    B(4, 3) = -1.0;
    B(4, 4) = -chi / 2.0;
    return I * B;
}

ComplexMatrix ho_heisenberg_generator(double chi) {
    ComplexMatrix B = ho_generator(chi);
    for (Index i = 0; i < 3; ++i) {
        B(i, i) += I * chi;
    }
    return B;
}

ComplexMatrix ho_generator_gradient() {
    ComplexMatrix D = ComplexMatrix::Zero(6, 6);
    D(0, 1) = -1.0;
    D(1, 0) = -1.0;
    D(3, 3) = 0.5;
    D(4, 4) = -0.5;
    return I * D;
}

BlockList ho_blocks() {
    return {{0, 1, 2}, {3, 4}, {5}};
}

RealVector ho_rescale_weights() {
    RealVector w(6);
    w << 1.0, 1.0, 1.0, 0.0, 0.0, 0.0;
    return w;
}

double ho_domain_end(const HOParams& p) {
    // 1 - omega0 (chi0 t + a t^2/2) = 0
    return first_positive_root(0.5 * p.omega0 * p.accel, p.omega0 * p.chi0, -1.0);
}

HOProtocolPoint ho_protocol(double t, const HOParams& p) {
    const double denom = 1.0 - p.omega0 * (p.chi0 * t + 0.5 * p.accel * t * t);
    if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "oscillator protocol singular at t = " << t;
        throw DomainExceeded(msg.str());
    }
    HOProtocolPoint q{};
    q.omega = p.omega0 / denom;
    q.mu = p.chi0 + p.accel * t;
    q.omega_dot = q.omega * q.omega * q.mu;
    q.omega_ddot = 2.0 * q.omega * q.omega * q.omega * q.mu * q.mu + q.omega * q.omega * p.accel;
    return q;
}

double ho_solve_chi0(double omega0, double omega_f, double accel, double tf) {
    if (!(tf > 0.0) || !(omega0 > 0.0) || !(omega_f > 0.0)) {
        throw std::invalid_argument("ho_solve_chi0: tf, omega0 and omega_f must be positive");
    }
    const double chi0 = ((1.0 / omega0 - 1.0 / omega_f) - 0.5 * accel * tf * tf) / tf;
    HOParams p;
    p.omega0 = omega0;
    p.chi0 = chi0;
    p.accel = accel;
    if (!(tf < ho_domain_end(p))) {
        throw DomainExceeded("ho_solve_chi0: boundary conditions need a singular protocol");
    }
    const double reached = ho_protocol(tf, p).omega;
    if (std::abs(reached - omega_f) > 1e-12 * omega_f) {
        throw NotConverged("ho_solve_chi0: boundary condition not met");
    }
    return chi0;
}

DrivenSystem ho_system(const HOParams& p) {
    DrivenSystem sys;
    sys.family = GeneratorFamily(
        "ho", 6, 1, [](const RealVector& chi) { return ho_generator(chi(0)); },
        [](const RealVector&, Index) { return ho_generator_gradient(); }, ho_blocks());
    sys.protocol.omega = [p](double t) { return ho_protocol(t, p).omega; };
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
    sys.protocol.domain_end = ho_domain_end(p);
    sys.rescale_weights = ho_rescale_weights();
    return sys;
}

GaussianState ho_reconstruct(const ComplexVector& v, double omega, double mass) {
    const double H = v(0).real();
    const double L = v(1).real();
    const double C = v(2).real();
    const double K = v(3).real();
    const double J = v(4).real();
    GaussianState s;
    s.mean(0) = K / std::sqrt(omega);
    s.mean(1) = mass * std::sqrt(omega) * J;
    const double qq = (H - L) / (mass * omega * omega);
    const double pp = mass * (H + L);
    const double qp = C / omega;
    s.cov(0, 0) = qq - s.mean(0) * s.mean(0);
    s.cov(1, 1) = pp - s.mean(1) * s.mean(1);
    s.cov(0, 1) = s.cov(1, 0) = qp - s.mean(0) * s.mean(1);
    return s;
}

ComplexVector ho_vector_from_state(const GaussianState& s, double omega, double mass) {
    const double qq = s.cov(0, 0) + s.mean(0) * s.mean(0);
    const double pp = s.cov(1, 1) + s.mean(1) * s.mean(1);
    const double qp = s.cov(0, 1) + s.mean(0) * s.mean(1);
    ComplexVector v(6);
    v(0) = pp / (2.0 * mass) + 0.5 * mass * omega * omega * qq;
    v(1) = pp / (2.0 * mass) - 0.5 * mass * omega * omega * qq;
    v(2) = omega * qp;
    v(3) = std::sqrt(omega) * s.mean(0);
    v(4) = s.mean(1) / (mass * std::sqrt(omega));
    v(5) = 1.0;
    return v;
}

LiouvilleVector ho_initial_vector(const HOParams& p) {
    GaussianState ground;
    ground.cov(0, 0) = 1.0 / (2.0 * p.mass * p.omega0);
    ground.cov(1, 1) = p.mass * p.omega0 / 2.0;
    ground.cov(0, 1) = ground.cov(1, 0) = 0.0;
    ground.mean(0) = p.q0;
    LiouvilleVector v;
    v.coeffs = ho_vector_from_state(ground, p.omega0, p.mass);
    return v;
}

} // namespace inertia::models
