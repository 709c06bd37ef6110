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

#include "inertia/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "inertia/errors.hpp"

namespace inertia {

double inertial_parameter(const EigenFrame& frame, const std::vector<ComplexMatrix>& gradients,
                          const RealVector& dchi_dtheta, const std::vector<Index>& modes) {
    if (static_cast<Index>(gradients.size()) != dchi_dtheta.size()) {
        throw std::invalid_argument("inertial_parameter: one gradient per parameter is required");
    }
    const Index n = frame.size();
    ComplexMatrix directional = ComplexMatrix::Zero(frame.dim(), frame.dim());
    for (std::size_t i = 0; i < gradients.size(); ++i) {
        directional += dchi_dtheta(static_cast<Index>(i)) * gradients[i];
    }
    const ComplexMatrix coupling = frame.lefts.adjoint() * directional * frame.rights;

    std::vector<Index> ks = modes;
    if (ks.empty()) {
        for (Index k = 0; k < n; ++k) {
            ks.push_back(k);
        }
    }
    double upsilon = 0.0;
    for (Index k : ks) {
        for (Index m = 0; m < n; ++m) {
            if (m == k || frame.block[static_cast<std::size_t>(m)] != frame.block[static_cast<std::size_t>(k)]) {
                continue;
            }
            const cplx gap = frame.lambdas(m) - frame.lambdas(k);
            if (std::abs(gap) == 0.0) {
                throw DegenerateSpectrum("inertial_parameter: coincident eigenvalues");
            }
            upsilon += std::abs(coupling(k, m) / (gap * gap));
        }
    }
    return upsilon;
}

double inertial_parameter_at(const DrivenSystem& system, double t, const std::vector<Index>& modes,
                             const DecompositionOptions& opts) {
    const RealVector chi = system.protocol.chi(t);
    const EigenFrame frame = system.family.frame(chi, opts);
    std::vector<ComplexMatrix> grads;
    for (Index i = 0; i < system.family.n_params(); ++i) {
        grads.push_back(system.family.gradient(chi, i));
    }
    return inertial_parameter(frame, grads, system.protocol.chi_theta_rate(t), modes);
}

double ho_inertial_parameter_closed(double t, const models::HOParams& p) {
    const models::HOProtocolPoint q = models::ho_protocol(t, p);
    const double mu2 = q.mu * q.mu;
    const double kappa2 = 4.0 - mu2;
    if (!(kappa2 > 0.0)) {
        throw DegenerateSpectrum("closed-form Upsilon requires |mu| < 2");
    }
    const double curvature = q.omega_ddot / (q.omega * q.omega * q.omega);
    const double ell = std::log(q.omega / p.omega0);
    const double bracket = curvature * ell - mu2 * (2.0 * ell + 1.0);
    const double scale = std::abs(curvature * ell) + mu2 * (2.0 * std::abs(ell) + 1.0);
    if (!(std::abs(bracket) > 1e-12 * scale) || bracket == 0.0) {
        std::ostringstream msg;
        msg << "closed-form Upsilon denominator vanishes at t = " << t;
        throw SingularDenominator(msg.str());
    }
    const double numerator = mu2 * (curvature - 2.0 * mu2);
    return std::abs(numerator / (4.0 * kappa2 * bracket));
}

double adiabatic_parameter(const models::Model& m, double t) {
    if (const auto* ho = std::get_if<models::HOParams>(&m)) {
        const auto q = models::ho_protocol(t, *ho);
        return q.omega_dot / (q.omega * q.omega);
    }
    if (const auto* tls = std::get_if<models::TLSParams>(&m)) {
        const auto q = models::tls_protocol(t, *tls);
        return q.omega_dot * tls->epsilon / (q.rabi * q.rabi * q.rabi);
    }
    const auto& sp = std::get<models::TwoSpinParams>(m);
    const Protocol pr = models::two_spin_protocol(sp);
    const double R = pr.omega(t);
    const double Rdot = sp.rabi_rate;
    const RealVector chi = pr.chi(t);
    const Eigen::Vector2d alpha = models::two_spin_alpha(t, sp);
    double largest = 0.0;
    for (Index i = 0; i < 2; ++i) {
        const double adot = -chi(i) * R;
        const double w = R * std::cos(alpha(i));
        const double e = R * std::sin(alpha(i));
        const double wdot = Rdot * std::cos(alpha(i)) - R * std::sin(alpha(i)) * adot;
        const double edot = Rdot * std::sin(alpha(i)) + R * std::cos(alpha(i)) * adot;
        const double mu = (wdot * e - w * edot) / (R * R * R);
        if (std::abs(mu) > std::abs(largest)) {
            largest = mu;
        }
    }
    return largest;
}

} // namespace inertia
