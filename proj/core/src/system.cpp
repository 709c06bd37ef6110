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

#include "inertia/system.hpp"

#include <cmath>
#include <sstream>
#include <utility>


#include "inertia/errors.hpp"
#include "quadrature.hpp"

namespace inertia {

GeneratorFamily::GeneratorFamily(std::string name, Index dim, Index n_params, MatrixFn matrix,
                                 GradientFn gradient, BlockList blocks)
    : name_(std::move(name)),
      dim_(dim),
      n_params_(n_params),
      matrix_(std::move(matrix)),
      gradient_(std::move(gradient)),
      blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        blocks_.emplace_back();
        for (Index i = 0; i < dim_; ++i) {
            blocks_[0].push_back(i);
        }
    }
}

ComplexMatrix GeneratorFamily::matrix(const RealVector& chi) const {
    return matrix_(chi);
}

ComplexMatrix GeneratorFamily::gradient(const RealVector& chi, Index i, double h) const {
    if (gradient_) {
        return gradient_(chi, i);
    }
    RealVector up = chi;
    RealVector down = chi;
    up(i) += h;
    down(i) -= h;
    return (matrix_(up) - matrix_(down)) / (2.0 * h);
}

EigenFrame GeneratorFamily::frame(const RealVector& chi, const DecompositionOptions& opts) const {
    EigenFrame f = bi_eigendecompose(matrix_(chi), blocks_, opts);
    f.chi = chi;
    return f;
}

void Protocol::check_domain(double t) const {
    if (!(t >= 0.0) || !(t < domain_end)) {
        std::ostringstream msg;
        msg << "protocol evaluated at t = " << t << " outside [0, " << domain_end << ")";
        throw DomainExceeded(msg.str());
    }
}

RealVector Protocol::chi_theta_rate(double t) const {
    return chi_rate(t) / omega(t);
}

ComplexMatrix DrivenSystem::generator_at(double t) const {
    return family.matrix(protocol.chi(t));
}

double scaled_time(const Protocol& protocol, double t) {
    return ScaledTime(protocol).theta(t);
}

ScaledTime::ScaledTime(Protocol protocol) : protocol_(std::move(protocol)) {}

double ScaledTime::integrate(double a, double b) const {
    if (a == b) {
        return 0.0;
    }
    double err = 0.0;
    const double v = detail::integrate([this](double s) { return protocol_.omega(s); }, a, b, 1e-13, &err);
    if (!std::isfinite(v)) {
        throw DomainExceeded("scaled time integral diverged");
    }
    return v;
}

double ScaledTime::theta(double t) const {
    protocol_.check_domain(t);
    return integrate(0.0, t);
}

double ScaledTime::time_at(double theta) const {
    return times_at({theta}).front();
}

std::vector<double> ScaledTime::times_at(const std::vector<double>& thetas) const {
    std::vector<double> out;
    out.reserve(thetas.size());
    double t_known = 0.0;
    double theta_known = 0.0;
    for (double target : thetas) {
        if (target < theta_known) {
            t_known = 0.0;
            theta_known = 0.0;
        }
        if (target - theta_known <= 1e-13 * (1.0 + std::abs(target))) {
            out.push_back(t_known);
            continue;
        }
        double lo = t_known;
        double hi = protocol_.domain_end;
        double t = t_known + (target - theta_known) / protocol_.omega(t_known);
        double th = 0.0;
        bool done = false;
        for (int it = 0; it < 200; ++it) {
            if (!(t > lo && t < hi)) {
                t = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * lo + 1e-3;
            }
            th = theta_known + integrate(t_known, t);
            const double resid = th - target;
            if (resid > 0.0) {
                hi = t;
            } else {
                lo = t;
            }
            if (std::abs(resid) <= 1e-13 * (1.0 + std::abs(target))) {
                done = true;
                break;
            }
            t -= resid / protocol_.omega(t);
        }
        if (!done) {
            throw NotConverged("scaled time inversion did not converge");
        }
        out.push_back(t);
        t_known = t;
        theta_known = th;
    }
    return out;
}

ComplexVector apply_identity_rescaling(const DrivenSystem& system, const ComplexVector& v_scaled,
                                       double t) {
    const double ratio = system.protocol.omega(t) / system.protocol.omega(0.0);
    ComplexVector v = v_scaled;
    for (Index i = 0; i < v.size(); ++i) {
        const double w = system.rescale_weights.size() ? system.rescale_weights(i) : 0.0;
        if (w != 0.0) {
            v(i) *= std::pow(ratio, w);
        }
    }
    return v;
}

ComplexVector remove_identity_rescaling(const DrivenSystem& system, const ComplexVector& v_physical,
                                        double t) {
    const double ratio = system.protocol.omega(0.0) / system.protocol.omega(t);
    ComplexVector v = v_physical;
    for (Index i = 0; i < v.size(); ++i) {
        const double w = system.rescale_weights.size() ? system.rescale_weights(i) : 0.0;
        if (w != 0.0) {
            v(i) *= std::pow(ratio, w);
        }
    }
    return v;
}

} // namespace inertia
