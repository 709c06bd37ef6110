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

#include "inertia/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "inertia/errors.hpp"

namespace inertia {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<cplx>;

// du/dtheta = -i B(chi(t)) u together with dt/dtheta = 1/Omega(t); t rides in the last slot.
struct ScaledGenerator {
    const DrivenSystem* system;

    void operator()(const State& x, State& dxdt, double /*theta*/) const {
        const Index n = system->family.dim();
        const double t = x[static_cast<std::size_t>(n)].real();
        system->protocol.check_domain(t);
        const ComplexMatrix B = system->family.matrix(system->protocol.chi(t));
        Eigen::Map<const ComplexVector> u(x.data(), n);
        Eigen::Map<ComplexVector> du(dxdt.data(), n);
        du.noalias() = cplx(0.0, -1.0) * (B * u);
        dxdt[static_cast<std::size_t>(n)] = 1.0 / system->protocol.omega(t);
    }
};

void check_start(const DrivenSystem& system, const LiouvilleVector& u0) {
    if (u0.coeffs.size() != system.family.dim()) {
        throw std::invalid_argument("initial vector length does not match the operator basis");
    }
    if (u0.t != 0.0) {
        throw std::invalid_argument("propagation starts from t = 0");
    }
}

// Composite Simpson rule on a uniform grid with an even number of intervals.
cplx simpson(const std::vector<cplx>& f, double h) {
    const std::size_t n = f.size() - 1;
    if (n == 0) {
        return 0.0;
    }
    cplx s = f.front() + f.back();
    for (std::size_t i = 1; i < n; ++i) {
        s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    }
    return s * (h / 3.0);
}

} // namespace

std::vector<LiouvilleVector> propagate_exact_trajectory(const DrivenSystem& system,
                                                        const LiouvilleVector& u0,
                                                        const std::vector<double>& times,
                                                        const PropagationOptions& opts) {
    check_start(system, u0);
    const ScaledTime clock(system.protocol);
    std::vector<double> thetas;
    thetas.reserve(times.size() + 1);
    thetas.push_back(0.0);
    double last = 0.0;
    for (double t : times) {
        if (t < last) {
            throw std::invalid_argument("propagate_exact_trajectory: times must be increasing");
        }
        last = t;
        thetas.push_back(clock.theta(t));
    }

    const Index n = system.family.dim();
    State x(static_cast<std::size_t>(n) + 1);
    for (Index i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = u0.coeffs(i);
    }
    x.back() = 0.0;

    std::vector<LiouvilleVector> out;
    out.reserve(times.size());
    // Requested times at the start are answered from the initial state.
    std::size_t lead = 0;
    while (lead < times.size() && thetas[lead + 1] <= 0.0) {
        LiouvilleVector v = u0;
        v.t = times[lead];
        v.theta = 0.0;
        out.push_back(std::move(v));
        ++lead;
    }
    thetas.erase(thetas.begin() + 1, thetas.begin() + 1 + static_cast<std::ptrdiff_t>(lead));
    if (thetas.size() == 1) {
        return out;
    }
    std::size_t calls = 0;
    auto observer = [&](const State& s, double theta) {
        // The first call reports the prepended start point.
        if (calls++ == 0 || out.size() == times.size()) {
            return;
        }
        LiouvilleVector v;
        v.coeffs = Eigen::Map<const ComplexVector>(s.data(), n);
        v.t = times[out.size()];
        v.theta = theta;
        out.push_back(std::move(v));
    };

    const double dtheta0 = thetas.back() > 0.0 ? std::min(1e-3, thetas.back() * 1e-3) : 1e-3;
    try {
        auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State>());
        odeint::integrate_times(stepper, ScaledGenerator{&system}, x, thetas.begin(), thetas.end(), dtheta0,
                                observer);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw IntegratorFailure(std::string("exact propagation failed: ") + e.what());
    }
    if (out.size() != times.size()) {
        throw IntegratorFailure("exact propagation stopped before the final time");
    }
    for (const auto& v : out) {
        if (!v.coeffs.allFinite()) {
            throw IntegratorFailure("exact propagation produced non-finite values");
        }
    }
    return out;
}

LiouvilleVector propagate_exact(const DrivenSystem& system, const LiouvilleVector& u0, double t,
                                const PropagationOptions& opts) {
    return propagate_exact_trajectory(system, u0, {t}, opts).front();
}

ComplexVector coefficients(const EigenFrame& frame, const ComplexVector& v0) {
    return frame.coefficients(v0);
}

LiouvilleVector propagate_constant_chi(const EigenFrame& frame, const ComplexVector& c, double theta) {
    ComplexVector phased(c.size());
    for (Index k = 0; k < c.size(); ++k) {
        phased(k) = c(k) * std::exp(cplx(0.0, -theta) * frame.lambdas(k));
    }
    LiouvilleVector v;
    v.coeffs = frame.expand(phased);
    v.theta = theta;
    v.t = 0.0;
    return v;
}

std::pair<LiouvilleVector, InertialSolution> propagate_inertial(const DrivenSystem& system,
                                                                const LiouvilleVector& u0, double t,
                                                                bool include_geo,
                                                                const PropagationOptions& opts) {
    check_start(system, u0);
    if (opts.frame_steps < 2 || opts.frame_steps % 2 != 0) {
        throw std::invalid_argument("frame_steps must be a positive even number");
    }
    const ScaledTime clock(system.protocol);
    const double theta_f = clock.theta(t);

    InertialSolution sol;
    sol.t = t;
    sol.theta = theta_f;
    sol.initial_frame = system.family.frame(system.protocol.chi(0.0), opts.decomposition);
    sol.c = sol.initial_frame.coefficients(u0.coeffs);
    const Index n = sol.initial_frame.size();

    const int steps = theta_f > 0.0 ? opts.frame_steps : 0;
    const double h = steps > 0 ? theta_f / steps : 0.0;
    std::vector<double> thetas(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        thetas[static_cast<std::size_t>(i)] = i * h;
    }
    thetas.back() = theta_f;
    std::vector<double> times = clock.times_at(thetas);
    times.back() = t;

    std::vector<std::vector<cplx>> lambda_samples(static_cast<std::size_t>(n));
    ComplexVector transport = ComplexVector::Zero(n);
    EigenFrame tracked = sol.initial_frame;
    EigenFrame fixed_gauge = sol.initial_frame;
    for (Index k = 0; k < n; ++k) {
        lambda_samples[static_cast<std::size_t>(k)].push_back(tracked.lambdas(k));
    }
    for (int i = 1; i <= steps; ++i) {
        const EigenFrame raw = system.family.frame(system.protocol.chi(times[static_cast<std::size_t>(i)]),
                                                   opts.decomposition);
        const ContinuityCorrection corr = track_continuity(tracked, raw);
        EigenFrame next = apply_correction(raw, corr);
        for (Index k = 0; k < n; ++k) {
            // Symmetric discretisation of -int (G_k|dF_k).
            const cplx forward = tracked.lefts.col(k).dot(next.rights.col(k));
            const cplx backward = next.lefts.col(k).dot(tracked.rights.col(k));
            transport(k) += 0.5 * (std::log(backward) - std::log(forward));
            lambda_samples[static_cast<std::size_t>(k)].push_back(next.lambdas(k));
        }
        if (i == steps) {
            fixed_gauge = raw;
            for (Index k = 0; k < n; ++k) {
                const Index m = corr.permutation[static_cast<std::size_t>(k)];
                fixed_gauge.lambdas(k) = raw.lambdas(m);
                fixed_gauge.rights.col(k) = raw.rights.col(m);
                fixed_gauge.lefts.col(k) = raw.lefts.col(m);
                fixed_gauge.block[static_cast<std::size_t>(k)] = raw.block[static_cast<std::size_t>(m)];
            }
        }
        tracked = std::move(next);
    }

    sol.dyn_phase.resize(n);
    sol.geo_phase.resize(n);
    sol.amplitude_log.resize(n);
    sol.Lambda.resize(n);
    ComplexVector weights(n);
    for (Index k = 0; k < n; ++k) {
        sol.dyn_phase(k) = steps > 0 ? simpson(lambda_samples[static_cast<std::size_t>(k)], h) : cplx(0.0);
        // Transported F_k equals p_k times the fixed-gauge F_k at the endpoint.
        const cplx p = fixed_gauge.lefts.col(k).dot(tracked.rights.col(k));
        const cplx total = std::log(p) + transport(k);
        sol.geo_phase(k) = total.imag();
        sol.amplitude_log(k) = total.real();
        sol.Lambda(k) = sol.dyn_phase(k) - cplx(total.imag(), -total.real());
        const double phase = include_geo ? sol.geo_phase(k) : 0.0;
        weights(k) = sol.c(k) * std::exp(cplx(0.0, -1.0) * sol.dyn_phase(k)) *
                     std::exp(cplx(sol.amplitude_log(k), phase));
    }
    fixed_gauge.chi = system.protocol.chi(t);
    sol.final_frame = fixed_gauge;

    LiouvilleVector v;
    v.coeffs = fixed_gauge.expand(weights);
    v.t = t;
    v.theta = theta_f;
    return {v, sol};
}

LiouvilleVector propagate_adiabatic(const DrivenSystem& system, const LiouvilleVector& u0, double t,
                                    const PropagationOptions& opts) {
    check_start(system, u0);
    const double theta = ScaledTime(system.protocol).theta(t);
    const RealVector chi0 = RealVector::Zero(system.family.n_params());
    LiouvilleVector v;
    try {
        const EigenFrame frame = system.family.frame(chi0, opts.decomposition);
        v = propagate_constant_chi(frame, frame.coefficients(u0.coeffs), theta);
    } catch (const DegenerateSpectrum&) {
        v.coeffs = propagator_matrix(system.family.matrix(chi0), theta) * u0.coeffs;
        v.theta = theta;
    }
    v.t = t;
    return v;
}

} // namespace inertia
