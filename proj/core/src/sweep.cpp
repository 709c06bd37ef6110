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
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "inertia/diagnostics.hpp"
#include "inertia/errors.hpp"

namespace inertia {

namespace {

double fitted_chi0(const models::Model& m) {
    if (const auto* ho = std::get_if<models::HOParams>(&m)) {
        return ho->chi0;
    }
    return std::get<models::TLSParams>(m).chi0;
}

} // namespace

models::Model fit_protocol(const models::Model& model, double final_frequency, double tf) {
    if (const auto* ho = std::get_if<models::HOParams>(&model)) {
        models::HOParams p = *ho;
        p.chi0 = models::ho_solve_chi0(p.omega0, final_frequency, p.accel, tf);
        return p;
    }
    if (const auto* tls = std::get_if<models::TLSParams>(&model)) {
        models::TLSParams p = *tls;
        const double rabi0 = std::hypot(p.omega0, p.epsilon);
        p.chi0 = models::tls_solve_chi0(p.epsilon, rabi0, final_frequency, p.accel, tf);
        return p;
    }
    return model;
}

std::size_t SweepResult::failures() const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const SweepPoint& p) { return !p.ok; }));
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (n < 1 || !(lo > 0.0) || !(hi >= lo)) {
        throw std::invalid_argument("log_grid: need n >= 1 and 0 < lo <= hi");
    }
    std::vector<double> g(static_cast<std::size_t>(n));
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

SweepPoint sweep_point(const SweepSpec& spec, double tf) {
    SweepPoint pt;
    pt.tf = tf;
    pt.upsilon_closed_max = std::numeric_limits<double>::quiet_NaN();
    try {
        if (std::holds_alternative<models::TwoSpinParams>(spec.model)) {
            throw std::invalid_argument("fidelity sweeps support the oscillator and qubit models");
        }
        const models::Model model = fit_protocol(spec.model, spec.final_frequency, tf);
        pt.chi0 = fitted_chi0(model);
        const DrivenSystem sys = models::make_system(model);
        const LiouvilleVector u0 = models::initial_vector(model);

        const LiouvilleVector ex = propagate_exact(sys, u0, tf, spec.propagation);
        const auto [in, sol] = propagate_inertial(sys, u0, tf, spec.include_geo, spec.propagation);
        const LiouvilleVector ad = propagate_adiabatic(sys, u0, tf, spec.propagation);

        const DensityState s_ex = models::reconstruct_state(model, apply_identity_rescaling(sys, ex.coeffs, tf), tf);
        const DensityState s_in = models::reconstruct_state(model, apply_identity_rescaling(sys, in.coeffs, tf), tf);
        const DensityState s_ad = models::reconstruct_state(model, apply_identity_rescaling(sys, ad.coeffs, tf), tf);

        pt.fidelity_inertial = fidelity(s_ex, s_in);
        pt.fidelity_adiabatic = fidelity(s_ex, s_ad);
        pt.infidelity_inertial = infidelity(s_ex, s_in);
        pt.infidelity_adiabatic = infidelity(s_ex, s_ad);
        pt.neglog_inertial = neglog_infidelity(pt.infidelity_inertial);
        pt.neglog_adiabatic = neglog_infidelity(pt.infidelity_adiabatic);

        double geo = 0.0;
        double dyn = 0.0;
        for (Index k = 0; k < sol.geo_phase.size(); ++k) {
            geo = std::max(geo, std::abs(sol.geo_phase(k)));
            dyn = std::max(dyn, std::abs(sol.dyn_phase(k)));
        }
        pt.geo_ratio = dyn > 0.0 ? geo / dyn : 0.0;

        const auto* ho = std::get_if<models::HOParams>(&model);
        bool closed_seen = false;
        double closed_max = 0.0;
        const int n = std::max(2, spec.profile_samples);
        for (int i = 0; i < n; ++i) {
            const double t = tf * i / (n - 1);
            pt.mu_max = std::max(pt.mu_max, std::abs(adiabatic_parameter(model, t)));
            pt.upsilon_max = std::max(pt.upsilon_max, inertial_parameter_at(sys, t, {}, spec.propagation.decomposition));
            if (ho != nullptr && t > 0.0) {
                try {
                    closed_max = std::max(closed_max, ho_inertial_parameter_closed(t, *ho));
                    closed_seen = true;
                } catch (const SingularDenominator&) {
                    // skipped point
                }
            }
        }
        if (closed_seen) {
            pt.upsilon_closed_max = closed_max;
        }
        pt.ok = true;
    } catch (const std::exception& e) {
        pt.ok = false;
        pt.error = e.what();
    }
    return pt;
}

SweepResult fidelity_sweep(const SweepSpec& spec) {
    SweepResult result;
    result.points.resize(spec.tf_grid.size());
    const std::size_t workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, spec.threads)), 1, std::max<std::size_t>(1, spec.tf_grid.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < spec.tf_grid.size(); i = next++) {
            result.points[i] = sweep_point(spec, spec.tf_grid[i]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    return result;
}

} // namespace inertia
