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

#pragma once

#include <string>
#include <vector>

#include "inertia/linalg.hpp"
#include "inertia/models.hpp"
#include "inertia/propagate.hpp"
#include "inertia/state.hpp"

namespace inertia {

// ---------------------------------------------------------------------------
// Validity parameters

// Upsilon = sum_k sum_{n != k} |(G_k| dB . dchi/dtheta |F_n) / (lambda_n - lambda_k)^2|.
// Pairs in different invariant blocks do not couple and are skipped. `modes` restricts k;
// empty means every mode.
double inertial_parameter(const EigenFrame& frame, const std::vector<ComplexMatrix>& gradients,
                          const RealVector& dchi_dtheta, const std::vector<Index>& modes = {});

// Upsilon of a driven system at time t.
double inertial_parameter_at(const DrivenSystem& system, double t, const std::vector<Index>& modes = {},
                             const DecompositionOptions& opts = {});

// Closed-form oscillator Upsilon in terms of omega, its derivatives and mu, with the
// second derivative entering as omega''/omega^3. Throws SingularDenominator when the
// denominator vanishes.
double ho_inertial_parameter_closed(double t, const models::HOParams& p);

// omega'/omega^2 for the oscillator, (omega' eps - omega eps')/R^3 for the qubit, and the
// mu_i of largest magnitude for the spin pair.
double adiabatic_parameter(const models::Model& m, double t);

// ---------------------------------------------------------------------------
// Fidelities F = [tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2

double fidelity(const DensityState& a, const DensityState& b);
// 1 - F evaluated without cancellation where a stable form exists.
double infidelity(const DensityState& a, const DensityState& b);

double gaussian_fidelity(const GaussianState& a, const GaussianState& b);
double gaussian_infidelity(const GaussianState& a, const GaussianState& b);
double bloch_fidelity(const BlochState& a, const BlochState& b);
double bloch_infidelity(const BlochState& a, const BlochState& b);
double uhlmann_fidelity(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

// -log10(1 - F), saturating at 16 once 1 - F drops below 1e-16.
double neglog_infidelity(double one_minus_f);

// ---------------------------------------------------------------------------
// Final-state fidelity sweeps over the protocol duration

struct SweepSpec {
    // Oscillator or qubit; the per-point chi0 is solved from the frequency boundary values.
    models::Model model;
    // omega(tf) for the oscillator, R(tf) for the qubit.
    double final_frequency = 10.0;
    std::vector<double> tf_grid;
    PropagationOptions propagation;
    bool include_geo = true;
    // Samples along [0, tf] for the maxima of |mu| and Upsilon.
    int profile_samples = 101;
    int threads = 1;
};

struct SweepPoint {
    double tf = 0.0;
    double chi0 = 0.0;
    double fidelity_inertial = 0.0;
    double fidelity_adiabatic = 0.0;
    double infidelity_inertial = 0.0;
    double infidelity_adiabatic = 0.0;
    double neglog_inertial = 0.0;
    double neglog_adiabatic = 0.0;
    double mu_max = 0.0;
    double upsilon_max = 0.0;
    // Oscillator closed form; NaN when not available.
    double upsilon_closed_max = 0.0;
    // max_k |geometric phase| / max_k |dynamical phase|
    double geo_ratio = 0.0;
    bool ok = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::size_t failures() const;
};

// Oscillator and qubit models with chi0 chosen so the frequency reaches final_frequency
// (omega for the oscillator, R for the qubit) at tf; other models are returned unchanged.
models::Model fit_protocol(const models::Model& model, double final_frequency, double tf);

std::vector<double> log_grid(double lo, double hi, int n);

SweepPoint sweep_point(const SweepSpec& spec, double tf);
SweepResult fidelity_sweep(const SweepSpec& spec);

} // namespace inertia
