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

#include <Eigen/Dense>

#include "inertia/linalg.hpp"
#include "inertia/models.hpp"
#include "inertia/propagate.hpp"
#include "inertia/system.hpp"

namespace inertia {

// Thermal bosonic bath with a cubic (dipole) spectral density, k_B = 1.
struct BathSpec {
    double temperature = 0.0;
    // Overall rate prefactor g in gamma(alpha) = g alpha^3 (1 + N(alpha)).
    double coupling = 0.0;
    // Upper limit of the principal-value frequency integral.
    double cutoff = 100.0;
    bool lamb_shift = false;

    void validate() const;
};

// 1 / (exp(alpha / T) - 1), zero for T = 0 or alpha <= 0 at T = 0.
double bose_occupation(double temperature, double alpha);

// g alpha^3 (1 + N(alpha)) for alpha > 0, g |alpha|^3 N(|alpha|) for alpha < 0, zero at alpha = 0.
double decay_rate(const BathSpec& bath, double alpha);

// 2 g P int_0^cutoff w^3 [(1 + N(w)) / (alpha - w) + N(w) / (alpha + w)] dw by singularity
// subtraction. Zero when the Lamb shift is disabled. Throws NotConverged, DomainExceeded.
double lamb_shift(const BathSpec& bath, double alpha);

// Closed form of the zero-temperature principal value, without the 2 g prefactor.
double lamb_shift_integral_zero_temperature(double alpha, double cutoff);

// alpha_j(t) = Re[lambda_j - i (G_j|grad F_j) . dchi/dtheta] Omega(t), connection taken in the
// fixed gauge of the frame family by central differences.
double effective_frequency(const DrivenSystem& system, double t, Index mode,
                           const DecompositionOptions& opts = {});

struct MasterEquationSpec {
    DrivenSystem system;
    models::TLSParams params;
    EigenFrame frame0;
    // F_j = sum_l conj(G_j^l) O_l(0), scaled to unit Hilbert-Schmidt norm.
    std::vector<ComplexMatrix> jump_ops;
    // D(0) = sum_j a_j F_j
    ComplexVector dipole_coeffs;
    double dipole_residual = 0.0;
    ComplexMatrix dipole;
};

MasterEquationSpec build_master_equation(const models::TLSParams& params, const ComplexMatrix& dipole);

struct NameOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    // Map the interaction-picture state back through the exact free evolution.
    bool schrodinger = true;
    double positivity_tol = 1e-7;
    // Smallest acceptable ratio of non-paired |alpha_i + alpha_j| to the largest rate.
    double secular_ratio = 10.0;
    PropagationOptions propagation;
};

struct NameSample {
    double t = 0.0;
    ComplexMatrix rho_interaction;
    ComplexMatrix rho;
    Eigen::Vector3d bloch = Eigen::Vector3d::Zero();
    double trace_deviation = 0.0;
    double hermiticity_deviation = 0.0;
    double min_eigenvalue = 0.0;
};

struct NameTrajectory {
    std::vector<NameSample> samples;
    double max_trace_deviation = 0.0;
    double min_eigenvalue = 1.0;
    double secular_margin = 0.0;
    std::vector<std::string> warnings;
};

// Integrates d rho~/dt = -i[H_LS, rho~] + sum_j gamma_j (F_j rho~ F_j^† - {F_j^† F_j, rho~}/2)
// with gamma_j = |a_j|^2 decay_rate(alpha_j(t)) and H_LS = sum_j |a_j|^2 S(alpha_j(t)) F_j^† F_j.
// Throws PositivityViolation, IntegratorFailure.
NameTrajectory name_evolve(const MasterEquationSpec& spec, const BathSpec& bath, const ComplexMatrix& rho0,
                           const std::vector<double>& t_grid, const NameOptions& opts = {});

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace inertia
