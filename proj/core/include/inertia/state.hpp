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

#include <variant>

#include <Eigen/Dense>

#include "inertia/linalg.hpp"

namespace inertia {

// Single-mode Gaussian state: mean (<q>, <p>) and symmetrised covariance matrix.
struct GaussianState {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = 0.5 * Eigen::Matrix2d::Identity();
};

// Qubit state rho = (I + r.sigma) / 2.
struct BlochState {
    Eigen::Vector3d r = Eigen::Vector3d::Zero();
};

struct TwoQubitState {
    ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
};

using DensityState = std::variant<GaussianState, BlochState, TwoQubitState>;

// Throws UnphysicalState when an invariant is violated by more than tol.
void validate_state(const DensityState& state, double tol = 1e-6);

ComplexMatrix density_matrix(const BlochState& s);
BlochState bloch_from_density(const ComplexMatrix& rho);

// Pauli matrices and spin-1/2 operators S = sigma / 2.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

} // namespace inertia
