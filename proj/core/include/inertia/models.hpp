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

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "inertia/linalg.hpp"
#include "inertia/state.hpp"
#include "inertia/system.hpp"

namespace inertia::models {

// ---------------------------------------------------------------------------
// Parametric oscillator H = p^2/2m + m omega(t)^2 q^2 / 2.
// Basis {H, L, C, K, J, I}: L = p^2/2m - m omega^2 q^2/2, C = omega (qp + pq)/2,
// K = sqrt(omega) q, J = p / (m sqrt(omega)).
// Protocol 1/omega(t) = 1/omega0 - (chi0 t + a t^2/2), so mu = omega'/omega^2 = chi0 + a t.

struct HOParams {
    double mass = 1.0;
    double omega0 = 20.0;
    double chi0 = 0.0;
    double accel = 0.0;
    // Initial coherent displacement of the ground state.
    double q0 = 0.0;
};

struct HOProtocolPoint {
    double omega;
    double omega_dot;
    double omega_ddot;
    double mu;
};

// Scaled generator with the identity part of the {H,L,C} block removed; that part is
// carried by rescaling weight 1 on H, L, C.
ComplexMatrix ho_generator(double chi);
// Full Heisenberg generator divided by omega (identity part kept on the diagonal).
ComplexMatrix ho_heisenberg_generator(double chi);
ComplexMatrix ho_generator_gradient();
BlockList ho_blocks();
RealVector ho_rescale_weights();

double ho_domain_end(const HOParams& p);
HOProtocolPoint ho_protocol(double t, const HOParams& p);
// chi0 such that omega(tf) = omega_f for the given acceleration.
double ho_solve_chi0(double omega0, double omega_f, double accel, double tf);

DrivenSystem ho_system(const HOParams& p);
LiouvilleVector ho_initial_vector(const HOParams& p);
GaussianState ho_reconstruct(const ComplexVector& v, double omega, double mass = 1.0);
ComplexVector ho_vector_from_state(const GaussianState& s, double omega, double mass = 1.0);

// ---------------------------------------------------------------------------
// Driven qubit H = omega(t) S_z + eps S_x, Rabi frequency R = sqrt(omega^2 + eps^2).
// Basis {H, L, C, I}: L = eps S_z - omega S_x, C = R S_y.
// Protocol z = omega/R = z0 + eps (chi0 t + a t^2/2), so mu = (omega' eps)/R^3 = chi0 + a t.

struct TLSParams {
    double epsilon = 8.0;
    double omega0 = std::sqrt(336.0);
    double chi0 = 0.0;
    double accel = 0.0;
    Eigen::Vector3d initial{4.0, 1.0, 1.0};
};

struct TLSProtocolPoint {
    double omega;
    double omega_dot;
    double rabi;
    double rabi_dot;
    double z;
    double mu;
};

ComplexMatrix tls_generator(double chi);
ComplexMatrix tls_generator_gradient();
RealVector tls_rescale_weights();

double tls_domain_end(const TLSParams& p);
TLSProtocolPoint tls_protocol(double t, const TLSParams& p);
// chi0 such that R(tf) = rabi_f when R(0) = rabi0.
double tls_solve_chi0(double epsilon, double rabi0, double rabi_f, double accel, double tf);

DrivenSystem tls_system(const TLSParams& p);
LiouvilleVector tls_initial_vector(const TLSParams& p);
BlochState tls_reconstruct(const ComplexVector& v, double omega, double epsilon);
Eigen::Vector3d tls_vector_from_bloch(const Eigen::Vector3d& r, double omega, double epsilon);
// {H, L, C, I} as 2x2 matrices.
std::vector<ComplexMatrix> tls_operators(double omega, double epsilon);

// ---------------------------------------------------------------------------
// Two non-interacting spins with a shared Rabi frequency R(t) and mixing angles
// alpha_i(t): omega_i = R cos(alpha_i), eps_i = R sin(alpha_i).
// Basis: 6 local {H1,L1,C1,H2,L2,C2}, 9 nonlocal X1 Y2 (index 6 + 3a + b), identity.

enum class CircuitKind { Linear, Circle };

struct TwoSpinParams {
    double rabi0 = 20.0;
    // R(t) = rabi0 + rabi_rate t
    double rabi_rate = 0.0;
    CircuitKind kind = CircuitKind::Linear;
    // Linear: chi_i(t) = chi0_i + accel_i t.
    Eigen::Vector2d chi0{0.3, 0.6};
    Eigen::Vector2d accel{0.0, 0.0};
    // Circle: chi(t) = center + radius (cos 2 pi t/period, sin 2 pi t/period).
    Eigen::Vector2d center{0.3, 0.6};
    double radius = 0.05;
    double period = 1.0;
    Eigen::Vector2d alpha0{0.0, 0.0};
    Eigen::Vector3d bloch1{0.3, 0.2, 0.4};
    Eigen::Vector3d bloch2{-0.2, 0.1, 0.5};
};

std::pair<ComplexMatrix, ComplexMatrix> two_spin_generators(double chi1, double chi2);
ComplexMatrix two_spin_generator(double chi1, double chi2);
GeneratorFamily two_spin_local_family();
GeneratorFamily two_spin_nonlocal_family();
GeneratorFamily two_spin_family();
RealVector two_spin_rescale_weights();

double two_spin_domain_end(const TwoSpinParams& p);
Protocol two_spin_protocol(const TwoSpinParams& p);
// alpha_i(t) = alpha_i(0) - int_0^t chi_i R dt'
Eigen::Vector2d two_spin_alpha(double t, const TwoSpinParams& p);

DrivenSystem two_spin_system(const TwoSpinParams& p);
LiouvilleVector two_spin_initial_vector(const TwoSpinParams& p);
// The 16 basis operators as 4x4 matrices at time t.
std::vector<ComplexMatrix> two_spin_operators(double t, const TwoSpinParams& p);
TwoQubitState two_spin_reconstruct(const ComplexVector& v, double t, const TwoSpinParams& p);

// ---------------------------------------------------------------------------

using Model = std::variant<HOParams, TLSParams, TwoSpinParams>;

std::string model_name(const Model& m);
DrivenSystem make_system(const Model& m);
LiouvilleVector initial_vector(const Model& m);
// v must already carry the identity rescaling.
DensityState reconstruct_state(const Model& m, const ComplexVector& v, double t);

} // namespace inertia::models
