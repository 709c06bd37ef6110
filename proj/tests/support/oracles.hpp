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

// Reference computations used by the tests. None of them calls into the library's
// numerical kernels; they rebuild each quantity from its definition.

#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "inertia/inertia.hpp"

namespace oracle {

using inertia::ComplexMatrix;
using inertia::cplx;

// Heisenberg generators M(t) with d<O_i>/dt = sum_j M_ij <O_j>, assembled from
// i[H, O_i] + dO_i/dt. The oscillator uses the exact Poisson bracket of the quadratic
// Weyl symbols, the spin models project commutators onto the operator basis.
ComplexMatrix ho_heisenberg(double t, const inertia::models::HOParams& p);
ComplexMatrix tls_heisenberg(double t, const inertia::models::TLSParams& p);
ComplexMatrix two_spin_heisenberg(double t, const inertia::models::TwoSpinParams& p);

// The same generator predicted by a DrivenSystem: -i Omega B(chi) + diag(w) Omega'/Omega.
// Omega' is supplied by the caller so no library derivative enters the comparison.
ComplexMatrix factorized_generator(const inertia::DrivenSystem& system, double t, double omega_dot);

// Independent protocol formulas.
double ho_omega(double t, const inertia::models::HOParams& p);
double ho_omega_dot(double t, const inertia::models::HOParams& p);
double tls_omega(double t, const inertia::models::TLSParams& p);
double tls_rabi(double t, const inertia::models::TLSParams& p);
double tls_rabi_dot(double t, const inertia::models::TLSParams& p);

// Spin-1/2 operators on one qubit.
ComplexMatrix sx();
ComplexMatrix sy();
ComplexMatrix sz();
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Hermitian matrix functions by eigendecomposition.
ComplexMatrix herm_sqrt(const ComplexMatrix& a);
ComplexMatrix herm_exp(const ComplexMatrix& a);

// exp(-H/T) / Z.
ComplexMatrix gibbs(const ComplexMatrix& h, double temperature);

// Single-mode Gaussian state rho ~ exp(-(z - m)^T A (z - m) / 2), z = (q, p), built as a
// Fock-space matrix of size n_build around an oscillator of frequency omega_ref, then
// truncated to n_keep levels and renormalized. Moments are taken from the Fock matrix.
struct FockGaussian {
    ComplexMatrix rho;
    inertia::GaussianState state;
};
FockGaussian fock_gaussian(const Eigen::Matrix2d& a, const Eigen::Vector2d& mean, double omega_ref,
                           int n_build, int n_keep);

// [tr |sqrt(rho1) sqrt(rho2)|]^2 through the singular values.
double uhlmann_svd(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

// Composite Gauss-Legendre rule on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 400, int order = 10);

// 2 g P int_0^cutoff w^3 [(1 + N) / (alpha - w) + N / (alpha + w)] dw by folding the
// integrand symmetrically around the pole.
double lamb_shift_pv(double temperature, double coupling, double cutoff, double alpha);

// Static driven-free qubit H = omega S_z + eps S_x coupled through dipole D: closed-form
// secular GKLS solution in the Schrodinger picture.
struct StaticQubit {
    double omega = 0.0;
    double epsilon = 0.0;
    double temperature = 0.0;
    double coupling = 0.0;
    ComplexMatrix dipole;
};
ComplexMatrix static_qubit_rho(const StaticQubit& q, const ComplexMatrix& rho0, double t);

// Random diagonalizable complex matrix V diag(lambda) V^{-1} with well separated eigenvalues.
ComplexMatrix random_diagonalizable(int n, std::mt19937& rng);

} // namespace oracle
