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

#include <utility>
#include <vector>

#include "inertia/linalg.hpp"
#include "inertia/system.hpp"

namespace inertia {

// All propagators act on the scaled vector u of a DrivenSystem. At t = 0 the scaled and
// physical vectors coincide; use apply_identity_rescaling to recover v(t).

struct PropagationOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    // Number of uniform theta intervals used to track eigenframes. Must be even.
    int frame_steps = 2000;
    DecompositionOptions decomposition;
};

struct InertialSolution {
    ComplexVector c;
    // int lambda_k dtheta
    ComplexVector dyn_phase;
    // Phase acquired by transported F_k relative to the fixed gauge at the endpoint.
    RealVector geo_phase;
    // log of the modulus picked up by transported F_k (zero for Hermitian B).
    RealVector amplitude_log;
    // Total accumulated phase: mode k carries exp(-i Lambda_k).
    ComplexVector Lambda;
    EigenFrame initial_frame;
    // Endpoint frame in the fixed gauge, modes ordered as in initial_frame.
    EigenFrame final_frame;
    double t = 0.0;
    double theta = 0.0;
};

LiouvilleVector propagate_exact(const DrivenSystem& system, const LiouvilleVector& u0, double t,
                                const PropagationOptions& opts = {});

// Exact solution sampled at increasing times.
std::vector<LiouvilleVector> propagate_exact_trajectory(const DrivenSystem& system,
                                                        const LiouvilleVector& u0,
                                                        const std::vector<double>& times,
                                                        const PropagationOptions& opts = {});

ComplexVector coefficients(const EigenFrame& frame, const ComplexVector& v0);

// sum_k c_k F_k exp(-i lambda_k theta)
LiouvilleVector propagate_constant_chi(const EigenFrame& frame, const ComplexVector& c, double theta);

std::pair<LiouvilleVector, InertialSolution> propagate_inertial(const DrivenSystem& system,
                                                                const LiouvilleVector& u0, double t,
                                                                bool include_geo,
                                                                const PropagationOptions& opts = {});

// Frozen chi = 0 frame driven by the true scaled time.
LiouvilleVector propagate_adiabatic(const DrivenSystem& system, const LiouvilleVector& u0, double t,
                                    const PropagationOptions& opts = {});

} // namespace inertia
