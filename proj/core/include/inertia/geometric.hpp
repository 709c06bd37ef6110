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

#include <vector>

#include "inertia/linalg.hpp"
#include "inertia/propagate.hpp"
#include "inertia/system.hpp"

namespace inertia {

// Polyline through waypoints in parameter space, parametrised by arc length on s in [0, 1].
struct ParameterCircuit {
    std::vector<RealVector> waypoints;
    // Closed circuits return to the first waypoint.
    bool closed = true;
    int samples = 256;

    Index dimension() const;
    RealVector point(double s) const;
    // n + 1 points, s = i/n; for closed circuits the last equals the first exactly.
    std::vector<RealVector> sample(int n) const;

    static ParameterCircuit square(const RealVector& center, double side, int samples = 256);
    static ParameterCircuit polygon_circle(const RealVector& center, double radius, int vertices,
                                           int samples = 256);
};

struct PhaseOptions {
    // Starting resolution; 0 uses circuit.samples.
    int samples = 0;
    double refine_tol = 1e-8;
    int max_refinements = 8;
    // Each fan triangle of the spanning surface is split into n^2 pieces.
    int surface_subdivisions = 16;
    DecompositionOptions decomposition;
};

// phi_k = -Im sum_i (1/2)[ln (G_i|F_{i+1}) - ln (G_{i+1}|F_i)] over frames along a path.
// Modes are matched between neighbours by permutation only, so any gauge may be supplied.
double geometric_phase_line(const std::vector<EigenFrame>& frames, Index mode);

// Line form with refinement doubling until successive values agree to refine_tol.
double geometric_phase_line(const GeneratorFamily& family, const ParameterCircuit& circuit, Index mode,
                            const PhaseOptions& opts = {});

// Curvature V_ij = sum_{m != n} [(G_n|d_i B|F_m)(G_m|d_j B|F_n) - (i <-> j)] / (lambda_m - lambda_n)^2
ComplexMatrix phase_curvature(const GeneratorFamily& family, const RealVector& chi, Index mode,
                              const DecompositionOptions& opts = {});

// phi_k = -Im of the curvature flux through a fan triangulation of the circuit.
double geometric_phase_surface(const GeneratorFamily& family, const ParameterCircuit& circuit, Index mode,
                               const PhaseOptions& opts = {});

struct AccumulatedPhase {
    ComplexVector dynamic;
    RealVector geometric;
    // Lambda_k = dynamic_k - geometric_k (plus i times the transported log-modulus)
    ComplexVector total;
};

AccumulatedPhase accumulated_phase(const InertialSolution& solution);

} // namespace inertia
