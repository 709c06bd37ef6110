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

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "inertia/linalg.hpp"

namespace inertia {

// Expectation values over an operator basis, tagged with physical and scaled time.
struct LiouvilleVector {
    ComplexVector coeffs;
    double t = 0.0;
    double theta = 0.0;
};

// chi -> B(chi), the dimensionless part of the Heisenberg generator M(t) = Omega(t) B(chi(t)).
class GeneratorFamily {
public:
    using MatrixFn = std::function<ComplexMatrix(const RealVector&)>;
    using GradientFn = std::function<ComplexMatrix(const RealVector&, Index)>;

    GeneratorFamily() = default;
    GeneratorFamily(std::string name, Index dim, Index n_params, MatrixFn matrix,
                    GradientFn gradient = {}, BlockList blocks = {});

    const std::string& name() const { return name_; }
    Index dim() const { return dim_; }
    Index n_params() const { return n_params_; }
    const BlockList& blocks() const { return blocks_; }
    bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }

    ComplexMatrix matrix(const RealVector& chi) const;
    // dB/dchi_i, analytic when supplied, otherwise central differences with step h.
    ComplexMatrix gradient(const RealVector& chi, Index i, double h = 1e-5) const;
    EigenFrame frame(const RealVector& chi, const DecompositionOptions& opts = {}) const;

private:
    std::string name_;
    Index dim_ = 0;
    Index n_params_ = 0;
    MatrixFn matrix_;
    GradientFn gradient_;
    BlockList blocks_;
};

// Omega(t) and chi(t) on [0, domain_end).
struct Protocol {
    std::function<double(double)> omega;
    std::function<RealVector(double)> chi;
    std::function<RealVector(double)> chi_rate;
    double domain_end = std::numeric_limits<double>::infinity();

    void check_domain(double t) const;
    // dchi/dtheta = (dchi/dt) / Omega
    RealVector chi_theta_rate(double t) const;
};

// Generator family, protocol, and the identity-rescaling weights w_i: the model
// propagates u with v_i = u_i (Omega(t)/Omega(0))^{w_i}.
struct DrivenSystem {
    GeneratorFamily family;
    Protocol protocol;
    RealVector rescale_weights;

    ComplexMatrix generator_at(double t) const;
};

double scaled_time(const Protocol& protocol, double t);

// theta(t) = int_0^t Omega and its inverse.
class ScaledTime {
public:
    explicit ScaledTime(Protocol protocol);

    double theta(double t) const;
    // Inverse map by Newton iteration, |theta(t) - theta| < 1e-12 (1 + theta).
    double time_at(double theta) const;
    // Inverse on an increasing theta grid.
    std::vector<double> times_at(const std::vector<double>& thetas) const;

private:
    double integrate(double a, double b) const;
    Protocol protocol_;
};

ComplexVector apply_identity_rescaling(const DrivenSystem& system, const ComplexVector& v_scaled,
                                       double t);
ComplexVector remove_identity_rescaling(const DrivenSystem& system, const ComplexVector& v_physical,
                                        double t);

} // namespace inertia
