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

#include "inertia/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "inertia/errors.hpp"

namespace inertia {

namespace {

std::vector<RealVector> vertices(const ParameterCircuit& c) {
    std::vector<RealVector> v = c.waypoints;
    if (c.closed) {
        v.push_back(c.waypoints.front());
    }
    return v;
}

std::vector<double> cumulative_length(const std::vector<RealVector>& v) {
    std::vector<double> len(v.size(), 0.0);
    for (std::size_t i = 1; i < v.size(); ++i) {
        len[i] = len[i - 1] + (v[i] - v[i - 1]).norm();
    }
    return len;
}

// Index into frame `next` of the mode continuing `mode` of `prev`.
Index follow(const EigenFrame& prev, const EigenFrame& next, Index mode) {
    const ContinuityCorrection corr = track_continuity(prev, next);
    return corr.permutation[static_cast<std::size_t>(mode)];
}

double line_at_resolution(const GeneratorFamily& family, const ParameterCircuit& circuit, Index mode, int n,
                          const DecompositionOptions& opts) {
    const std::vector<RealVector> pts = circuit.sample(n);
    std::vector<EigenFrame> frames;
    frames.reserve(pts.size());
    for (const RealVector& p : pts) {
        frames.push_back(family.frame(p, opts));
    }
    return geometric_phase_line(frames, mode);
}

// Signed area element of triangle (a, b, c) projected on the (i, j) coordinate plane.
double projected_area(const RealVector& a, const RealVector& b, const RealVector& c, Index i, Index j) {
    return 0.5 * ((b(i) - a(i)) * (c(j) - a(j)) - (b(j) - a(j)) * (c(i) - a(i)));
}

} // namespace

Index ParameterCircuit::dimension() const {
    return waypoints.empty() ? 0 : waypoints.front().size();
}

RealVector ParameterCircuit::point(double s) const {
    if (waypoints.empty()) {
        throw std::invalid_argument("ParameterCircuit: no waypoints");
    }
    const std::vector<RealVector> v = vertices(*this);
    if (v.size() == 1) {
        return v.front();
    }
    const std::vector<double> len = cumulative_length(v);
    const double target = std::clamp(s, 0.0, 1.0) * len.back();
    std::size_t seg = 1;
    while (seg + 1 < v.size() && len[seg] < target) {
        ++seg;
    }
    const double span = len[seg] - len[seg - 1];
    const double f = span > 0.0 ? (target - len[seg - 1]) / span : 0.0;
    return v[seg - 1] + f * (v[seg] - v[seg - 1]);
}

std::vector<RealVector> ParameterCircuit::sample(int n) const {
    if (n < 1) {
        throw std::invalid_argument("ParameterCircuit::sample: n must be positive");
    }
    std::vector<RealVector> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        out.push_back(point(static_cast<double>(i) / n));
    }
    if (closed) {
        out.back() = out.front();
    }
    return out;
}

ParameterCircuit ParameterCircuit::square(const RealVector& center, double side, int samples) {
    if (center.size() != 2) {
        throw std::invalid_argument("ParameterCircuit::square: two parameters required");
    }
    const double h = 0.5 * side;
    ParameterCircuit c;
    c.samples = samples;
    for (const auto& [dx, dy] : {std::pair{-h, -h}, std::pair{h, -h}, std::pair{h, h}, std::pair{-h, h}}) {
        RealVector p = center;
        p(0) += dx;
        p(1) += dy;
        c.waypoints.push_back(p);
    }
    return c;
}

ParameterCircuit ParameterCircuit::polygon_circle(const RealVector& center, double radius, int vertices,
                                                  int samples) {
    if (center.size() != 2 || vertices < 3) {
        throw std::invalid_argument("ParameterCircuit::polygon_circle: two parameters and three vertices required");
    }
    ParameterCircuit c;
    c.samples = samples;
    for (int k = 0; k < vertices; ++k) {
        const double a = 2.0 * std::numbers::pi * k / vertices;
        RealVector p = center;
        p(0) += radius * std::cos(a);
        p(1) += radius * std::sin(a);
        c.waypoints.push_back(p);
    }
    return c;
}

double geometric_phase_line(const std::vector<EigenFrame>& frames, Index mode) {
    if (frames.size() < 2) {
        throw std::invalid_argument("geometric_phase_line: at least two frames required");
    }
    if (mode < 0 || mode >= frames.front().size()) {
        throw std::out_of_range("geometric_phase_line: mode index out of range");
    }
    double phase = 0.0;
    Index k = mode;
    for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
        const EigenFrame& a = frames[i];
        const EigenFrame& b = frames[i + 1];
        const Index m = follow(a, b, k);
        const cplx forward = a.lefts.col(k).dot(b.rights.col(m));
        const cplx backward = b.lefts.col(m).dot(a.rights.col(k));
        phase -= 0.5 * (std::arg(forward) - std::arg(backward));
        k = m;
    }
    return phase;
}

double geometric_phase_line(const GeneratorFamily& family, const ParameterCircuit& circuit, Index mode,
                            const PhaseOptions& opts) {
    if (circuit.dimension() != family.n_params()) {
        throw std::invalid_argument("geometric_phase_line: circuit and family dimensions differ");
    }
    int n = opts.samples > 0 ? opts.samples : circuit.samples;
    double prev = line_at_resolution(family, circuit, mode, n, opts.decomposition);
    for (int r = 0; r < opts.max_refinements; ++r) {
        n *= 2;
        const double next = line_at_resolution(family, circuit, mode, n, opts.decomposition);
        if (std::abs(next - prev) <= opts.refine_tol) {
            return next;
        }
        prev = next;
    }
    std::ostringstream msg;
    msg << "geometric_phase_line: no agreement to " << opts.refine_tol << " after " << opts.max_refinements
        << " refinements (last " << prev << ")";
    throw NotConverged(msg.str());
}

ComplexMatrix phase_curvature(const GeneratorFamily& family, const RealVector& chi, Index mode,
                              const DecompositionOptions& opts) {
    const EigenFrame f = family.frame(chi, opts);
    const Index d = family.n_params();
    std::vector<ComplexMatrix> coupling;
    for (Index i = 0; i < d; ++i) {
        coupling.push_back(f.lefts.adjoint() * family.gradient(chi, i) * f.rights);
    }
    ComplexMatrix v = ComplexMatrix::Zero(d, d);
    for (Index m = 0; m < f.size(); ++m) {
        if (m == mode || f.block[static_cast<std::size_t>(m)] != f.block[static_cast<std::size_t>(mode)]) {
            continue;
        }
        const cplx gap = f.lambdas(m) - f.lambdas(mode);
        if (std::abs(gap) < opts.degeneracy_threshold) {
            throw DegenerateSpectrum("phase_curvature: coincident eigenvalues inside the circuit");
        }
        for (Index i = 0; i < d; ++i) {
            for (Index j = i + 1; j < d; ++j) {
                const cplx term = (coupling[i](mode, m) * coupling[j](m, mode) -
                                   coupling[j](mode, m) * coupling[i](m, mode)) /
                                  (gap * gap);
                v(i, j) += term;
                v(j, i) -= term;
            }
        }
    }
    return v;
}

double geometric_phase_surface(const GeneratorFamily& family, const ParameterCircuit& circuit, Index mode,
                               const PhaseOptions& opts) {
    const Index d = circuit.dimension();
    if (d != family.n_params()) {
        throw std::invalid_argument("geometric_phase_surface: circuit and family dimensions differ");
    }
    if (d > 3) {
        throw UnsupportedDimension("geometric_phase_surface: more than three parameters");
    }
    if (!circuit.closed) {
        throw std::invalid_argument("geometric_phase_surface: circuit must be closed");
    }
    if (d < 2 || circuit.waypoints.size() < 3) {
        return 0.0;
    }
    RealVector centroid = RealVector::Zero(d);
    for (const RealVector& p : circuit.waypoints) {
        centroid += p;
    }
    centroid /= static_cast<double>(circuit.waypoints.size());

    const int s = std::max(1, opts.surface_subdivisions);
    cplx flux{0.0, 0.0};
    // Edge-midpoint rule on each sub-triangle, exact for quadratic integrands.
    auto integrate_triangle = [&](const RealVector& a, const RealVector& b, const RealVector& c) {
        const RealVector mids[3] = {0.5 * (a + b), 0.5 * (b + c), 0.5 * (c + a)};
        ComplexMatrix avg = ComplexMatrix::Zero(d, d);
        for (const RealVector& m : mids) {
            avg += phase_curvature(family, m, mode, opts.decomposition);
        }
        avg /= 3.0;
        for (Index i = 0; i < d; ++i) {
            for (Index j = i + 1; j < d; ++j) {
                flux += avg(i, j) * projected_area(a, b, c, i, j);
            }
        }
    };
    const std::size_t nv = circuit.waypoints.size();
    for (std::size_t e = 0; e < nv; ++e) {
        const RealVector& p = circuit.waypoints[e];
        const RealVector& q = circuit.waypoints[(e + 1) % nv];
        // Barycentric lattice on (centroid, p, q).
        auto node = [&](int i, int j) -> RealVector {
            return centroid + (static_cast<double>(i) / s) * (p - centroid) + (static_cast<double>(j) / s) * (q - centroid);
        };
        for (int i = 0; i < s; ++i) {
            for (int j = 0; i + j < s; ++j) {
                integrate_triangle(node(i, j), node(i + 1, j), node(i, j + 1));
                if (i + j + 1 < s) {
                    integrate_triangle(node(i + 1, j), node(i + 1, j + 1), node(i, j + 1));
                }
            }
        }
    }
    return -flux.imag();
}

AccumulatedPhase accumulated_phase(const InertialSolution& solution) {
    AccumulatedPhase out;
    out.dynamic = solution.dyn_phase;
    out.geometric = solution.geo_phase;
    out.total = solution.Lambda;
    return out;
}

} // namespace inertia
