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

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace inertia::detail {

// Adaptive Gauss-Kronrod on [a, b] through the map s = a + (b - a) x, x in [0, 1].
// Boost compares unscaled local error estimates against scaled tolerances, so very short
// intervals would otherwise refine to the depth limit.
template <class F>
double integrate(F f, double a, double b, double tol, double* error = nullptr, unsigned max_depth = 12) {
    const double len = b - a;
    auto g = [&](double x) { return len * f(a + len * x); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, max_depth, tol, error);
}

} // namespace inertia::detail
