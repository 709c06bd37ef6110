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

#include "inertia/models.hpp"

namespace inertia::models {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::string model_name(const Model& m) {
    return std::visit(overloaded{[](const HOParams&) { return std::string("ho"); },
                                 [](const TLSParams&) { return std::string("tls"); },
                                 [](const TwoSpinParams&) { return std::string("two-spin"); }},
                      m);
}

DrivenSystem make_system(const Model& m) {
    return std::visit(overloaded{[](const HOParams& p) { return ho_system(p); },
                                 [](const TLSParams& p) { return tls_system(p); },
                                 [](const TwoSpinParams& p) { return two_spin_system(p); }},
                      m);
}

LiouvilleVector initial_vector(const Model& m) {
    return std::visit(overloaded{[](const HOParams& p) { return ho_initial_vector(p); },
                                 [](const TLSParams& p) { return tls_initial_vector(p); },
                                 [](const TwoSpinParams& p) { return two_spin_initial_vector(p); }},
                      m);
}

DensityState reconstruct_state(const Model& m, const ComplexVector& v, double t) {
    DensityState s = std::visit(
        overloaded{[&](const HOParams& p) -> DensityState {
                       return ho_reconstruct(v, ho_protocol(t, p).omega, p.mass);
                   },
                   [&](const TLSParams& p) -> DensityState {
                       return tls_reconstruct(v, tls_protocol(t, p).omega, p.epsilon);
                   },
                   [&](const TwoSpinParams& p) -> DensityState { return two_spin_reconstruct(v, t, p); }},
        m);
    validate_state(s, 1e-6);
    return s;
}

} // namespace inertia::models
