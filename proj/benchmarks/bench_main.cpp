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


#include <vector>

#include <benchmark/benchmark.h>

#include "inertia/inertia.hpp"

using namespace inertia;

namespace {

models::HOParams ramp_ho(double tf) {
    models::HOParams p;
    p.accel = -5e-3;
    p.chi0 = models::ho_solve_chi0(20.0, 10.0, p.accel, tf);
    return p;
}

models::TLSParams ramp_tls(double tf) {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, tf);
    return p;
}

void BM_DecomposeOscillator(benchmark::State& state) {
    const ComplexMatrix b = models::ho_generator(0.5);
    const BlockList blocks = models::ho_blocks();
    for (auto _ : state) {
        benchmark::DoNotOptimize(bi_eigendecompose(b, blocks));
    }
}
BENCHMARK(BM_DecomposeOscillator);

void BM_DecomposeSpinPair(benchmark::State& state) {
    const GeneratorFamily nl = models::two_spin_nonlocal_family();
    RealVector chi(2);
    chi << 0.3, 0.6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nl.frame(chi));
    }
}
BENCHMARK(BM_DecomposeSpinPair);

void BM_ExactOscillator(benchmark::State& state) {
    const double tf = static_cast<double>(state.range(0)) / 100.0;
    const models::HOParams p = ramp_ho(tf);
    const DrivenSystem sys = models::ho_system(p);
    const LiouvilleVector u0 = models::ho_initial_vector(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_exact(sys, u0, tf));
    }
}
BENCHMARK(BM_ExactOscillator)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_InertialOscillator(benchmark::State& state) {
    const double tf = static_cast<double>(state.range(0)) / 100.0;
    const models::HOParams p = ramp_ho(tf);
    const DrivenSystem sys = models::ho_system(p);
    const LiouvilleVector u0 = models::ho_initial_vector(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_inertial(sys, u0, tf, true));
    }
}
BENCHMARK(BM_InertialOscillator)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ExactQubit(benchmark::State& state) {
    const models::TLSParams p = ramp_tls(1.0);
    const DrivenSystem sys = models::tls_system(p);
    const LiouvilleVector u0 = models::tls_initial_vector(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_exact(sys, u0, 1.0));
    }
}
BENCHMARK(BM_ExactQubit)->Unit(benchmark::kMillisecond);

void BM_SweepPoint(benchmark::State& state) {
    SweepSpec spec;
    spec.model = ramp_ho(0.5);
    spec.profile_samples = 21;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_point(spec, 0.5));
    }
}
BENCHMARK(BM_SweepPoint)->Unit(benchmark::kMillisecond);

void BM_MasterEquation(benchmark::State& state) {
    const models::TLSParams p = ramp_tls(1.0);
    ComplexMatrix d(2, 2);
    d << 0.0, 1.0, 1.0, 0.0;
    const MasterEquationSpec spec = build_master_equation(p, d);
    BathSpec bath;
    bath.temperature = 10.0;
    bath.coupling = 1e-4;
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) {
        grid.push_back(0.05 * i);
    }
    const ComplexMatrix rho0 = density_matrix(BlochState{Eigen::Vector3d(0.0, 0.0, 1.0)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(name_evolve(spec, bath, rho0, grid));
    }
}
BENCHMARK(BM_MasterEquation)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
