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


#include <cmath>
#include <vector>

#include <doctest.h>

#include "inertia/inertia.hpp"
#include "oracles.hpp"

using namespace inertia;

namespace {

BathSpec bath(double temperature, double coupling, double cutoff = 100.0, bool lamb = false) {
    BathSpec b;
    b.temperature = temperature;
    b.coupling = coupling;
    b.cutoff = cutoff;
    b.lamb_shift = lamb;
    return b;
}

ComplexMatrix hamiltonian(const models::TLSParams& p, double t) {
    return oracle::tls_omega(t, p) * oracle::sz() + p.epsilon * oracle::sx();
}

// int omega^3 / (alpha - omega) d omega
double cubic_pole_antiderivative(double alpha, double w) {
    return -(w * w * w / 3.0 + alpha * w * w / 2.0 + alpha * alpha * w + alpha * alpha * alpha * std::log(std::abs(w - alpha)));
}

std::vector<double> grid(double t_end, int n) {
    std::vector<double> g;
    for (int i = 0; i <= n; ++i) {
        g.push_back(t_end * i / n);
    }
    return g;
}

ComplexMatrix pure_state(const Eigen::Vector3d& r) { return density_matrix(BlochState{r.normalized()}); }

} // namespace

TEST_SUITE("open_quantum") {

TEST_CASE("Bose occupation") {
    CHECK(bose_occupation(0.0, 3.0) == 0.0);
    CHECK(bose_occupation(0.0, -3.0) == 0.0);
    CHECK(bose_occupation(2.0, 3.0) == doctest::Approx(1.0 / (std::exp(1.5) - 1.0)).epsilon(1e-14));
}

TEST_CASE("decay rates") {
    const BathSpec zero = bath(0.0, 0.3);
    CHECK(decay_rate(zero, 2.0) == doctest::Approx(0.3 * 8.0).epsilon(1e-15));
    CHECK(decay_rate(zero, -2.0) == 0.0);
    CHECK(decay_rate(bath(5.0, 0.3), 0.0) == 0.0);
    for (double temperature : {0.5, 3.0, 10.0, 40.0}) {
        const BathSpec b = bath(temperature, 1e-4);
        for (double a : {0.1, 1.0, 5.0, 20.0, 60.0}) {
            CAPTURE(temperature);
            CAPTURE(a);
            CHECK(decay_rate(b, a) >= 0.0);
            CHECK(decay_rate(b, -a) >= 0.0);
            const double ratio = decay_rate(b, a) / decay_rate(b, -a);
            CHECK(std::abs(ratio / std::exp(a / temperature) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("bath validation") {
    CHECK_THROWS_AS(bath(-1.0, 0.1).validate(), ConfigInvalid);
    CHECK_THROWS_AS(bath(1.0, -0.1).validate(), ConfigInvalid);
    CHECK_THROWS_AS(bath(1.0, 0.1, 0.0).validate(), ConfigInvalid);
    CHECK_NOTHROW(bath(0.0, 0.0).validate());
}

TEST_CASE("Lamb shift") {
    CHECK(lamb_shift(bath(5.0, 1e-3, 100.0, false), 10.0) == 0.0);
    CHECK(lamb_shift(bath(5.0, 0.0, 100.0, true), 10.0) == 0.0);
    for (double temperature : {0.0, 10.0}) {
        for (double a : {-30.0, -5.0, 0.5, 20.0, 70.0}) {
            CAPTURE(temperature);
            CAPTURE(a);
            const double s = lamb_shift(bath(temperature, 1e-3, 100.0, true), a);
            const double ref = oracle::lamb_shift_pv(temperature, 1e-3, 100.0, a);
            CHECK(std::isfinite(s));
            CHECK(std::abs(s - ref) < 1e-8 * std::abs(ref));
        }
    }
    for (double a : {-7.0, 3.0, 45.0}) {
        const double closed = 2e-3 * lamb_shift_integral_zero_temperature(a, 100.0);
        CHECK(std::abs(closed - oracle::lamb_shift_pv(0.0, 1e-3, 100.0, a)) < 1e-9 * std::abs(closed));
    }
    // Doubling the cutoff adds the cubic-led growth term.
    const double a = 12.0;
    const double s1 = lamb_shift(bath(0.0, 1e-3, 100.0, true), a);
    const double s2 = lamb_shift(bath(0.0, 1e-3, 200.0, true), a);
    const double growth = 2e-3 * (cubic_pole_antiderivative(a, 200.0) - cubic_pole_antiderivative(a, 100.0));
    CHECK(std::abs((s2 - s1) - growth) < 1e-9 * std::abs(growth));
    CHECK(std::abs(growth + 2e-3 * (200.0 * 200.0 * 200.0 - 1e6) / 3.0) < 0.2 * std::abs(growth));
    CHECK_THROWS_AS(lamb_shift(bath(0.0, 1e-3, 100.0, true), 100.0), DomainExceeded);
}

TEST_CASE("effective frequencies") {
    SUBCASE("static qubit gives the bare Bohr frequencies") {
        const DrivenSystem sys = models::tls_system(models::TLSParams{});
        CHECK(effective_frequency(sys, 0.3, 0) == doctest::Approx(-20.0).epsilon(1e-12));
        CHECK(std::abs(effective_frequency(sys, 0.3, 1)) < 1e-12);
        CHECK(effective_frequency(sys, 0.3, 2) == doctest::Approx(20.0).epsilon(1e-12));
    }
    SUBCASE("constant chi scales with the Rabi frequency") {
        models::TLSParams p;
        p.chi0 = 0.5;
        const DrivenSystem sys = models::tls_system(p);
        for (double t : {0.0, 0.005, 0.01}) {
            const double r = oracle::tls_rabi(t, p);
            CHECK(effective_frequency(sys, t, 2) == doctest::Approx(std::sqrt(1.25) * r).epsilon(1e-10));
            CHECK(effective_frequency(sys, t, 0) == doctest::Approx(-std::sqrt(1.25) * r).epsilon(1e-10));
        }
    }
    SUBCASE("derivative of the accumulated phase") {
        models::TLSParams p;
        p.accel = -5e-3;
        p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
        const DrivenSystem sys = models::tls_system(p);
        const LiouvilleVector u0 = models::tls_initial_vector(p);
        const double t = 0.5;
        const double h = 1e-3;
        const auto lp = propagate_inertial(sys, u0, t + h, true).second.Lambda;
        const auto lm = propagate_inertial(sys, u0, t - h, true).second.Lambda;
        for (Index k = 0; k < 3; ++k) {
            const double fd = (lp(k) - lm(k)).real() / (2 * h);
            const double alpha = effective_frequency(sys, t, k);
            CAPTURE(k);
            CHECK(std::abs(fd - alpha) < 1e-6 * std::max(1.0, std::abs(alpha)));
        }
    }
}

TEST_CASE("jump operators") {
    models::TLSParams p;
    p.chi0 = 0.02;
    ComplexMatrix d = 2.0 * oracle::sx();
    const MasterEquationSpec spec = build_master_equation(p, d);
    CHECK(spec.dipole_residual < 1e-10);
    // Without driving the jump operators are eigenoperators of [H, .].
    const models::TLSParams s;
    const MasterEquationSpec still = build_master_equation(s, d);
    CHECK(still.dipole_residual < 1e-10);
    const ComplexMatrix h = hamiltonian(s, 0.0);
    const double r = oracle::tls_rabi(0.0, s);
    for (std::size_t j = 0; j < still.jump_ops.size(); ++j) {
        const ComplexMatrix& f = still.jump_ops[j];
        CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-14));
        const ComplexMatrix comm = h * f - f * h;
        const cplx c = (f.adjoint() * comm).trace();
        CHECK((comm - c * f).norm() < 1e-10 * r);
        CHECK(std::abs(std::abs(c) - std::abs(still.frame0.lambdas(static_cast<Index>(j))) * r) < 1e-10 * r);
    }
    CHECK_THROWS_AS(build_master_equation(p, ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("no coupling leaves the interaction-picture state unchanged") {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
    const MasterEquationSpec spec = build_master_equation(p, 2.0 * oracle::sx());
    const ComplexMatrix rho0 = pure_state({0.2, 0.4, 0.9});
    const NameTrajectory tr = name_evolve(spec, bath(10.0, 0.0), rho0, grid(1.0, 10));
    for (const auto& s : tr.samples) {
        CHECK((s.rho_interaction - rho0).norm() < 1e-12);
    }
}

TEST_CASE("static qubit relaxes to the Gibbs state") {
    const models::TLSParams p;
    const ComplexMatrix d = 2.0 * oracle::sx();
    const MasterEquationSpec spec = build_master_equation(p, d);
    const ComplexMatrix rho0 = pure_state({0.0, 0.0, 1.0});
    const NameTrajectory tr = name_evolve(spec, bath(10.0, 1e-4), rho0, grid(60.0, 60));
    const ComplexMatrix target = oracle::gibbs(hamiltonian(p, 0.0), 10.0);
    CHECK(trace_distance(tr.samples.back().rho, target) < 1e-6);
    oracle::StaticQubit q{p.omega0, p.epsilon, 10.0, 1e-4, d};
    double worst = 0.0;
    for (const auto& s : tr.samples) {
        worst = std::max(worst, trace_distance(s.rho, oracle::static_qubit_rho(q, rho0, s.t)));
    }
    CHECK(worst < 1e-6);
    CHECK(tr.warnings.empty());
}

TEST_CASE("driven trajectories stay physical") {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
    const MasterEquationSpec spec = build_master_equation(p, 2.0 * oracle::sx());
    for (bool lamb : {false, true}) {
        const NameTrajectory tr = name_evolve(spec, bath(10.0, 1e-4, 100.0, lamb), pure_state({1.0, 0.0, 0.5}), grid(1.0, 50));
        CHECK(tr.max_trace_deviation < 1e-9);
        CHECK(tr.min_eigenvalue > -1e-7);
        for (const auto& s : tr.samples) {
            CHECK(s.hermiticity_deviation < 1e-9);
            CHECK(std::abs(s.rho.trace() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("zero temperature excited population decays monotonically") {
    const models::TLSParams p;
    const MasterEquationSpec spec = build_master_equation(p, 2.0 * oracle::sx());
    const ComplexMatrix h = hamiltonian(p, 0.0);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const ComplexVector excited = es.eigenvectors().col(1);
    const ComplexMatrix rho0 = excited * excited.adjoint();
    const NameTrajectory tr = name_evolve(spec, bath(0.0, 1e-4), rho0, grid(5.0, 100));
    double last = 2.0;
    for (const auto& s : tr.samples) {
        const double pe = excited.dot(s.rho * excited).real();
        CHECK(pe <= last + 1e-12);
        last = pe;
    }
    CHECK(last < 0.05);
}

TEST_CASE("weak driving converges to the static solution") {
    const ComplexMatrix d = 2.0 * oracle::sx();
    const ComplexMatrix rho0 = pure_state({0.6, 0.0, 0.8});
    std::vector<double> chis{4e-5, 2e-5, 1e-5};
    std::vector<double> diffs;
    for (double chi : chis) {
        models::TLSParams p;
        p.chi0 = chi;
        const NameTrajectory tr = name_evolve(build_master_equation(p, d), bath(10.0, 1e-3), rho0, grid(1.0, 40));
        oracle::StaticQubit q{p.omega0, p.epsilon, 10.0, 1e-3, d};
        double worst = 0.0;
        for (const auto& s : tr.samples) {
            worst = std::max(worst, trace_distance(s.rho, oracle::static_qubit_rho(q, rho0, s.t)));
        }
        diffs.push_back(worst);
    }
    for (std::size_t i = 1; i < diffs.size(); ++i) {
        const double slope = std::log(diffs[i - 1] / diffs[i]) / std::log(chis[i - 1] / chis[i]);
        CAPTURE(diffs[i - 1]);
        CAPTURE(diffs[i]);
        CHECK(slope >= 1.0);
    }
}

TEST_CASE("secular condition is reported") {
    const models::TLSParams p;
    const MasterEquationSpec spec = build_master_equation(p, 2.0 * oracle::sx());
    const NameTrajectory weak = name_evolve(spec, bath(10.0, 1e-4), pure_state({0, 0, 1}), grid(0.1, 2));
    CHECK(weak.secular_margin > 10.0);
    CHECK(weak.warnings.empty());
    const NameTrajectory strong = name_evolve(spec, bath(10.0, 1e-2), pure_state({0, 0, 1}), grid(0.1, 2));
    CHECK(strong.secular_margin < 10.0);
    CHECK_FALSE(strong.warnings.empty());
}

TEST_CASE("input validation") {
    const MasterEquationSpec spec = build_master_equation(models::TLSParams{}, 2.0 * oracle::sx());
    const ComplexMatrix rho0 = pure_state({0, 0, 1});
    CHECK_THROWS_AS(name_evolve(spec, bath(1.0, 1e-4), ComplexMatrix::Identity(3, 3) / 3.0, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(name_evolve(spec, bath(1.0, 1e-4), rho0, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(name_evolve(spec, bath(-1.0, 1e-4), rho0, {0.1}), ConfigInvalid);
    ComplexMatrix bad = rho0;
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(name_evolve(spec, bath(1.0, 1e-4), bad, {0.1}), UnphysicalState);
    CHECK(name_evolve(spec, bath(1.0, 1e-4), rho0, {}).samples.empty());
}

TEST_CASE("trace distance") {
    const ComplexMatrix a = pure_state({0, 0, 1});
    const ComplexMatrix b = pure_state({0, 0, -1});
    CHECK(trace_distance(a, a) == 0.0);
    CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-15));
}

}
