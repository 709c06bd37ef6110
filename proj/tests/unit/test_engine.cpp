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
#include <numbers>
#include <vector>

#include <doctest.h>

#include "inertia/inertia.hpp"
#include "oracles.hpp"

using namespace inertia;

namespace {

constexpr cplx I{0.0, 1.0};

models::HOParams constant_ho() {
    models::HOParams p;
    p.chi0 = -0.05;
    return p;
}

models::TLSParams constant_tls() {
    models::TLSParams p;
    p.chi0 = -0.005;
    return p;
}

double sup_norm(const ComplexVector& a, const ComplexVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Worst deviation between the exact scaled solution and the constant-chi closed form on theta in [0, 50].
double constant_chi_deviation(const DrivenSystem& sys, const LiouvilleVector& u0) {
    const ScaledTime clock(sys.protocol);
    std::vector<double> thetas;
    for (int i = 0; i <= 100; ++i) {
        thetas.push_back(0.5 * i);
    }
    const std::vector<double> times = clock.times_at(thetas);
    const auto traj = propagate_exact_trajectory(sys, u0, times);
    const EigenFrame frame = sys.family.frame(sys.protocol.chi(0.0));
    const ComplexVector c = coefficients(frame, u0.coeffs);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const LiouvilleVector ref = propagate_constant_chi(frame, c, thetas[i]);
        worst = std::max(worst, sup_norm(traj[i].coeffs, ref.coeffs));
    }
    return worst;
}

} // namespace

TEST_SUITE("engine") {

TEST_CASE("scaled time of a constant frequency") {
    Protocol p;
    p.omega = [](double) { return 20.0; };
    p.chi = [](double) { return RealVector::Zero(1); };
    p.chi_rate = [](double) { return RealVector::Zero(1); };
    CHECK(scaled_time(p, 0.0) == 0.0);
    CHECK(scaled_time(p, 0.5) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("scaled time of the constant-mu oscillator protocol") {
    const DrivenSystem sys = models::ho_system(constant_ho());
    // omega = 20 / (1 + t), theta = 20 ln(1 + t)
    CHECK(std::abs(scaled_time(sys.protocol, 1.0) - 20.0 * std::numbers::ln2) < 1e-10);
}

TEST_CASE("scaled time is increasing and inverts") {
    models::HOParams p;
    p.chi0 = models::ho_solve_chi0(20.0, 10.0, -5e-3, 0.5);
    p.accel = -5e-3;
    const DrivenSystem sys = models::ho_system(p);
    const ScaledTime clock(sys.protocol);
    double last = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double t = 0.5 * i / 50.0;
        const double th = clock.theta(t);
        CHECK(th > last);
        last = th;
        CHECK(std::abs(clock.time_at(th) - t) < 1e-10);
    }
}

TEST_CASE("scaled time past the protocol singularity") {
    models::HOParams p;
    p.chi0 = 0.04;
    const DrivenSystem sys = models::ho_system(p);
    CHECK(sys.protocol.domain_end == doctest::Approx(1.25));
    CHECK_THROWS_AS(scaled_time(sys.protocol, 1.3), DomainExceeded);
    CHECK_THROWS_AS(propagate_exact(sys, models::ho_initial_vector(p), 1.3), DomainExceeded);
}

TEST_CASE("static oscillator ground state is stationary") {
    models::HOParams p;
    const DrivenSystem sys = models::ho_system(p);
    const LiouvilleVector u0 = models::ho_initial_vector(p);
    const LiouvilleVector u = propagate_exact(sys, u0, 3.0);
    CHECK(sup_norm(u.coeffs, u0.coeffs) < 1e-12);
    CHECK(u.theta == doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("exact propagation matches the constant-chi closed form") {
    SUBCASE("oscillator") {
        models::HOParams p = constant_ho();
        p.q0 = 0.1;
        CHECK(constant_chi_deviation(models::ho_system(p), models::ho_initial_vector(p)) < 1e-8);
    }
    SUBCASE("qubit") {
        const models::TLSParams p = constant_tls();
        CHECK(constant_chi_deviation(models::tls_system(p), models::tls_initial_vector(p)) < 1e-8);
    }
}

TEST_CASE("exact trajectory may start at t = 0") {
    models::TLSParams p;
    p.chi0 = 0.01;
    p.accel = -5e-3;
    const DrivenSystem sys = models::tls_system(p);
    const LiouvilleVector u0 = models::tls_initial_vector(p);
    const auto traj = propagate_exact_trajectory(sys, u0, {0.0, 0.0, 0.05, 0.1});
    REQUIRE(traj.size() == 4);
    CHECK(sup_norm(traj[0].coeffs, u0.coeffs) == 0.0);
    CHECK(sup_norm(traj[1].coeffs, u0.coeffs) == 0.0);
    CHECK(sup_norm(traj[3].coeffs, propagate_exact(sys, u0, 0.1).coeffs) < 1e-9);
}

TEST_CASE("exact qubit solution is stable under a tighter tolerance") {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
    const DrivenSystem sys = models::tls_system(p);
    const LiouvilleVector u0 = models::tls_initial_vector(p);
    PropagationOptions tight;
    tight.rtol = 5e-11;
    tight.atol = 5e-13;
    const LiouvilleVector a = propagate_exact(sys, u0, 1.0);
    const LiouvilleVector b = propagate_exact(sys, u0, 1.0, tight);
    CHECK(sup_norm(a.coeffs, b.coeffs) < 1e-8);
    // Modulus of the rescaled vector follows the eigenmode recombination.
    const EigenFrame f = sys.family.frame(sys.protocol.chi(0.0));
    const LiouvilleVector ref = propagate_constant_chi(f, coefficients(f, u0.coeffs), 0.0);
    CHECK(std::abs(ref.coeffs.norm() - u0.coeffs.norm()) < 1e-12);
}

TEST_CASE("coefficients invert the frame expansion") {
    const models::HOParams p = constant_ho();
    const EigenFrame f = models::ho_system(p).family.frame(RealVector::Constant(1, p.chi0));
    const ComplexVector v0 = models::ho_initial_vector(p).coeffs;
    CHECK(sup_norm(f.expand(coefficients(f, v0)), v0) < 1e-12);
    const ComplexVector c1 = coefficients(f, f.rights.col(1));
    CHECK(std::abs(c1(1) - 1.0) < 1e-12);
    CHECK(c1.cwiseAbs().sum() - 1.0 < 1e-12);
    CHECK(coefficients(f, ComplexVector::Zero(6)).norm() == 0.0);
}

TEST_CASE("constant-chi propagation of single modes") {
    const EigenFrame f = models::ho_system(models::HOParams{}).family.frame(RealVector::Zero(1));
    const ComplexVector v0 = models::ho_initial_vector(models::HOParams{}).coeffs;
    const ComplexVector c = coefficients(f, v0);
    CHECK(sup_norm(propagate_constant_chi(f, c, 0.0).coeffs, v0) < 1e-14);
    for (Index k = 0; k < f.size(); ++k) {
        if (std::abs(f.lambdas(k)) > 1e-12) {
            continue;
        }
        ComplexVector e = ComplexVector::Zero(6);
        e(k) = 1.0;
        CHECK(sup_norm(propagate_constant_chi(f, e, 7.3).coeffs, f.rights.col(k)) < 1e-14);
    }
    // Modes with eigenvalue +-2 return after theta = pi.
    ComplexVector e = ComplexVector::Zero(6);
    for (Index k = 0; k < f.size(); ++k) {
        if (std::abs(std::abs(f.lambdas(k)) - 2.0) < 1e-12) {
            e(k) = 1.0;
        }
    }
    CHECK(e.sum().real() == 2.0);
    const ComplexVector start = propagate_constant_chi(f, e, 0.0).coeffs;
    const ComplexVector back = propagate_constant_chi(f, e, std::numbers::pi).coeffs;
    CHECK(sup_norm(start, back) < 1e-12);
}

TEST_CASE("inertial propagation with constant chi is the closed form") {
    const models::HOParams p = constant_ho();
    const DrivenSystem sys = models::ho_system(p);
    const LiouvilleVector u0 = models::ho_initial_vector(p);
    const auto [u, sol] = propagate_inertial(sys, u0, 2.0, true);
    const EigenFrame f = sys.family.frame(sys.protocol.chi(0.0));
    const LiouvilleVector ref = propagate_constant_chi(f, coefficients(f, u0.coeffs), u.theta);
    CHECK(sup_norm(u.coeffs, ref.coeffs) < 1e-9);
    CHECK(sol.geo_phase.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sup_norm(sol.dyn_phase, f.lambdas * u.theta) < 1e-9);
}

TEST_CASE("inertial solution starts at the initial vector") {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
    const DrivenSystem sys = models::tls_system(p);
    const LiouvilleVector u0 = models::tls_initial_vector(p);
    const auto [u, sol] = propagate_inertial(sys, u0, 0.0, true);
    CHECK(sol.dyn_phase.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sol.geo_phase.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sup_norm(sol.initial_frame.expand(sol.c), u0.coeffs) < 1e-10);
    CHECK(sup_norm(u.coeffs, u0.coeffs) < 1e-10);
}

TEST_CASE("geometric term can be switched off") {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
    const DrivenSystem sys = models::tls_system(p);
    const auto [u, sol] = propagate_inertial(sys, models::tls_initial_vector(p), 1.0, false);
    CHECK(sol.geo_phase.cwiseAbs().maxCoeff() == 0.0);
    CHECK(u.coeffs.allFinite());
}

TEST_CASE("halving the acceleration halves the inertial error") {
    const double tf = 0.5;
    std::vector<double> errors;
    for (double a : {-5e-3, -2.5e-3}) {
        models::HOParams p;
        p.accel = a;
        p.chi0 = models::ho_solve_chi0(20.0, 10.0, a, tf);
        const DrivenSystem sys = models::ho_system(p);
        const LiouvilleVector u0 = models::ho_initial_vector(p);
        const auto ex = propagate_exact(sys, u0, tf);
        const auto in = propagate_inertial(sys, u0, tf, true).first;
        errors.push_back((apply_identity_rescaling(sys, in.coeffs, tf) - apply_identity_rescaling(sys, ex.coeffs, tf)).norm());
    }
    const double ratio = errors[0] / errors[1];
    CAPTURE(errors[0]);
    CAPTURE(errors[1]);
    CHECK(ratio > 2.0 / 1.5);
    CHECK(ratio < 2.0 * 1.5);
}

TEST_CASE("adiabatic baseline") {
    SUBCASE("static protocol is exact") {
        const models::TLSParams p;
        const DrivenSystem sys = models::tls_system(p);
        const LiouvilleVector u0 = models::tls_initial_vector(p);
        CHECK(sup_norm(propagate_adiabatic(sys, u0, 0.7).coeffs, propagate_exact(sys, u0, 0.7).coeffs) < 1e-8);
    }
    SUBCASE("oscillator energy follows the adiabatic invariant") {
        models::HOParams p;
        p.accel = -5e-3;
        p.chi0 = models::ho_solve_chi0(20.0, 10.0, p.accel, 0.5);
        const DrivenSystem sys = models::ho_system(p);
        const LiouvilleVector u0 = models::ho_initial_vector(p);
        for (double t : {0.1, 0.3, 0.5}) {
            const LiouvilleVector u = propagate_adiabatic(sys, u0, t);
            const ComplexVector v = apply_identity_rescaling(sys, u.coeffs, t);
            CHECK(std::abs(v(0) - 10.0 * oracle::ho_omega(t, p) / 20.0) < 1e-10);
        }
    }
}

TEST_CASE("identity component is invariant under every propagator") {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
    const DrivenSystem sys = models::tls_system(p);
    const LiouvilleVector u0 = models::tls_initial_vector(p);
    const cplx id = u0.coeffs(3);
    CHECK(std::abs(propagate_exact(sys, u0, 1.0).coeffs(3) - id) < 1e-12);
    CHECK(std::abs(propagate_inertial(sys, u0, 1.0, true).first.coeffs(3) - id) < 1e-12);
    CHECK(std::abs(propagate_adiabatic(sys, u0, 1.0).coeffs(3) - id) < 1e-12);
    const EigenFrame f = sys.family.frame(sys.protocol.chi(0.0));
    CHECK(std::abs(propagate_constant_chi(f, coefficients(f, u0.coeffs), 9.0).coeffs(3) - id) < 1e-12);

    models::HOParams h;
    h.accel = -5e-3;
    h.chi0 = 0.01;
    const DrivenSystem hs = models::ho_system(h);
    const LiouvilleVector h0 = models::ho_initial_vector(h);
    CHECK(std::abs(propagate_exact(hs, h0, 0.5).coeffs(5) - 1.0) < 1e-12);
    CHECK(std::abs(propagate_inertial(hs, h0, 0.5, true).first.coeffs(5) - 1.0) < 1e-12);
    CHECK(std::abs(propagate_adiabatic(hs, h0, 0.5).coeffs(5) - 1.0) < 1e-12);
}

TEST_CASE("identity rescaling") {
    SUBCASE("unchanged frequency is the identity map") {
        const DrivenSystem sys = models::tls_system(models::TLSParams{});
        const ComplexVector v = ComplexVector::LinSpaced(4, 1.0, 4.0);
        CHECK(sup_norm(apply_identity_rescaling(sys, v, 0.8), v) < 1e-15);
    }
    SUBCASE("qubit Rabi frequency halved") {
        models::TLSParams p;
        const double tf = 0.5;
        p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, 0.0, tf);
        const DrivenSystem sys = models::tls_system(p);
        const ComplexVector v = apply_identity_rescaling(sys, ComplexVector::Ones(4), tf);
        CHECK(std::abs(v(0) - 0.5) < 1e-12);
        CHECK(std::abs(v(2) - 0.5) < 1e-12);
        CHECK(std::abs(v(3) - 1.0) < 1e-15);
        CHECK(sup_norm(remove_identity_rescaling(sys, v, tf), ComplexVector::Ones(4)) < 1e-14);
    }
    SUBCASE("two-spin nonlocal block scales quadratically") {
        models::TwoSpinParams p;
        p.rabi_rate = -10.0;
        const DrivenSystem sys = models::two_spin_system(p);
        const ComplexVector v = apply_identity_rescaling(sys, ComplexVector::Ones(16), 1.0);
        CHECK(std::abs(v(0) - 0.5) < 1e-12);
        CHECK(std::abs(v(6) - 0.25) < 1e-12);
        CHECK(std::abs(v(14) - 0.25) < 1e-12);
        CHECK(std::abs(v(15) - 1.0) < 1e-15);
    }
    SUBCASE("oscillator weights") {
        const RealVector w = models::ho_rescale_weights();
        CHECK(w(3) == 0.0);
        CHECK(w(4) == 0.0);
        CHECK(w(5) == 0.0);
    }
}

TEST_CASE("pure qubit states stay pure under exact propagation") {
    models::TLSParams p;
    p.accel = -5e-3;
    p.chi0 = models::tls_solve_chi0(p.epsilon, 20.0, 10.0, p.accel, 1.0);
    const Eigen::Vector3d r = Eigen::Vector3d(0.3, -0.5, 0.8).normalized();
    p.initial = models::tls_vector_from_bloch(r, p.omega0, p.epsilon);
    const DrivenSystem sys = models::tls_system(p);
    const LiouvilleVector u0 = models::tls_initial_vector(p);
    for (double t : {0.2, 0.6, 1.0}) {
        const ComplexVector v = apply_identity_rescaling(sys, propagate_exact(sys, u0, t).coeffs, t);
        const BlochState b = models::tls_reconstruct(v, oracle::tls_omega(t, p), p.epsilon);
        CHECK(std::abs(b.r.norm() - 1.0) < 1e-9);
    }
}

}
