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

#include "inertia/open_quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "inertia/errors.hpp"
#include "quadrature.hpp"
#include "inertia/state.hpp"

namespace inertia {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

ComplexMatrix unpack(const State& x) {
    ComplexMatrix rho(2, 2);
    for (Index i = 0; i < 4; ++i) {
        rho(i / 2, i % 2) = cplx(x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]);
    }
    return rho;
}

void pack(const ComplexMatrix& rho, State& x) {
    for (Index i = 0; i < 4; ++i) {
        x[static_cast<std::size_t>(2 * i)] = rho(i / 2, i % 2).real();
        x[static_cast<std::size_t>(2 * i + 1)] = rho(i / 2, i % 2).imag();
    }
}

// Adaptive Gauss-Kronrod on [a, b] with a convergence check.
template <class F>
double integrate_checked(F f, double a, double b, const char* what) {
    if (!(b > a)) {
        return 0.0;
    }
    double err = 0.0;
    const double v = detail::integrate(f, a, b, 1e-12, &err);
    if (!std::isfinite(v) || err > 1e-9 * std::max(1.0, std::abs(v))) {
        std::ostringstream msg;
        msg << what << ": quadrature error estimate " << err << " on [" << a << ", " << b << "]";
        throw NotConverged(msg.str());
    }
    return v;
}

double min_eigenvalue(const ComplexMatrix& rho) {
    const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

struct Channel {
    Index mode;
    ComplexMatrix jump;
    ComplexMatrix jump_dag_jump;
    double weight;  // |a_j|^2
};

struct NameRhs {
    const MasterEquationSpec* spec;
    const BathSpec* bath;
    const std::vector<Channel>* channels;
    DecompositionOptions decomposition;

    void operator()(const State& x, State& dxdt, double t) const {
        const ComplexMatrix rho = unpack(x);
        ComplexMatrix d = ComplexMatrix::Zero(2, 2);
        ComplexMatrix h_ls = ComplexMatrix::Zero(2, 2);
        for (const Channel& c : *channels) {
            const double alpha = effective_frequency(spec->system, t, c.mode, decomposition);
            const double gamma = c.weight * decay_rate(*bath, alpha);
            if (gamma != 0.0) {
                d += gamma * (c.jump * rho * c.jump.adjoint() -
                              0.5 * (c.jump_dag_jump * rho + rho * c.jump_dag_jump));
            }
            if (bath->lamb_shift) {
                h_ls += c.weight * lamb_shift(*bath, alpha) * c.jump_dag_jump;
            }
        }
        d += cplx(0.0, -1.0) * (h_ls * rho - rho * h_ls);
        pack(d, dxdt);
    }
};

} // namespace

void BathSpec::validate() const {
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw ConfigInvalid("bath.temperature must be finite and non-negative");
    }
    if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
        throw ConfigInvalid("bath.coupling must be finite and non-negative");
    }
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
        throw ConfigInvalid("bath.cutoff must be finite and positive");
    }
}

double bose_occupation(double temperature, double alpha) {
    if (temperature <= 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(alpha / temperature);
}

double decay_rate(const BathSpec& bath, double alpha) {
    if (alpha == 0.0 || bath.coupling == 0.0) {
        return 0.0;
    }
    const double a = std::abs(alpha);
    const double n = bose_occupation(bath.temperature, a);
    return bath.coupling * a * a * a * (alpha > 0.0 ? 1.0 + n : n);
}

double lamb_shift_integral_zero_temperature(double alpha, double cutoff) {
    // w^3/(alpha - w) = -(w^2 + alpha w + alpha^2) + alpha^3/(alpha - w)
    const double poly = -(cutoff * cutoff * cutoff / 3.0 + alpha * cutoff * cutoff / 2.0 + alpha * alpha * cutoff);
    if (alpha == 0.0) {
        return poly;
    }
    return poly + alpha * alpha * alpha * std::log(std::abs(alpha / (alpha - cutoff)));
}

double lamb_shift(const BathSpec& bath, double alpha) {
    if (!bath.lamb_shift || bath.coupling == 0.0) {
        return 0.0;
    }
    const double wc = bath.cutoff;
    const double s = std::abs(alpha);
    if (!(s < wc)) {
        std::ostringstream msg;
        msg << "lamb_shift: |alpha| = " << s << " reaches the cutoff " << wc;
        throw DomainExceeded(msg.str());
    }
    const double T = bath.temperature;
    auto occ = [T](double w) { return bose_occupation(T, w); };
    // w^3 (1 + N) and w^3 N, continuous at w = 0.
    auto emit = [&](double w) { return T > 0.0 && w < 1e-300 ? 0.0 : w * w * w * (1.0 + occ(w)); };
    auto absorb = [&](double w) { return T > 0.0 && w > 1e-300 ? w * w * w * occ(w) : 0.0; };

    if (alpha == 0.0) {
        // (1 + N)/(-w) + N/w = -1/w
        return 2.0 * bath.coupling * integrate_checked([](double w) { return -w * w; }, 0.0, wc, "lamb_shift");
    }

    double total = 0.0;
    if (alpha > 0.0) {
        // Singular emission term by subtraction; regular absorption term directly.
        const double phi_s = emit(s);
        auto reg = [&](double w) { return (emit(w) - phi_s) / (alpha - w); };
        total += integrate_checked(reg, 0.0, s, "lamb_shift") + integrate_checked(reg, s, wc, "lamb_shift");
        total += phi_s * std::log(s / (wc - s));
        auto smooth = [&](double w) { return absorb(w) / (alpha + w); };
        total += integrate_checked(smooth, 0.0, s, "lamb_shift") + integrate_checked(smooth, s, wc, "lamb_shift");
    } else {
        // alpha + w = w - s is singular in the absorption term.
        const double psi_s = absorb(s);
        auto reg = [&](double w) { return (absorb(w) - psi_s) / (w - s); };
        total += integrate_checked(reg, 0.0, s, "lamb_shift") + integrate_checked(reg, s, wc, "lamb_shift");
        total += psi_s * std::log((wc - s) / s);
        auto smooth = [&](double w) { return emit(w) / (alpha - w); };
        total += integrate_checked(smooth, 0.0, s, "lamb_shift") + integrate_checked(smooth, s, wc, "lamb_shift");
    }
    return 2.0 * bath.coupling * total;
}

double effective_frequency(const DrivenSystem& system, double t, Index mode, const DecompositionOptions& opts) {
    const RealVector chi = system.protocol.chi(t);
    const EigenFrame f = system.family.frame(chi, opts);
    if (mode < 0 || mode >= f.size()) {
        throw std::out_of_range("effective_frequency: mode index out of range");
    }
    cplx rate = f.lambdas(mode);
    const RealVector dir = system.protocol.chi_theta_rate(t);
    const double speed = dir.norm();
    if (speed > 0.0) {
        const double h = 1e-5;
        const RealVector unit = dir / speed;
        const EigenFrame fp = system.family.frame(chi + h * unit, opts);
        const EigenFrame fm = system.family.frame(chi - h * unit, opts);
        const Index kp = track_continuity(f, fp).permutation[static_cast<std::size_t>(mode)];
        const Index km = track_continuity(f, fm).permutation[static_cast<std::size_t>(mode)];
        const cplx conn = f.lefts.col(mode).dot(fp.rights.col(kp) - fm.rights.col(km)) / (2.0 * h);
        rate += cplx(0.0, -1.0) * conn * speed;
    }
    return rate.real() * system.protocol.omega(t);
}

MasterEquationSpec build_master_equation(const models::TLSParams& params, const ComplexMatrix& dipole) {
    if (dipole.rows() != 2 || dipole.cols() != 2) {
        throw std::invalid_argument("build_master_equation: dipole must be a 2x2 matrix");
    }
    MasterEquationSpec spec;
    spec.params = params;
    spec.system = models::tls_system(params);
    spec.dipole = dipole;
    spec.frame0 = spec.system.family.frame(spec.system.protocol.chi(0.0));
    const std::vector<ComplexMatrix> ops = models::tls_operators(params.omega0, params.epsilon);
    const Index n = spec.frame0.size();

    for (Index j = 0; j < n; ++j) {
        ComplexMatrix f = ComplexMatrix::Zero(2, 2);
        for (Index l = 0; l < n; ++l) {
            f += std::conj(spec.frame0.lefts(l, j)) * ops[static_cast<std::size_t>(l)];
        }
        const double norm = f.norm();
        if (norm == 0.0) {
            throw NotDiagonalizable("build_master_equation: vanishing eigenoperator");
        }
        spec.jump_ops.push_back(f / norm);
    }

    // Expansion coefficients from the Hilbert-Schmidt Gram system.
    ComplexMatrix gram(n, n);
    ComplexVector rhs(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            gram(i, j) = (spec.jump_ops[static_cast<std::size_t>(i)].adjoint() * spec.jump_ops[static_cast<std::size_t>(j)]).trace();
        }
        rhs(i) = (spec.jump_ops[static_cast<std::size_t>(i)].adjoint() * dipole).trace();
    }
    spec.dipole_coeffs = gram.fullPivLu().solve(rhs);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(2, 2);
    for (Index j = 0; j < n; ++j) {
        rebuilt += spec.dipole_coeffs(j) * spec.jump_ops[static_cast<std::size_t>(j)];
    }
    spec.dipole_residual = (rebuilt - dipole).norm();
    return spec;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix d = 0.5 * ((a - b) + (a - b).adjoint());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(d, Eigen::EigenvaluesOnly).eigenvalues();
    return 0.5 * ev.cwiseAbs().sum();
}

NameTrajectory name_evolve(const MasterEquationSpec& spec, const BathSpec& bath, const ComplexMatrix& rho0,
                           const std::vector<double>& t_grid, const NameOptions& opts) {
    bath.validate();
    if (rho0.rows() != 2 || rho0.cols() != 2) {
        throw std::invalid_argument("name_evolve: initial state must be a 2x2 density matrix");
    }
    validate_state(DensityState{bloch_from_density(rho0)});
    if (t_grid.empty()) {
        return {};
    }
    double last = 0.0;
    for (double t : t_grid) {
        if (!(t >= last)) {
            throw std::invalid_argument("name_evolve: t_grid must be non-negative and increasing");
        }
        last = t;
    }
    spec.system.protocol.check_domain(t_grid.back());

    std::vector<Channel> channels;
    for (std::size_t j = 0; j < spec.jump_ops.size(); ++j) {
        const double w = std::norm(spec.dipole_coeffs(static_cast<Index>(j)));
        if (w == 0.0) {
            continue;
        }
        const ComplexMatrix& f = spec.jump_ops[j];
        channels.push_back({static_cast<Index>(j), f, f.adjoint() * f, w});
    }

    NameTrajectory traj;

    // Secular margin over the grid: non-paired frequency sums against the largest rate.
    double margin = std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        std::vector<double> alphas;
        double gamma_max = 0.0;
        for (const Channel& c : channels) {
            const double a = effective_frequency(spec.system, t, c.mode, opts.propagation.decomposition);
            const double g = c.weight * decay_rate(bath, a);
            if (g > 0.0) {
                alphas.push_back(a);
                gamma_max = std::max(gamma_max, g);
            }
        }
        if (gamma_max == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            for (std::size_t j = i; j < alphas.size(); ++j) {
                const double sum = std::abs(alphas[i] + alphas[j]);
                const double scale = std::abs(alphas[i]) + std::abs(alphas[j]);
                if (sum > 1e-9 * scale) {
                    margin = std::min(margin, sum / gamma_max);
                }
            }
        }
    }
    traj.secular_margin = margin;
    if (margin < opts.secular_ratio) {
        std::ostringstream msg;
        msg << "secular condition weak: min |alpha_i + alpha_j| / gamma_max = " << margin;
        traj.warnings.push_back(msg.str());
    }

    State x(8);
    pack(rho0, x);
    std::vector<ComplexMatrix> interaction;
    interaction.reserve(t_grid.size());
    // Grid points at the start are answered from the initial state.
    std::vector<double> times{0.0};
    for (double t : t_grid) {
        if (t <= 0.0 && times.size() == 1) {
            interaction.push_back(rho0);
        } else {
            times.push_back(t);
        }
    }
    std::size_t calls = 0;
    auto observer = [&](const State& s, double) {
        if (calls++ == 0 || interaction.size() == t_grid.size()) {
            return;
        }
        interaction.push_back(unpack(s));
    };
    const NameRhs rhs{&spec, &bath, &channels, opts.propagation.decomposition};
    const double dt0 = t_grid.back() > 0.0 ? std::min(1e-3, 1e-3 * t_grid.back()) : 1e-3;
    try {
        auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State>());
        if (times.size() > 1) {
            odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observer);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw IntegratorFailure(std::string("master equation integration failed: ") + e.what());
    }
    if (interaction.size() != t_grid.size()) {
        throw IntegratorFailure("master equation integration stopped early");
    }

    // Fundamental matrix of the free Heisenberg dynamics, column l from unit vector e_l.
    std::vector<std::vector<LiouvilleVector>> columns;
    const std::vector<ComplexMatrix> ops0 = models::tls_operators(spec.params.omega0, spec.params.epsilon);
    if (opts.schrodinger) {
        for (Index l = 0; l < spec.system.family.dim(); ++l) {
            LiouvilleVector e;
            e.coeffs = ComplexVector::Unit(spec.system.family.dim(), l);
            columns.push_back(propagate_exact_trajectory(spec.system, e, t_grid, opts.propagation));
        }
    }

    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        NameSample smp;
        smp.t = t_grid[i];
        smp.rho_interaction = interaction[i];
        if (opts.schrodinger) {
            const Index n = spec.system.family.dim();
            ComplexVector v0(n);
            for (Index l = 0; l < n; ++l) {
                v0(l) = (smp.rho_interaction * ops0[static_cast<std::size_t>(l)]).trace();
            }
            ComplexVector u = ComplexVector::Zero(n);
            for (Index l = 0; l < n; ++l) {
                u += v0(l) * columns[static_cast<std::size_t>(l)][i].coeffs;
            }
            const ComplexVector v = apply_identity_rescaling(spec.system, u, smp.t);
            const models::TLSProtocolPoint q = models::tls_protocol(smp.t, spec.params);
            const BlochState b = models::tls_reconstruct(v, q.omega, spec.params.epsilon);
            // Trace carried by the identity component.
            const double tr = v(n - 1).real();
            smp.rho = 0.5 * (tr * ComplexMatrix::Identity(2, 2) + b.r(0) * pauli_x() + b.r(1) * pauli_y() +
                             b.r(2) * pauli_z());
            smp.bloch = b.r / tr;
        } else {
            smp.rho = smp.rho_interaction;
            smp.bloch = bloch_from_density(smp.rho).r;
        }
        smp.trace_deviation = std::max(std::abs(smp.rho_interaction.trace() - 1.0), std::abs(smp.rho.trace() - 1.0));
        smp.hermiticity_deviation = (smp.rho - smp.rho.adjoint()).norm();
        smp.min_eigenvalue = std::min(min_eigenvalue(smp.rho_interaction), min_eigenvalue(smp.rho));
        traj.max_trace_deviation = std::max(traj.max_trace_deviation, smp.trace_deviation);
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, smp.min_eigenvalue);
        if (smp.min_eigenvalue < -opts.positivity_tol) {
            std::ostringstream msg;
            msg << "name_evolve: eigenvalue " << smp.min_eigenvalue << " at t = " << smp.t;
            throw PositivityViolation(msg.str());
        }
        traj.samples.push_back(std::move(smp));
    }
    return traj;
}

} // namespace inertia
