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

#include "inertia_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "inertia/errors.hpp"
#include "inertia/state.hpp"

namespace inertia::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double final_frequency(const Json& tree) {
    const std::string model = tree["model"].get<std::string>();
    if (model == "ho") {
        return tree["ho"]["omega_f"].get<double>();
    }
    if (model == "tls") {
        return tree["tls"]["rabi_f"].get<double>();
    }
    return 0.0;
}

std::vector<double> uniform_grid(double tf, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = tf * i / (n - 1);
    }
    g.back() = tf;
    return g;
}

RunOutput run_sweep(const RunConfig& cfg) {
    const SweepSpec spec = sweep_spec_from(cfg.tree);
    const SweepResult res = fidelity_sweep(spec);
    RunOutput out;
    Table t;
    t.name = "sweep";
    const std::string fs = "diagnostics:fidelity_sweep";
    t.columns = {{"t_f", "diagnostics:log_grid"},
                 {"chi0", "models:solve_chi0"},
                 {"F_inertial", fs + "/fidelity(exact,inertial)"},
                 {"F_adiabatic", fs + "/fidelity(exact,adiabatic)"},
                 {"one_minus_F_inertial", fs + "/infidelity(exact,inertial)"},
                 {"one_minus_F_adiabatic", fs + "/infidelity(exact,adiabatic)"},
                 {"neglog1mF_inertial", fs + "/neglog_infidelity"},
                 {"neglog1mF_adiabatic", fs + "/neglog_infidelity"},
                 {"mu_max", fs + "/adiabatic_parameter"},
                 {"upsilon_max", fs + "/inertial_parameter"},
                 {"upsilon_closed_max", fs + "/ho_inertial_parameter_closed"},
                 {"geo_ratio", "liouville-engine:propagate_inertial"}};
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const SweepPoint& p = res.points[i];
        if (p.ok) {
            t.rows.push_back({p.tf, p.chi0, p.fidelity_inertial, p.fidelity_adiabatic, p.infidelity_inertial,
                              p.infidelity_adiabatic, p.neglog_inertial, p.neglog_adiabatic, p.mu_max,
                              p.upsilon_max, p.upsilon_closed_max, p.geo_ratio});
        } else {
            std::vector<double> row(t.columns.size(), kNaN);
            row[0] = p.tf;
            t.rows.push_back(row);
        }
        out.points.push_back({i, p.ok, p.error});
    }
    out.tables.push_back(std::move(t));
    return out;
}

RunOutput run_single(const RunConfig& cfg) {
    const Json& tree = cfg.tree;
    const double tf = tree["single"]["tf"].get<double>();
    const int n = tree["single"]["samples"].get<int>();
    const bool include_geo = tree["single"]["include_geo"].get<bool>();
    const PropagationOptions opts = propagation_from(tree);
    const models::Model model = fit_protocol(model_from(tree), final_frequency(tree), tf);
    const DrivenSystem sys = models::make_system(model);
    const LiouvilleVector u0 = models::initial_vector(model);
    const std::vector<double> times = uniform_grid(tf, n);
    const std::vector<LiouvilleVector> exact = propagate_exact_trajectory(sys, u0, times, opts);

    RunOutput out;
    Table t;
    t.name = "single";
    t.columns = {{"t", "liouville-engine:propagate_exact_trajectory"},
                 {"theta", "liouville-engine:scaled_time"},
                 {"F_inertial", "diagnostics:fidelity(exact,inertial)"},
                 {"F_adiabatic", "diagnostics:fidelity(exact,adiabatic)"},
                 {"one_minus_F_inertial", "diagnostics:infidelity(exact,inertial)"},
                 {"one_minus_F_adiabatic", "diagnostics:infidelity(exact,adiabatic)"}};
    for (Index k = 0; k < sys.family.dim(); ++k) {
        t.columns.push_back({"v_exact_" + std::to_string(k), "liouville-engine:propagate_exact_trajectory"});
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double tt = times[i];
        std::vector<double> row(t.columns.size(), kNaN);
        row[0] = tt;
        row[1] = exact[i].theta;
        const ComplexVector ve = apply_identity_rescaling(sys, exact[i].coeffs, tt);
        for (Index k = 0; k < ve.size(); ++k) {
            row[6 + static_cast<std::size_t>(k)] = ve(k).real();
        }
        PointStatus st{i, true, {}};
        try {
            const auto [in, sol] = propagate_inertial(sys, u0, tt, include_geo, opts);
            const LiouvilleVector ad = propagate_adiabatic(sys, u0, tt, opts);
            const DensityState se = models::reconstruct_state(model, ve, tt);
            const DensityState si = models::reconstruct_state(model, apply_identity_rescaling(sys, in.coeffs, tt), tt);
            const DensityState sa = models::reconstruct_state(model, apply_identity_rescaling(sys, ad.coeffs, tt), tt);
            row[2] = fidelity(se, si);
            row[3] = fidelity(se, sa);
            row[4] = infidelity(se, si);
            row[5] = infidelity(se, sa);
        } catch (const std::exception& e) {
            st.ok = false;
            st.error = e.what();
        }
        t.rows.push_back(std::move(row));
        out.points.push_back(std::move(st));
    }
    out.tables.push_back(std::move(t));
    return out;
}

RunOutput run_diagnose(const RunConfig& cfg) {
    const Json& tree = cfg.tree;
    const double tf = tree["diagnose"]["tf"].get<double>();
    const int n = tree["diagnose"]["samples"].get<int>();
    const PropagationOptions opts = propagation_from(tree);
    const models::Model model = fit_protocol(model_from(tree), final_frequency(tree), tf);
    const DrivenSystem sys = models::make_system(model);
    const ScaledTime clock(sys.protocol);
    const auto* ho = std::get_if<models::HOParams>(&model);

    RunOutput out;
    Table t;
    t.name = "diagnose";
    t.columns = {{"t", "diagnostics:grid"},
                 {"theta", "liouville-engine:scaled_time"},
                 {"omega", "models:protocol"},
                 {"mu", "diagnostics:adiabatic_parameter"},
                 {"upsilon", "diagnostics:inertial_parameter"},
                 {"upsilon_closed", "diagnostics:ho_inertial_parameter_closed"},
                 {"min_gap", "linalg-core:min_block_gap"}};
    const std::vector<double> times = uniform_grid(tf, n);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double tt = times[i];
        std::vector<double> row(t.columns.size(), kNaN);
        row[0] = tt;
        PointStatus st{i, true, {}};
        try {
            row[1] = clock.theta(tt);
            row[2] = sys.protocol.omega(tt);
            row[3] = adiabatic_parameter(model, tt);
            row[4] = inertial_parameter_at(sys, tt, {}, opts.decomposition);
            row[6] = min_block_gap(sys.family.frame(sys.protocol.chi(tt), opts.decomposition));
            if (ho != nullptr && tt > 0.0) {
                try {
                    row[5] = ho_inertial_parameter_closed(tt, *ho);
                } catch (const SingularDenominator&) {
                    // flagged singular point, left as NaN
                }
            }
        } catch (const std::exception& e) {
            st.ok = false;
            st.error = e.what();
        }
        t.rows.push_back(std::move(row));
        out.points.push_back(std::move(st));
    }
    out.tables.push_back(std::move(t));
    return out;
}

RunOutput run_open(const RunConfig& cfg) {
    const Json& tree = cfg.tree;
    Json tls_tree = tree;
    tls_tree["model"] = "tls";
    models::TLSParams params = std::get<models::TLSParams>(model_from(tls_tree));
    params.chi0 = tree["open"]["chi0"].get<double>();
    params.accel = tree["open"]["accel"].get<double>();
    const std::vector<double> d = tree["open"]["dipole"].get<std::vector<double>>();
    const ComplexMatrix dipole = d[0] * pauli_x() + d[1] * pauli_y() + d[2] * pauli_z();
    const std::vector<double> r0 = tree["open"]["initial_bloch"].get<std::vector<double>>();
    const ComplexMatrix rho0 = density_matrix(BlochState{Eigen::Vector3d(r0[0], r0[1], r0[2])});
    const BathSpec bath = bath_from(tree);
    NameOptions opts;
    opts.propagation = propagation_from(tree);
    opts.rtol = opts.propagation.rtol;
    opts.atol = opts.propagation.atol;

    const MasterEquationSpec spec = build_master_equation(params, dipole);
    const std::vector<double> times =
        uniform_grid(tree["open"]["tf"].get<double>(), tree["open"]["samples"].get<int>());
    const NameTrajectory traj = name_evolve(spec, bath, rho0, times, opts);

    RunOutput out;
    out.warnings = traj.warnings;
    Table t;
    t.name = "open";
    const std::string src = "open-quantum:name_evolve";
    t.columns = {{"t", src},
                 {"bloch_x", src},
                 {"bloch_y", src},
                 {"bloch_z", src},
                 {"p_excited", src},
                 {"p_ground", src},
                 {"trace_deviation", src},
                 {"min_eigenvalue", src},
                 {"alpha_minus", "open-quantum:effective_frequency"},
                 {"alpha_plus", "open-quantum:effective_frequency"}};
    const Index last = spec.frame0.size() - 1;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const NameSample& s = traj.samples[i];
        const models::TLSProtocolPoint q = models::tls_protocol(s.t, params);
        const Eigen::Vector3d axis(params.epsilon / q.rabi, 0.0, q.omega / q.rabi);
        const double p_exc = 0.5 * (1.0 + s.bloch.dot(axis));
        // Modes are ordered by eigenvalue inside the {H, L, C} block: -kappa, 0, +kappa.
        t.rows.push_back({s.t, s.bloch(0), s.bloch(1), s.bloch(2), p_exc, 1.0 - p_exc, s.trace_deviation,
                          s.min_eigenvalue, effective_frequency(spec.system, s.t, 0),
                          effective_frequency(spec.system, s.t, last - 1)});
        out.points.push_back({i, true, {}});
    }
    out.tables.push_back(std::move(t));
    return out;
}

RunOutput run_geo(const RunConfig& cfg) {
    const GeoSetup g = geo_from(cfg.tree);
    const EigenFrame start = g.family.frame(g.circuit.waypoints.front(), g.options.decomposition);
    RunOutput out;
    Table t;
    t.name = "geo";
    t.columns = {{"mode", "linalg-core:bi_eigendecompose"},
                 {"lambda_re", "linalg-core:bi_eigendecompose"},
                 {"lambda_im", "linalg-core:bi_eigendecompose"},
                 {"phi_line", "geometric:geometric_phase_line"},
                 {"phi_surface", "geometric:geometric_phase_surface"}};
    for (Index k = 0; k < start.size(); ++k) {
        std::vector<double> row{static_cast<double>(k), start.lambdas(k).real(), start.lambdas(k).imag(), kNaN,
                                kNaN};
        PointStatus st{static_cast<std::size_t>(k), true, {}};
        try {
            row[3] = geometric_phase_line(g.family, g.circuit, k, g.options);
            if (g.surface && g.circuit.closed) {
                row[4] = geometric_phase_surface(g.family, g.circuit, k, g.options);
            }
        } catch (const std::exception& e) {
            st.ok = false;
            st.error = e.what();
        }
        t.rows.push_back(std::move(row));
        out.points.push_back(std::move(st));
    }
    out.tables.push_back(std::move(t));
    return out;
}

} // namespace

std::size_t RunOutput::failures() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const PointStatus& p) { return !p.ok; }));
}

int RunOutput::exit_code() const {
    if (!fatal_error.empty()) {
        return kExitFailed;
    }
    const std::size_t f = failures();
    if (f == 0) {
        return kExitOk;
    }
    return f == points.size() ? kExitFailed : kExitPartial;
}

RunOutput run(const RunConfig& config) {
    RunOutput out;
    try {
        switch (config.experiment) {
        case Experiment::Sweep: out = run_sweep(config); break;
        case Experiment::Diagnose: out = run_diagnose(config); break;
        case Experiment::Open: out = run_open(config); break;
        case Experiment::Geo: out = run_geo(config); break;
        case Experiment::Single: out = run_single(config); break;
        }
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const std::exception& e) {
        out = RunOutput{};
        out.fatal_error = e.what();
    }
    out.experiment = config.experiment;
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

std::string to_csv(const Table& table) {
    std::ostringstream s;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        s << (c ? "," : "") << table.columns[c].name;
    }
    s << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            s << (c ? "," : "") << format_number(row[c]);
        }
        s << '\n';
    }
    return s.str();
}

Json to_json(const Table& table) {
    Json j;
    j["name"] = table.name;
    j["columns"] = Json::array();
    for (const Column& c : table.columns) {
        j["columns"].push_back(c.name);
    }
    j["rows"] = Json::array();
    for (const auto& row : table.rows) {
        Json r = Json::array();
        for (double x : row) {
            r.push_back(std::isfinite(x) ? Json(x) : Json(nullptr));
        }
        j["rows"].push_back(std::move(r));
    }
    return j;
}

Json manifest(const RunConfig& config, const RunOutput& out, Format format) {
    Json m;
    m["tool"] = "inertia";
    m["version"] = kToolVersion;
    m["experiment"] = experiment_name(config.experiment);
    m["config_hash"] = config_hash(config.tree);
    m["config"] = config.tree;
    m["exit_code"] = out.exit_code();
    m["fatal_error"] = out.fatal_error;
    m["warnings"] = out.warnings;
    m["outputs"] = Json::array();
    for (const Table& t : out.tables) {
        Json o;
        o["file"] = t.name + (format == Format::Csv ? ".csv" : ".json");
        o["rows"] = t.rows.size();
        o["columns"] = Json::array();
        for (const Column& c : t.columns) {
            o["columns"].push_back({{"name", c.name}, {"source", c.source}});
        }
        m["outputs"].push_back(std::move(o));
    }
    m["points"] = Json::array();
    for (const PointStatus& p : out.points) {
        m["points"].push_back({{"index", p.index}, {"ok", p.ok}, {"error", p.error}});
    }
    m["failures"] = out.failures();
    return m;
}

std::vector<std::filesystem::path> write_outputs(const RunConfig& config, const RunOutput& out, Format format,
                                                 const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::filesystem::path& p, const std::string& body) {
        std::ofstream f(p, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + p.string());
        }
        f << body;
        written.push_back(p);
    };
    for (const Table& t : out.tables) {
        if (format == Format::Csv) {
            write(dir / (t.name + ".csv"), to_csv(t));
        } else {
            write(dir / (t.name + ".json"), to_json(t).dump(2) + "\n");
        }
    }
    write(dir / "manifest.json", manifest(config, out, format).dump(2) + "\n");
    return written;
}

} // namespace inertia::cli
