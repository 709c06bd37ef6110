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

#include "inertia_cli/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "inertia/errors.hpp"

namespace inertia::cli {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    throw ConfigInvalid("config key '" + path + "': " + what);
}

const Json& at(const Json& tree, const std::string& path) {
    const Json* node = &tree;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) {
            invalid(path, "missing");
        }
        node = &(*node)[key];
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    return *node;
}

double number(const Json& tree, const std::string& path) {
    const Json& v = at(tree, path);
    if (!v.is_number()) {
        invalid(path, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        invalid(path, "must be finite");
    }
    return x;
}

double positive(const Json& tree, const std::string& path) {
    const double x = number(tree, path);
    if (!(x > 0.0)) {
        invalid(path, "must be positive");
    }
    return x;
}

int integer(const Json& tree, const std::string& path, int lo) {
    const Json& v = at(tree, path);
    if (!v.is_number_integer()) {
        invalid(path, "expected an integer");
    }
    const long long x = v.get<long long>();
    if (x < lo || x > 1000000000LL) {
        invalid(path, "must be an integer >= " + std::to_string(lo));
    }
    return static_cast<int>(x);
}

bool boolean(const Json& tree, const std::string& path) {
    const Json& v = at(tree, path);
    if (!v.is_boolean()) {
        invalid(path, "expected true or false");
    }
    return v.get<bool>();
}

std::string text(const Json& tree, const std::string& path) {
    const Json& v = at(tree, path);
    if (!v.is_string()) {
        invalid(path, "expected a string");
    }
    return v.get<std::string>();
}

RealVector vector(const Json& tree, const std::string& path, Index n) {
    const Json& v = at(tree, path);
    if (!v.is_array() || static_cast<Index>(v.size()) != n) {
        invalid(path, "expected an array of " + std::to_string(n) + " numbers");
    }
    RealVector out(n);
    for (Index i = 0; i < n; ++i) {
        const Json& e = v[static_cast<std::size_t>(i)];
        if (!e.is_number() || !std::isfinite(e.get<double>())) {
            invalid(path, "expected an array of " + std::to_string(n) + " finite numbers");
        }
        out(i) = e.get<double>();
    }
    return out;
}

// Rejects keys that the defaults do not define, so misspellings surface as errors.
void check_known(const Json& given, const Json& reference, const std::string& prefix) {
    for (auto it = given.begin(); it != given.end(); ++it) {
        const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!reference.contains(it.key())) {
            invalid(path, "unknown key");
        }
        const Json& ref = reference[it.key()];
        if (ref.is_object()) {
            if (!it.value().is_object()) {
                invalid(path, "expected an object");
            }
            check_known(it.value(), ref, path);
        }
    }
}

std::string normalise_model(const std::string& name, const std::string& path) {
    if (name == "ho" || name == "tls") {
        return name;
    }
    if (name == "two_spin" || name == "two-spin") {
        return "two_spin";
    }
    invalid(path, "expected one of ho, tls, two_spin");
}

models::HOParams ho_from(const Json& tree) {
    models::HOParams p;
    p.mass = positive(tree, "ho.mass");
    p.omega0 = positive(tree, "ho.omega0");
    p.accel = number(tree, "ho.accel");
    p.q0 = number(tree, "ho.q0");
    positive(tree, "ho.omega_f");
    return p;
}

models::TLSParams tls_from(const Json& tree) {
    models::TLSParams p;
    p.epsilon = positive(tree, "tls.epsilon");
    const double rabi0 = positive(tree, "tls.rabi0");
    if (!(rabi0 > p.epsilon)) {
        invalid("tls.rabi0", "must exceed tls.epsilon");
    }
    if (!(positive(tree, "tls.rabi_f") > p.epsilon)) {
        invalid("tls.rabi_f", "must exceed tls.epsilon");
    }
    p.omega0 = std::sqrt(rabi0 * rabi0 - p.epsilon * p.epsilon);
    p.accel = number(tree, "tls.accel");
    p.initial = vector(tree, "tls.initial", 3);
    return p;
}

models::TwoSpinParams two_spin_from(const Json& tree) {
    models::TwoSpinParams p;
    p.rabi0 = positive(tree, "two_spin.rabi0");
    p.rabi_rate = number(tree, "two_spin.rabi_rate");
    const std::string kind = text(tree, "two_spin.circuit");
    if (kind == "linear") {
        p.kind = models::CircuitKind::Linear;
    } else if (kind == "circle") {
        p.kind = models::CircuitKind::Circle;
    } else {
        invalid("two_spin.circuit", "expected linear or circle");
    }
    p.chi0 = vector(tree, "two_spin.chi0", 2);
    p.accel = vector(tree, "two_spin.accel", 2);
    p.center = vector(tree, "two_spin.center", 2);
    p.radius = number(tree, "two_spin.radius");
    if (p.radius < 0.0) {
        invalid("two_spin.radius", "must be non-negative");
    }
    p.period = positive(tree, "two_spin.period");
    p.alpha0 = vector(tree, "two_spin.alpha0", 2);
    p.bloch1 = vector(tree, "two_spin.bloch1", 3);
    p.bloch2 = vector(tree, "two_spin.bloch2", 3);
    if (p.bloch1.norm() > 1.0) {
        invalid("two_spin.bloch1", "Bloch vector longer than 1");
    }
    if (p.bloch2.norm() > 1.0) {
        invalid("two_spin.bloch2", "Bloch vector longer than 1");
    }
    return p;
}

} // namespace

std::string experiment_name(Experiment e) {
    switch (e) {
    case Experiment::Sweep: return "sweep";
    case Experiment::Diagnose: return "diagnose";
    case Experiment::Open: return "open";
    case Experiment::Geo: return "geo";
    case Experiment::Single: return "single";
    }
    return "sweep";
}

Experiment parse_experiment(const std::string& name) {
    for (Experiment e : {Experiment::Sweep, Experiment::Diagnose, Experiment::Open, Experiment::Geo,
                         Experiment::Single}) {
        if (experiment_name(e) == name) {
            return e;
        }
    }
    throw ConfigInvalid("unknown experiment '" + name + "'");
}

Json default_config() {
    return Json::parse(R"({
  "model": "ho",
  "ho": {"mass": 1.0, "omega0": 20.0, "omega_f": 10.0, "accel": -0.005, "q0": 0.0},
  "tls": {"epsilon": 8.0, "rabi0": 20.0, "rabi_f": 10.0, "accel": -0.005,
          "initial": [4.0, 1.0, 1.0]},
  "two_spin": {"rabi0": 20.0, "rabi_rate": 0.0, "circuit": "linear", "chi0": [0.3, 0.6],
               "accel": [0.0, 0.0], "center": [0.3, 0.6], "radius": 0.05, "period": 1.0,
               "alpha0": [0.0, 0.0], "bloch1": [0.3, 0.2, 0.4], "bloch2": [-0.2, 0.1, 0.5]},
  "numerics": {"rtol": 1e-10, "atol": 1e-12, "frame_steps": 2000, "threads": 1,
               "degeneracy_threshold": 1e-8},
  "sweep": {"tf_min": 0.05, "tf_max": 5.0, "points": 20, "include_geo": true, "profile_samples": 101},
  "single": {"tf": 0.1, "samples": 21, "include_geo": true},
  "diagnose": {"tf": 0.1, "samples": 101},
  "open": {"tf": 5.0, "samples": 101, "chi0": 0.0, "accel": 0.0, "initial_bloch": [0.0, 0.0, 1.0],
           "dipole": [1.0, 0.0, 0.0],
           "bath": {"temperature": 10.0, "coupling": 1e-4, "cutoff": 100.0, "lamb_shift": false}},
  "geo": {"family": "two_spin_nonlocal", "surface": true, "refine_tol": 1e-8, "max_refinements": 8,
          "surface_subdivisions": 16,
          "circuit": {"kind": "square", "center": [0.3, 0.6], "side": 0.1, "radius": 0.05,
                      "vertices": 64, "waypoints": [], "closed": true, "samples": 256}}
})");
}

const std::vector<std::string>& required_keys() {
    static const std::vector<std::string> keys{"model"};
    return keys;
}

RunConfig resolve_config(Experiment experiment, const std::optional<std::string>& text_in,
                         const Overrides& overrides) {
    RunConfig cfg;
    cfg.experiment = experiment;
    cfg.tree = default_config();
    if (text_in) {
        Json given;
        try {
            given = Json::parse(*text_in);
        } catch (const Json::parse_error& e) {
            throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
        }
        if (!given.is_object()) {
            throw ConfigInvalid("config must be a JSON object");
        }
        std::vector<std::string> missing;
        for (const std::string& k : required_keys()) {
            if (!given.contains(k) && !(k == "model" && overrides.model)) {
                missing.push_back(k);
            }
        }
        if (!missing.empty()) {
            std::string list;
            for (const std::string& k : missing) {
                list += (list.empty() ? "" : ", ") + k;
            }
            throw ConfigInvalid("config is missing required keys: " + list);
        }
        check_known(given, cfg.tree, "");
        cfg.tree.merge_patch(given);
    }
    if (overrides.model) {
        cfg.tree["model"] = *overrides.model;
    }
    if (overrides.threads) {
        cfg.tree["numerics"]["threads"] = *overrides.threads;
    }
    if (overrides.tol) {
        cfg.tree["numerics"]["rtol"] = *overrides.tol;
        cfg.tree["numerics"]["atol"] = *overrides.tol * 1e-2;
    }
    cfg.tree["model"] = normalise_model(text(cfg.tree, "model"), "model");

    // Validate every section up front so errors name the key before any work starts.
    model_from(cfg.tree);
    propagation_from(cfg.tree);
    threads_from(cfg.tree);
    switch (experiment) {
    case Experiment::Sweep:
        sweep_spec_from(cfg.tree);
        break;
    case Experiment::Diagnose:
        positive(cfg.tree, "diagnose.tf");
        integer(cfg.tree, "diagnose.samples", 2);
        break;
    case Experiment::Single:
        positive(cfg.tree, "single.tf");
        integer(cfg.tree, "single.samples", 2);
        boolean(cfg.tree, "single.include_geo");
        break;
    case Experiment::Open:
        bath_from(cfg.tree);
        tls_from(cfg.tree);
        positive(cfg.tree, "open.tf");
        integer(cfg.tree, "open.samples", 2);
        number(cfg.tree, "open.chi0");
        number(cfg.tree, "open.accel");
        if (vector(cfg.tree, "open.initial_bloch", 3).norm() > 1.0) {
            invalid("open.initial_bloch", "Bloch vector longer than 1");
        }
        if (vector(cfg.tree, "open.dipole", 3).norm() == 0.0) {
            invalid("open.dipole", "must be non-zero");
        }
        break;
    case Experiment::Geo:
        geo_from(cfg.tree);
        break;
    }
    return cfg;
}

std::string config_hash(const Json& tree) {
    const std::string dump = tree.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

models::Model model_from(const Json& tree) {
    const std::string name = normalise_model(text(tree, "model"), "model");
    if (name == "ho") {
        return ho_from(tree);
    }
    if (name == "tls") {
        return tls_from(tree);
    }
    return two_spin_from(tree);
}

PropagationOptions propagation_from(const Json& tree) {
    PropagationOptions o;
    o.rtol = positive(tree, "numerics.rtol");
    o.atol = positive(tree, "numerics.atol");
    o.frame_steps = integer(tree, "numerics.frame_steps", 2);
    if (o.frame_steps % 2 != 0) {
        invalid("numerics.frame_steps", "must be even");
    }
    o.decomposition.degeneracy_threshold = positive(tree, "numerics.degeneracy_threshold");
    return o;
}

int threads_from(const Json& tree) {
    return integer(tree, "numerics.threads", 1);
}

SweepSpec sweep_spec_from(const Json& tree) {
    SweepSpec s;
    s.model = model_from(tree);
    if (std::holds_alternative<models::HOParams>(s.model)) {
        s.final_frequency = positive(tree, "ho.omega_f");
    } else if (std::holds_alternative<models::TLSParams>(s.model)) {
        s.final_frequency = positive(tree, "tls.rabi_f");
    } else {
        invalid("model", "sweeps support ho and tls");
    }
    const double lo = positive(tree, "sweep.tf_min");
    const double hi = positive(tree, "sweep.tf_max");
    if (hi < lo) {
        invalid("sweep.tf_max", "must not be smaller than sweep.tf_min");
    }
    s.tf_grid = log_grid(lo, hi, integer(tree, "sweep.points", 1));
    s.include_geo = boolean(tree, "sweep.include_geo");
    s.profile_samples = integer(tree, "sweep.profile_samples", 2);
    s.propagation = propagation_from(tree);
    s.threads = threads_from(tree);
    return s;
}

BathSpec bath_from(const Json& tree) {
    BathSpec b;
    b.temperature = number(tree, "open.bath.temperature");
    if (b.temperature < 0.0) {
        invalid("open.bath.temperature", "must be non-negative");
    }
    b.coupling = number(tree, "open.bath.coupling");
    if (b.coupling < 0.0) {
        invalid("open.bath.coupling", "must be non-negative");
    }
    b.cutoff = positive(tree, "open.bath.cutoff");
    b.lamb_shift = boolean(tree, "open.bath.lamb_shift");
    return b;
}

GeoSetup geo_from(const Json& tree) {
    GeoSetup g;
    const std::string family = text(tree, "geo.family");
    Index dim = 2;
    if (family == "two_spin_local") {
        g.family = models::two_spin_local_family();
    } else if (family == "two_spin_nonlocal") {
        g.family = models::two_spin_nonlocal_family();
    } else if (family == "tls") {
        g.family = GeneratorFamily("tls", 3, 1, [](const RealVector& c) { return models::tls_generator(c(0)); });
        dim = 1;
    } else if (family == "ho") {
        g.family = GeneratorFamily("ho", 6, 1, [](const RealVector& c) { return models::ho_generator(c(0)); },
                                   {}, models::ho_blocks());
        dim = 1;
    } else if (family == "spin_half") {
        g.family = GeneratorFamily("spin_half", 2, 2, [](const RealVector& c) {
            ComplexMatrix b(2, 2);
            b << 1.0, cplx(c(0), -c(1)), cplx(c(0), c(1)), -1.0;
            return b;
        });
    } else {
        invalid("geo.family", "expected one of two_spin_local, two_spin_nonlocal, tls, ho, spin_half");
    }

    const std::string kind = text(tree, "geo.circuit.kind");
    const int samples = integer(tree, "geo.circuit.samples", 2);
    if (kind == "square" || kind == "circle") {
        if (dim != 2) {
            invalid("geo.circuit.kind", "square and circle circuits need a two-parameter family");
        }
        const RealVector center = vector(tree, "geo.circuit.center", 2);
        if (kind == "square") {
            g.circuit = ParameterCircuit::square(center, positive(tree, "geo.circuit.side"), samples);
        } else {
            g.circuit = ParameterCircuit::polygon_circle(center, positive(tree, "geo.circuit.radius"),
                                                         integer(tree, "geo.circuit.vertices", 3), samples);
        }
        g.circuit.closed = true;
    } else if (kind == "polyline") {
        const Json& pts = at(tree, "geo.circuit.waypoints");
        if (!pts.is_array() || pts.empty()) {
            invalid("geo.circuit.waypoints", "expected a non-empty array of points");
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string path = "geo.circuit.waypoints." + std::to_string(i);
            if (!pts[i].is_array() || static_cast<Index>(pts[i].size()) != dim) {
                invalid(path, "expected " + std::to_string(dim) + " coordinates");
            }
            RealVector p(dim);
            for (Index k = 0; k < dim; ++k) {
                const Json& e = pts[i][static_cast<std::size_t>(k)];
                if (!e.is_number()) {
                    invalid(path, "coordinates must be numbers");
                }
                p(k) = e.get<double>();
            }
            g.circuit.waypoints.push_back(p);
        }
        g.circuit.closed = boolean(tree, "geo.circuit.closed");
        g.circuit.samples = samples;
    } else {
        invalid("geo.circuit.kind", "expected square, circle or polyline");
    }
    g.surface = boolean(tree, "geo.surface");
    g.options.refine_tol = positive(tree, "geo.refine_tol");
    g.options.max_refinements = integer(tree, "geo.max_refinements", 0);
    g.options.surface_subdivisions = integer(tree, "geo.surface_subdivisions", 1);
    g.options.decomposition = propagation_from(tree).decomposition;
    return g;
}

} // namespace inertia::cli
