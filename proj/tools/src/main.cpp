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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "inertia/errors.hpp"
#include "inertia_cli/run.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw inertia::ConfigInvalid("cannot read config file '" + path + "'");
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv) {
    using namespace inertia::cli;

    CLI::App app{"Inertial, adiabatic and exact propagation of driven quantum systems"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    Overrides overrides;
    int threads = 0;
    double tol = 0.0;
    std::string model;

    const std::vector<std::pair<Experiment, std::string>> kinds{
        {Experiment::Sweep, "Final-state fidelity against protocol duration"},
        {Experiment::Diagnose, "Adiabatic and inertial parameters along one protocol"},
        {Experiment::Open, "Driven qubit coupled to a thermal bath"},
        {Experiment::Geo, "Geometric phases around a parameter circuit"},
        {Experiment::Single, "Exact, inertial and adiabatic trajectories for one duration"}};
    for (const auto& [kind, help] : kinds) {
        CLI::App* sub = app.add_subcommand(experiment_name(kind), help);
        sub->add_option("--config", config_path, "JSON config file layered over the defaults");
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_option("--threads", threads, "Worker threads for independent points")->check(CLI::PositiveNumber);
        sub->add_option("--tol", tol, "Relative integration tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--model", model, "Model: ho, tls or two_spin");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    try {
        const Experiment experiment = parse_experiment(chosen->get_name());
        if (chosen->count("--threads")) {
            overrides.threads = threads;
        }
        if (chosen->count("--tol")) {
            overrides.tol = tol;
        }
        if (chosen->count("--model")) {
            overrides.model = model;
        }
        std::optional<std::string> text;
        if (!config_path.empty()) {
            text = read_file(config_path);
        }
        const RunConfig cfg = resolve_config(experiment, text, overrides);
        const RunOutput out = run(cfg);
        const Format fmt = format == "json" ? Format::Json : Format::Csv;
        for (const auto& p : write_outputs(cfg, out, fmt, out_dir)) {
            std::cout << p.string() << '\n';
        }
        for (const auto& w : out.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        if (!out.fatal_error.empty()) {
            std::cerr << "error: " << out.fatal_error << '\n';
        } else if (out.failures() > 0) {
            std::cerr << "error: " << out.failures() << " of " << out.points.size() << " points failed\n";
        }
        return out.exit_code();
    } catch (const inertia::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}
