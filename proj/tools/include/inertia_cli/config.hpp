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

#include <optional>
#include <string>

#include <json.hpp>

#include "inertia/diagnostics.hpp"
#include "inertia/geometric.hpp"
#include "inertia/models.hpp"
#include "inertia/open_quantum.hpp"

namespace inertia::cli {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class Experiment { Sweep, Diagnose, Open, Geo, Single };

std::string experiment_name(Experiment e);
Experiment parse_experiment(const std::string& name);

// Command-line settings layered over the file and the embedded defaults.
struct Overrides {
    std::optional<std::string> model;
    std::optional<int> threads;
    std::optional<double> tol;
};

struct RunConfig {
    Experiment experiment = Experiment::Sweep;
    // Fully resolved tree: defaults, then the file, then overrides.
    Json tree;
};

Json default_config();

// Keys a supplied config file must set itself.
const std::vector<std::string>& required_keys();

// `text` is the config file contents; nullopt means no file was given. Throws ConfigInvalid
// with the offending key path.
RunConfig resolve_config(Experiment experiment, const std::optional<std::string>& text,
                         const Overrides& overrides);

// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const Json& tree);

// Typed views of the resolved tree. All throw ConfigInvalid naming the key path.
models::Model model_from(const Json& tree);
PropagationOptions propagation_from(const Json& tree);
int threads_from(const Json& tree);
SweepSpec sweep_spec_from(const Json& tree);
BathSpec bath_from(const Json& tree);

struct GeoSetup {
    GeneratorFamily family;
    ParameterCircuit circuit;
    PhaseOptions options;
    bool surface = true;
};
GeoSetup geo_from(const Json& tree);

} // namespace inertia::cli
