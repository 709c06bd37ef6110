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

#include <filesystem>
#include <string>
#include <vector>

#include "inertia_cli/config.hpp"

namespace inertia::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPartial = 3;
inline constexpr int kExitFailed = 4;

struct Column {
    std::string name;
    // Module and operation that produced the values.
    std::string source;
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
};

struct PointStatus {
    std::size_t index = 0;
    bool ok = true;
    std::string error;
};

struct RunOutput {
    Experiment experiment = Experiment::Sweep;
    std::vector<Table> tables;
    std::vector<PointStatus> points;
    std::vector<std::string> warnings;
    // Set when the experiment aborted as a whole.
    std::string fatal_error;

    std::size_t failures() const;
    int exit_code() const;
};

RunOutput run(const RunConfig& config);

enum class Format { Csv, Json };

// 17 significant digits; NaN is written as "nan" in CSV and null in JSON.
std::string format_number(double x);
std::string to_csv(const Table& table);
Json to_json(const Table& table);
Json manifest(const RunConfig& config, const RunOutput& out, Format format);

// Writes every table and manifest.json into dir; returns the written paths in order.
std::vector<std::filesystem::path> write_outputs(const RunConfig& config, const RunOutput& out, Format format,
                                                 const std::filesystem::path& dir);

} // namespace inertia::cli
