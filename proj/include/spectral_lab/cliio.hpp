// Copyright 2026 The Spectral Lab Authors
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

#include "spectral_lab/experiments.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slab {

inline constexpr const char *kToolVersion = "0.1.0";

/// One schema violation, e.g. {"circuit.n", "must be >= 1"}.
struct ConfigIssue {
    std::string path;
    std::string message;
};

struct ConfigParse {
    std::optional<RunConfig> config;  ///< set only when issues is empty
    std::vector<ConfigIssue> issues;
};

/// Parses run-config JSON. Keys left out take the values of the profile named
/// by "profile" (default "desk"); unknown keys are violations. Every violation
/// is collected, not just the first.
ConfigParse parse_config_text(const std::string &text);

/// Reads and parses a config file. Io if unreadable; Config listing every
/// violation otherwise.
RunConfig parse_config(const std::filesystem::path &path);

/// Semantic checks on an in-memory config.
std::vector<ConfigIssue> validate_config(const RunConfig &config);

/// Throws Config with all issues, one per line, when there are any.
void require_valid(const RunConfig &config);

std::string format_issues(const std::vector<ConfigIssue> &issues);

/// Pretty-printed JSON with every field explicit and keys sorted.
std::string serialize_config(const RunConfig &config);

/// SHA-256 of the compact canonical serialization, lowercase hex.
std::string config_hash(const RunConfig &config);

std::string sha256_hex(std::string_view bytes);

/// Shortest form that round-trips: printf "%.17g".
std::string format_double(double value);

std::string read_file(const std::filesystem::path &path);

/// Writes to a temporary sibling and renames it over the target.
void write_file_atomic(const std::filesystem::path &path, std::string_view bytes);

/// Parameter checkpoints: raw little-endian IEEE-754 float64, no header.
void write_params(const std::filesystem::path &path, std::span<const double> params);
ParameterTable read_params(const std::filesystem::path &path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const;
    std::size_t column(const std::string &name) const;
};

/// Comma-separated, no quoting. The first line is the header.
CsvTable parse_csv(const std::string &text);

using LogSink = std::function<void(const std::string &)>;

struct RunOutputs {
    std::filesystem::path directory;
    std::vector<std::string> files;  ///< relative to directory, manifest last
};

/// Runs config.experiment.kind and writes config.json, the result files and
/// manifest.json into config.output_directory.
RunOutputs run_experiment(const RunConfig &config, const LogSink &log = {});

/// Heatmap of a trace CSV (epoch x omega_* columns) as a standalone SVG.
std::string render_trace_svg(const CsvTable &trace);
void plot_trace(const std::filesystem::path &csv_in, const std::filesystem::path &svg_out);

} // namespace slab
