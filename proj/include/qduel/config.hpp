// Copyright 2026 The qduel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDUEL_CONFIG_HPP
#define QDUEL_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qduel/problem.hpp"

namespace qduel {

inline constexpr const char* kVersion = "0.1.0";

/// A problem definition file. JSON object with
///
///   n             qubits per register (N = 2^n)
///   v             "identity" or an array of N numbers
///   distribution  {"type": ..., parameters}
///
/// and optional run parameters (alpha, beta, ops, rounds, depth,
/// change_limit). Distribution types:
///
///   {"type": "modular_uniform", "t": 1, "s": 16}
///   {"type": "modular_uniform", "M": 16, "t": 1}     stride derived from N
///   {"type": "range", "lo": 1, "hi": 16}
///   {"type": "perfect_squares"}
///   {"type": "explicit", "bits": [0, 1, ...]}
///   {"type": "union", "parts": [ ... ]}
struct ProblemFile {
    unsigned n = 0;
    MeasureSpec v;
    DistributionSpec distribution;

    std::optional<std::vector<std::size_t>> alpha;
    std::optional<std::vector<std::size_t>> beta;
    std::optional<std::string> ops;
    std::optional<std::size_t> rounds;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> change_limit;

    nlohmann::json raw;

    ProblemInstance instance() const;
};

DistributionSpec distribution_from_json(const nlohmann::json& j, std::size_t N);
nlohmann::json distribution_to_json(const DistributionSpec& spec);

ProblemFile parse_problem(const nlohmann::json& j);
ProblemFile load_problem_file(const std::filesystem::path& path);
nlohmann::json problem_to_json(const ProblemFile& p);

/// FNV-1a over the compact dump of `j` (keys are sorted by nlohmann::json).
std::uint64_t config_hash(const nlohmann::json& j);
std::string hex64(std::uint64_t h);

/// Run metadata written next to every output.
struct RunMetadata {
    std::string command;
    nlohmann::json config;
    double wall_seconds = 0.0;
    nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json metadata_json(const RunMetadata& m);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qduel

#endif  // QDUEL_CONFIG_HPP
