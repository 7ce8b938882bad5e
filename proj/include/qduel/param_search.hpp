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

#ifndef QDUEL_PARAM_SEARCH_HPP
#define QDUEL_PARAM_SEARCH_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qduel/engine.hpp"
#include "qduel/problem.hpp"

namespace qduel {

/// Per-gate record of a dueling run. Entry i (0-based) is the state after
/// gate i + 1, which is also the cumulative oracle count.
struct GateTrace {
    std::vector<Gate> ops;
    std::vector<double> probs_combined;
    std::vector<double> probs_first;

    std::size_t size() const { return ops.size(); }
    std::size_t oracle_count(std::size_t i) const { return i + 1; }
    void append(Gate g, double combined, double first) {
        ops.push_back(g);
        probs_combined.push_back(combined);
        probs_first.push_back(first);
    }
};

enum class ScoreMetric { Combined, FirstRegister };

struct SearchConfig {
    std::size_t depth = 1;
    std::size_t change_limit = 0;
    double threshold = 0.4;
    std::size_t max_gates = 4096;
    ScoreMetric metric = ScoreMetric::Combined;
    /// Worker threads for window evaluation; 0 picks the hardware count.
    unsigned threads = 0;
    /// Wall-clock budget in seconds checked between windows; 0 disables it.
    double time_limit = 0.0;

    /// Throws unless depth >= 1 and change_limit <= depth - 1.
    void validate() const;
};

/// Operator string as characters: '1' for G1, '2' for G2.
std::string ops_to_string(const std::vector<Gate>& ops);
std::vector<Gate> ops_from_string(std::string_view s);

/// Number of adjacent positions with differing operators.
std::size_t transition_count(const std::vector<Gate>& s);

/// All strings of length `depth` with at most `change_limit` internal
/// transitions, in lexicographic order with G1 before G2.
std::vector<std::vector<Gate>> enumerate_windows(std::size_t depth, std::size_t change_limit);

/// 2 * sum_{j <= change_limit} C(depth - 1, j).
std::size_t window_count(std::size_t depth, std::size_t change_limit);

struct SearchResult {
    GateTrace trace;
    bool reached = false;  // threshold hit before max_gates
    bool timed_out = false;
    std::size_t windows_committed = 0;
};

/// Window-greedy search: from the current state try every admissible
/// window, commit the one with the best final score (first in
/// lexicographic order on ties), repeat until the scored probability reaches
/// the threshold or max_gates gates are committed.
SearchResult heuristic_search(const ProblemInstance& inst, const SearchConfig& cfg,
                              EngineKind engine = EngineKind::Auto);

/// Applies `ops` from the initial state and records every gate.
GateTrace replay(const ProblemInstance& inst, const std::vector<Gate>& ops,
                 EngineKind engine = EngineKind::Auto);

/// Smallest 1-based gate index whose combined probability reaches the
/// threshold.
std::optional<std::size_t> oracles_to_threshold(const GateTrace& trace, double threshold);

/// Run lengths for replay as G1^alpha_1 G2^beta_1 G1^alpha_2
/// ... A leading G2 run gets alpha_1 = 0; a trailing G1 run leaves beta one
/// entry shorter than alpha.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> run_length_encode(
    const std::vector<Gate>& ops);
std::vector<Gate> run_length_decode(const std::vector<std::size_t>& alpha,
                                    const std::vector<std::size_t>& beta);

/// CSV `gate,oracle_count,op,P_combined_opt,P_first_opt`.
void write_trace_csv(std::ostream& os, const GateTrace& trace);
/// Parses what write_trace_csv emits.
GateTrace read_trace_csv(std::istream& is);

}  // namespace qduel

#endif  // QDUEL_PARAM_SEARCH_HPP
