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

#ifndef QDUEL_EXPERIMENTS_HPP
#define QDUEL_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qduel/baselines.hpp"
#include "qduel/engine.hpp"
#include "qduel/param_search.hpp"
#include "qduel/problem.hpp"

namespace qduel {

/// Ordinary least squares of log2(y) on log2(x).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Requires >= 3 strictly positive points and at least two distinct x.
/// Standard errors use the unbiased residual variance SS_res / (n - 2).
/// R^2 is reported as 1 when every y is equal.
FitResult loglog_fit(std::span<const std::pair<double, double>> points);

struct NamedDistribution {
    std::string label;
    DistributionSpec spec;
};

/// The six solution layouts of the naive-parameter table, scaled to N with
/// M = ceil(sqrt N) and stride s = ceil(N/M): x = 1, s/2 and 0 (mod s),
/// x <= M, x > N - M, and x = 1 or x > N - M + 1. N = 256 gives the
/// published rows.
std::vector<NamedDistribution> table1_distributions(std::size_t N);

/// Probabilities recorded after every round G1^alpha_i G2^beta_i.
struct RoundSeries {
    std::vector<std::size_t> oracle_count;
    std::vector<double> combined;
    std::vector<double> first;
    std::vector<std::vector<double>> element_combined;  // only if requested
};

RoundSeries run_rounds(const ProblemInstance& inst, const std::vector<std::size_t>& alpha,
                       const std::vector<std::size_t>& beta, EngineKind engine,
                       bool per_element = false);

/// Rounds run for every naive-parameter experiment (80 gates).
inline constexpr std::size_t kNaiveRounds = 40;

/// First local maxima of the combined and first-register success series
/// under alpha_i = beta_i = 1.
struct PeakRow {
    std::string label;
    std::size_t M = 0;
    bool valid = true;
    double P_max = 0.0;
    std::size_t p_max = 0;
    double P1_max = 0.0;
    std::size_t p1_max = 0;
};

PeakRow naive_peaks(const ProblemInstance& inst, std::string label,
                    std::size_t rounds = kNaiveRounds, EngineKind engine = EngineKind::Auto);

/// N = 256, identity v, the six table1_distributions.
std::vector<PeakRow> run_table1(EngineKind engine = EngineKind::Auto,
                                std::size_t rounds = kNaiveRounds);

/// One row per M with f(x) = [x - 1 = 0 (mod ceil(N/M))]. M values failing
/// the even-spread condition come back with valid = false.
std::vector<PeakRow> run_m_sweep(std::size_t N, const std::vector<std::size_t>& M_list,
                                 EngineKind engine = EngineKind::Auto,
                                 std::size_t rounds = kNaiveRounds);

struct HeuristicCase {
    std::string name;
    DistributionSpec spec;
};

/// Shifted residues (t = 1, 8, 0 mod 16), concentration sweep
/// (M = 4, 16, 32, 86, 256) and the three non-uniform layouts (squares,
/// [1, M], [N - M + 1, N]) on N = 256.
std::vector<HeuristicCase> heuristic_cases(std::size_t N = 256);

struct HeuristicOutcome {
    HeuristicCase which;
    SearchResult result;
};

std::vector<HeuristicOutcome> run_heuristic_figures(const std::vector<HeuristicCase>& cases,
                                                    unsigned n, const SearchConfig& cfg,
                                                    EngineKind engine = EngineKind::Cluster);

/// One row of the published complexity table.
struct ComplexityParams {
    unsigned n = 0;
    std::size_t M = 0;
    std::size_t depth = 0;
    std::size_t change_limit = 0;
    std::size_t published_T = 0;
};

/// n = 5 ... 16.
const std::vector<ComplexityParams>& table2_parameters();

/// M = ceil(sqrt N), f(x) = [x = 1 (mod ceil(N/M))], v(x) = x.
ProblemInstance complexity_instance(unsigned n);

struct ComplexityPoint {
    ComplexityParams params;
    std::size_t N = 0;
    std::optional<std::size_t> T;
    bool timed_out = false;
    double seconds = 0.0;
    GateTrace trace;
};

struct ComplexityResult {
    std::vector<ComplexityPoint> points;
    std::optional<FitResult> fit;  // needs >= 4 points with a measured T
};

struct ComplexityOptions {
    double threshold = 0.4;
    double time_limit = 0.0;  // per N, seconds; 0 = unlimited
    std::size_t max_gates = 4096;
    EngineKind engine = EngineKind::Cluster;
    unsigned threads = 0;
};

ComplexityResult run_complexity(const std::vector<ComplexityParams>& params,
                                const ComplexityOptions& opts = {});

struct ComparisonRow {
    std::string algorithm;
    std::size_t N = 0;
    std::size_t M = 0;
    std::uint64_t seed = 0;
    std::size_t oracles = 0;
    bool found_optimum = false;
};

/// GAS and hybrid dueling over the same seeds.
std::vector<ComparisonRow> run_oracle_comparison(const ProblemInstance& inst,
                                                 const std::vector<std::uint64_t>& seeds,
                                                 const HybridConfig& hybrid, double gas_lambda,
                                                 const Termination& gas_termination);

// CSV emitters. Every file starts with a one-line header; probabilities are
// written with 17 significant digits.
void write_rounds_csv(std::ostream& os, const RoundSeries& series);
void write_peaks_csv(std::ostream& os, const std::vector<PeakRow>& rows);
void write_complexity_csv(std::ostream& os, const ComplexityResult& res);
void write_fit_csv(std::ostream& os, const FitResult& fit);
void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);

/// Reads (x, y) pairs from a two-or-more-column CSV with a header, using the
/// named columns.
std::vector<std::pair<double, double>> read_xy_csv(std::istream& is, const std::string& x_col,
                                                   const std::string& y_col);

}  // namespace qduel

#endif  // QDUEL_EXPERIMENTS_HPP
