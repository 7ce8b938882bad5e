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

#ifndef QDUEL_BASELINES_HPP
#define QDUEL_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "qduel/engine.hpp"
#include "qduel/problem.hpp"

namespace qduel {

using Rng = std::mt19937_64;

/// Grover search on the plane spanned by the uniform superpositions of the
/// m targets and the N - m non-targets. The state is sin(sigma)|target> +
/// cos(sigma)|rest>, starting at sigma = theta = asin(sqrt(m/N)); each
/// iteration adds 2 theta.
struct GroverPlaneState {
    std::size_t N = 0;
    std::size_t m = 0;
    double theta = 0.0;
    double sigma = 0.0;
    std::size_t iterations = 0;

    static GroverPlaneState init(std::size_t N, std::size_t m);
    void iterate(std::size_t r = 1);
    double success() const;
};

/// sin^2((2r + 1) asin(sqrt(m/N))).
double grover_success(std::size_t N, std::size_t m, std::size_t r);

/// Rotation count closest to reaching sigma = pi/2; 0 once m > N/4, where a
/// single iteration already overshoots.
std::size_t preferred_rotations(std::size_t N, std::size_t m);

/// Stopping rule for the randomized hybrids. max_oracles must be set.
struct Termination {
    std::optional<std::size_t> max_oracles;
    std::size_t max_iterations = 1'000'000;
    bool stop_at_optimum = true;
};

/// stop_at_optimum with an oracle budget of 50 sqrt(N).
Termination default_termination(std::size_t N);

struct BbhtResult {
    std::optional<Element> found;
    std::size_t oracles = 0;
};

/// Unknown-count Grover search (multiplicative schedule, growth 6/5) for any
/// element with f = 1. Stops early when the oracle budget is spent.
BbhtResult bbht_search(const ProblemInstance& inst, Rng& rng, std::size_t max_oracles,
                       double growth = 6.0 / 5.0);

struct GasRecord {
    std::size_t iteration = 0;
    std::size_t rotations = 0;
    std::size_t oracle_count = 0;  // cumulative, including the initial search
    std::optional<Element> best;
    double best_value = 0.0;
    double k = 1.0;
};

struct GasTrace {
    std::vector<GasRecord> records;  // records[0] is the initial search
    std::optional<Element> best;
    std::size_t oracles = 0;
    bool found_optimum = false;
};

/// Grover adaptive search with growth factor lambda (> 1). Measurement
/// outcomes are sampled from the exact plane model. Throws if the
/// termination has no oracle budget.
GasTrace run_gas(const ProblemInstance& inst, double lambda, std::uint64_t seed,
                 const Termination& termination);

inline constexpr double kGasLambda = 1.34;

/// Draws the rotation budget r for outer iteration i (1-based).
using RotationDraw = std::function<std::size_t(std::size_t iteration, Rng& rng)>;

/// r uniform on [1, ceil(lambda^i)].
RotationDraw uniform_rotation_draw(double lambda);
/// r fixed regardless of i.
RotationDraw fixed_rotation_draw(std::size_t r);

struct HybridConfig {
    std::vector<std::size_t> alpha;
    std::vector<std::size_t> beta;
    RotationDraw draw_r = uniform_rotation_draw(kGasLambda);
    Termination termination;
    EngineKind engine = EngineKind::Auto;
};

struct HybridRecord {
    std::size_t iteration = 0;
    std::size_t r = 0;
    std::size_t p = 0;
    Element sample = 0;
    std::size_t oracle_count = 0;
    std::optional<Element> best;
};

struct HybridResult {
    std::optional<Element> best;
    std::size_t oracles = 0;
    bool found_optimum = false;
    std::vector<HybridRecord> records;
};

/// Largest p with sum_{j<=p} (alpha_j + beta_j) <= r, capped by the
/// sequence length.
std::size_t truncation_point(const std::vector<std::size_t>& alpha,
                             const std::vector<std::size_t>& beta, std::size_t r);

/// The dueling loop with a randomized rotation budget per outer iteration.
/// The output distribution after each truncation p is computed once and
/// reused across iterations and across run() calls with different seeds.
class DuelingHybrid {
   public:
    DuelingHybrid(const ProblemInstance& inst, HybridConfig cfg);
    ~DuelingHybrid();
    DuelingHybrid(DuelingHybrid&&) noexcept;
    DuelingHybrid& operator=(DuelingHybrid&&) noexcept;

    HybridResult run(std::uint64_t seed);

    /// Combined output distribution (over elements) after p rounds.
    const std::vector<double>& distribution(std::size_t p);

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around DuelingHybrid.
HybridResult run_dueling_hybrid(const ProblemInstance& inst, const HybridConfig& cfg,
                                std::uint64_t seed);

}  // namespace qduel

#endif  // QDUEL_BASELINES_HPP
