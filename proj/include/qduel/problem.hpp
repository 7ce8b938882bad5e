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

#ifndef QDUEL_PROBLEM_HPP
#define QDUEL_PROBLEM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qduel {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// 1-based element index into the search space, x in [1, N].
using Element = std::size_t;

namespace dist {

/// f(x) = [x = t (mod s)] with 1 <= t <= s.
struct ModularUniform {
    std::size_t t = 1;
    std::size_t s = 1;
};

/// f(x) = [lo <= x <= hi].
struct Range {
    std::size_t lo = 1;
    std::size_t hi = 1;
};

/// f(x) = [x = y^2 for some integer y].
struct PerfectSquares {};

struct Union;

/// f given verbatim, one entry per element in index order.
struct ExplicitTable {
    std::vector<std::uint8_t> bits;
};

}  // namespace dist

using DistributionSpec = std::variant<dist::ModularUniform, dist::Range, dist::PerfectSquares,
                                      dist::ExplicitTable, dist::Union>;

namespace dist {
/// f(x) = OR of the member distributions.
struct Union {
    std::vector<DistributionSpec> parts;
};
}  // namespace dist

/// Checks parameter invariants of `spec` against a search space of size N.
/// Throws qduel::Error on violation.
void validate(const DistributionSpec& spec, std::size_t N);

/// Materializes f as a 0/1 table of length N (index x-1 holds f(x)).
std::vector<std::uint8_t> materialize(const DistributionSpec& spec, std::size_t N);

/// Short human-readable form, e.g. "[x = 1 (mod 16)]".
std::string describe(const DistributionSpec& spec);

/// Measure function choice for build_problem: nullopt means v(x) = x.
using MeasureSpec = std::optional<std::vector<double>>;

/// An optimization instance (N, v, f). Immutable once built.
///
/// Public accessors take 1-based elements. The raw tables returned by
/// values() and solutions() are 0-based (entry x-1 describes element x) and
/// are what the simulation kernels iterate over.
class ProblemInstance {
   public:
    /// Builds from explicit tables. Throws if the sizes disagree, N is not a
    /// power of two, or f has no ones.
    ProblemInstance(std::vector<double> v, std::vector<std::uint8_t> f);

    unsigned qubits() const { return qubits_; }
    std::size_t size() const { return v_.size(); }
    std::size_t solution_count() const { return solution_count_; }

    double value(Element x) const { return v_[x - 1]; }
    bool is_solution(Element x) const { return f_[x - 1] != 0; }

    std::span<const double> values() const { return v_; }
    std::span<const std::uint8_t> solutions() const { return f_; }

    /// Minimal v over the solutions.
    double optimal_value() const { return optimal_value_; }

   private:
    std::vector<double> v_;
    std::vector<std::uint8_t> f_;
    unsigned qubits_ = 0;
    std::size_t solution_count_ = 0;
    double optimal_value_ = 0.0;
};

/// Builds the instance on N = 2^n elements. Rejects distributions with no
/// solutions.
ProblemInstance build_problem(unsigned n, const MeasureSpec& v_spec, const DistributionSpec& dist);

/// M = ceil(sqrt(N)), the solution count used by the complexity study.
std::size_t uniform_solution_count(std::size_t N);

/// True iff ceil(N/M) < N/(M-1), i.e. an integer stride s with exactly M
/// residues of t = 1 exists. M = 1 is always valid.
bool uniform_count_valid(std::size_t N, std::size_t M);

/// Evenly spread M solutions: ModularUniform(t, ceil(N/M)).
/// Throws when (N, M) fails uniform_count_valid or t is out of [1, s].
DistributionSpec modular_uniform(std::size_t N, std::size_t M, std::size_t t);

/// o(x, y) = (-1)^{f(x) & [v(x) < v(y)]}.
inline int element_o(Element x, Element y, const ProblemInstance& inst) {
    return (inst.is_solution(x) && inst.value(x) < inst.value(y)) ? -1 : 1;
}

/// The solution with minimal v; the smallest index among ties.
Element optimum(const ProblemInstance& inst);

}  // namespace qduel

#endif  // QDUEL_PROBLEM_HPP
