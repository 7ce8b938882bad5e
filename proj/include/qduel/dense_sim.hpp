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

#ifndef QDUEL_DENSE_SIM_HPP
#define QDUEL_DENSE_SIM_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qduel/problem.hpp"

namespace qduel {

/// Largest N accepted by the dense engine unless overridden.
inline constexpr std::size_t kDefaultDenseLimit = 4096;

/// Two-register state on the full N x N grid. amp is row-major with the
/// first register as the row: amp[(k-1)*N + (l-1)] = psi_kl.
template <class T>
struct BasicDenseState {
    std::size_t N = 0;
    std::vector<T> amp;
    std::size_t oracle_count = 0;

    T& at(Element k, Element l) { return amp[(k - 1) * N + (l - 1)]; }
    const T& at(Element k, Element l) const { return amp[(k - 1) * N + (l - 1)]; }
};

using DenseState = BasicDenseState<double>;
/// Debug variant; the dueling operators are real so imaginary parts stay 0.
using ComplexDenseState = BasicDenseState<std::complex<double>>;

/// Which register a dueling gate updates.
enum class Gate : std::uint8_t { G1 = 0, G2 = 1 };

/// Uniform superposition over both registers. Throws when N exceeds `limit`.
DenseState init_dense(const ProblemInstance& inst, std::size_t limit = kDefaultDenseLimit);
ComplexDenseState init_dense_complex(const ProblemInstance& inst,
                                     std::size_t limit = kDefaultDenseLimit);

// Gate kernels, O(N^2) each. For every column l the oracle-weighted column
// sum h_l = sum_k' o(k',l) psi_k'l is accumulated once, then
// psi_kl <- (2/N) h_l - o(k,l) psi_kl. G2 is the same with registers swapped.
// The span overloads take raw 0-based (v, f) tables and do not require a
// solution to exist.
void apply_g1_dense(DenseState& state, const ProblemInstance& inst);
void apply_g2_dense(DenseState& state, const ProblemInstance& inst);
void apply_g1_dense(DenseState& state, std::span<const double> v, std::span<const std::uint8_t> f);
void apply_g2_dense(DenseState& state, std::span<const double> v, std::span<const std::uint8_t> f);
void apply_g1_dense(ComplexDenseState& state, const ProblemInstance& inst);
void apply_g2_dense(ComplexDenseState& state, const ProblemInstance& inst);

inline void apply_gate(DenseState& state, const ProblemInstance& inst, Gate g) {
    g == Gate::G1 ? apply_g1_dense(state, inst) : apply_g2_dense(state, inst);
}

/// Sum of |psi|^2.
double norm_squared(const DenseState& state);
double norm_squared(const ComplexDenseState& state);

/// Largest |Im psi_kl|.
double max_imag(const ComplexDenseState& state);

/// The element Algorithm output keeps from a pair of register readings:
/// a solution beats a non-solution, the smaller v wins between solutions,
/// and the first register is kept otherwise (including equal-v solutions).
inline Element better(Element x1, Element x2, const ProblemInstance& inst) {
    const bool s1 = inst.is_solution(x1);
    const bool s2 = inst.is_solution(x2);
    if (s1 != s2) return s1 ? x1 : x2;
    if (s1 && inst.value(x2) < inst.value(x1)) return x2;
    return x1;
}

/// P[x-1] = probability that better(x1, x2) = x after measuring both
/// registers.
std::vector<double> output_distribution(const DenseState& state, const ProblemInstance& inst);

/// P'[k-1] = sum_l psi_kl^2.
std::vector<double> first_register_distribution(const DenseState& state);

/// Probability that the combined output is an optimal solution (any solution
/// with v equal to the optimum value). Equals output_distribution at the
/// optimum when the optimum is unique. O(N * |optimal set|).
double combined_success(const DenseState& state, const ProblemInstance& inst);

/// Probability that the first register alone reads an optimal solution.
double first_register_success(const DenseState& state, const ProblemInstance& inst);

/// Position (1-based) and value of the first local maximum: the smallest i
/// with series[i] >= series[i+1], or the last entry if the series never
/// falls. Throws on an empty series.
std::pair<std::size_t, double> first_local_max(std::span<const double> series);

}  // namespace qduel

#endif  // QDUEL_DENSE_SIM_HPP
