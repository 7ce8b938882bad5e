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

#ifndef QDUEL_TESTS_SUPPORT_HPP
#define QDUEL_TESTS_SUPPORT_HPP

#include <bit>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qduel/dense_sim.hpp"
#include "qduel/experiments.hpp"
#include "qduel/problem.hpp"

namespace qduel::testing {

inline ref::Inst to_ref(const ProblemInstance& inst) {
    ref::Inst r;
    r.N = inst.size();
    r.v.assign(inst.values().begin(), inst.values().end());
    r.f.assign(inst.solutions().begin(), inst.solutions().end());
    return r;
}

/// Random f with at least one solution and integer v drawn from a small range
/// so that ties occur. identity_v keeps v(x) = x.
inline ProblemInstance random_instance(std::size_t N, std::mt19937_64& rng,
                                       bool identity_v = false) {
    std::vector<std::uint8_t> f(N);
    const double density = 0.1 + 0.5 * std::uniform_real_distribution<double>()(rng);
    std::bernoulli_distribution coin(density);
    for (auto& b : f) b = coin(rng);
    f[rng() % N] = 1;
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i) {
        v[i] = identity_v ? static_cast<double>(i + 1) : static_cast<double>(rng() % (N / 2 + 1));
    }
    return ProblemInstance(std::move(v), std::move(f));
}

/// The six naive-schedule layouts scaled down to N.
inline std::vector<ProblemInstance> table1_instances(std::size_t N) {
    std::vector<ProblemInstance> out;
    const auto n = static_cast<unsigned>(std::countr_zero(N));
    for (const auto& d : table1_distributions(N)) out.push_back(build_problem(n, std::nullopt, d.spec));
    return out;
}

inline std::vector<Gate> random_ops(std::size_t len, std::mt19937_64& rng) {
    std::vector<Gate> ops(len);
    for (auto& g : ops) g = (rng() & 1) ? Gate::G2 : Gate::G1;
    return ops;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return a.size() == b.size() ? m : INFINITY;
}

}  // namespace qduel::testing

#endif  // QDUEL_TESTS_SUPPORT_HPP
