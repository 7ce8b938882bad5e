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

#ifndef QDUEL_ENGINE_HPP
#define QDUEL_ENGINE_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qduel/cluster_sim.hpp"
#include "qduel/dense_sim.hpp"

namespace qduel {

enum class EngineKind { Auto, Dense, Cluster };

EngineKind parse_engine(std::string_view name);
std::string_view engine_name(EngineKind kind);

/// Auto picks dense up to the dense limit and cluster above it.
EngineKind resolve_engine(EngineKind kind, std::size_t N);

// Both engines expose the same small surface so searches and experiment
// loops can be written once as templates:
//   State init() const;
//   void apply(State&, Gate) const;
//   double combined(const State&) const;
//   double first(const State&) const;
//   std::vector<double> element_distribution(const State&) const;

class DenseEngine {
   public:
    using State = DenseState;

    explicit DenseEngine(const ProblemInstance& inst, std::size_t limit = kDefaultDenseLimit)
        : inst_(&inst), limit_(limit) {}

    State init() const { return init_dense(*inst_, limit_); }
    void apply(State& s, Gate g) const { apply_gate(s, *inst_, g); }
    double combined(const State& s) const { return combined_success(s, *inst_); }
    double first(const State& s) const { return first_register_success(s, *inst_); }
    std::vector<double> element_distribution(const State& s) const {
        return output_distribution(s, *inst_);
    }

   private:
    const ProblemInstance* inst_;
    std::size_t limit_;
};

class ClusterEngine {
   public:
    using State = ClusterState;

    explicit ClusterEngine(const ProblemInstance& inst) : cidx_(build_clusters(inst)) {}

    State init() const { return init_cluster(cidx_); }
    void apply(State& s, Gate g) const { apply_gate(s, cidx_, g); }
    double combined(const State& s) const { return combined_success(s, cidx_); }
    double first(const State& s) const { return first_register_success(s, cidx_); }
    std::vector<double> element_distribution(const State& s) const;

    const ClusterIndex& index() const { return cidx_; }

   private:
    ClusterIndex cidx_;
};

/// Builds the engine selected by `kind` for `inst` and calls fn(engine).
template <class Fn>
decltype(auto) with_engine(const ProblemInstance& inst, EngineKind kind, Fn&& fn) {
    if (resolve_engine(kind, inst.size()) == EngineKind::Dense) {
        DenseEngine e(inst);
        return std::forward<Fn>(fn)(e);
    }
    ClusterEngine e(inst);
    return std::forward<Fn>(fn)(e);
}

}  // namespace qduel

#endif  // QDUEL_ENGINE_HPP
