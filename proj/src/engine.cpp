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

#include "qduel/engine.hpp"

namespace qduel {

EngineKind parse_engine(std::string_view name) {
    if (name == "auto") return EngineKind::Auto;
    if (name == "dense") return EngineKind::Dense;
    if (name == "cluster") return EngineKind::Cluster;
    throw Error("unknown engine '" + std::string(name) + "' (expected auto, dense or cluster)");
}

std::string_view engine_name(EngineKind kind) {
    switch (kind) {
        case EngineKind::Auto: return "auto";
        case EngineKind::Dense: return "dense";
        case EngineKind::Cluster: return "cluster";
    }
    return "auto";
}

EngineKind resolve_engine(EngineKind kind, std::size_t N) {
    if (kind != EngineKind::Auto) return kind;
    return N <= kDefaultDenseLimit ? EngineKind::Dense : EngineKind::Cluster;
}

std::vector<double> ClusterEngine::element_distribution(const State& s) const {
    const auto per_cluster = cluster_output_distribution(s, cidx_);
    std::vector<double> P(cidx_.N, 0.0);
    for (std::size_t x = 0; x < cidx_.N; ++x) {
        const auto& c = cidx_.cluster(cidx_.element_to_cluster[x]);
        P[x] = per_cluster[c.idx - 1] / static_cast<double>(c.size);
    }
    return P;
}

}  // namespace qduel
