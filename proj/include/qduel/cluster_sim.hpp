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

#ifndef QDUEL_CLUSTER_SIM_HPP
#define QDUEL_CLUSTER_SIM_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qduel/dense_sim.hpp"
#include "qduel/problem.hpp"

namespace qduel {

/// 1-based cluster index xi in [1, q].
using ClusterId = std::size_t;

/// One equivalence class of the search space: either every solution sharing
/// a single v value, or a maximal run of non-solutions (in v order) whose
/// half-open v-span [v_min, v_max) holds no solution value.
struct Cluster {
    ClusterId idx = 0;
    std::size_t size = 0;
    bool f_value = false;
    double v_min = 0.0;
    double v_max = 0.0;
    std::vector<Element> members;
};

/// The partition with clusters sorted by (v, then non-solutions before
/// solutions at an equal v point) and numbered 1..q in that order.
struct ClusterIndex {
    std::size_t N = 0;
    std::vector<Cluster> clusters;
    std::vector<ClusterId> element_to_cluster;  // entry x-1 holds the cluster of x

    std::size_t q() const { return clusters.size(); }
    const Cluster& cluster(ClusterId xi) const { return clusters[xi - 1]; }
    ClusterId cluster_of(Element x) const { return element_to_cluster[x - 1]; }

    /// Lowest-indexed solution cluster; it holds exactly the optimal elements.
    ClusterId optimum_cluster() const;
};

/// Sort-and-sweep construction, O(N log N).
ClusterIndex build_clusters(const ProblemInstance& inst);

/// o(eta, xi) = (-1)^{f(eta) & [eta < xi]}.
inline int contracted_o(ClusterId eta, ClusterId xi, const ClusterIndex& cidx) {
    return (cidx.cluster(eta).f_value && eta < xi) ? -1 : 1;
}

/// Amplitudes on the q x q contracted basis, row-major with the first
/// register as the row.
struct ClusterState {
    std::size_t q = 0;
    std::vector<double> amp;
    std::size_t oracle_count = 0;

    double& at(ClusterId kappa, ClusterId lambda) { return amp[(kappa - 1) * q + (lambda - 1)]; }
    double at(ClusterId kappa, ClusterId lambda) const {
        return amp[(kappa - 1) * q + (lambda - 1)];
    }
};

/// psi_kl = sqrt(N_k N_l) / N.
ClusterState init_cluster(const ClusterIndex& cidx);

/// Contracted gate kernels, O(q^2) each:
///   h_l = sum_k' sqrt(N_k'/N) o(k',l) psi_k'l,
///   psi_kl <- 2 sqrt(N_k/N) h_l - o(k,l) psi_kl,
/// and the register-swapped image for G2.
void apply_g1_cluster(ClusterState& state, const ClusterIndex& cidx);
void apply_g2_cluster(ClusterState& state, const ClusterIndex& cidx);

inline void apply_gate(ClusterState& state, const ClusterIndex& cidx, Gate g) {
    g == Gate::G1 ? apply_g1_cluster(state, cidx) : apply_g2_cluster(state, cidx);
}

double norm_squared(const ClusterState& state);

/// Cluster-level better(): solutions beat non-solutions, the lower index wins
/// between two solution clusters, and the first register is kept otherwise.
inline ClusterId better_cluster(ClusterId kappa, ClusterId lambda, const ClusterIndex& cidx) {
    const bool s1 = cidx.cluster(kappa).f_value;
    const bool s2 = cidx.cluster(lambda).f_value;
    if (s1 != s2) return s1 ? kappa : lambda;
    if (s1 && lambda < kappa) return lambda;
    return kappa;
}

/// P[xi-1] = probability that the combined output falls in cluster xi.
/// Element probabilities are P[xi-1] / N_xi for each member.
std::vector<double> cluster_output_distribution(const ClusterState& state,
                                                const ClusterIndex& cidx);

/// Per-cluster marginal of the first register.
std::vector<double> cluster_first_register_distribution(const ClusterState& state);

/// Combined probability of the optimum cluster, O(q).
double combined_success(const ClusterState& state, const ClusterIndex& cidx);
double first_register_success(const ClusterState& state, const ClusterIndex& cidx);

/// psi_kl = psi_{kappa lambda} / sqrt(N_kappa N_lambda). Throws above `limit`.
DenseState expand_to_dense(const ClusterState& state, const ClusterIndex& cidx,
                           std::size_t limit = kDefaultDenseLimit);

/// CSV with header `idx,size,f,v_min,v_max`.
void write_cluster_csv(std::ostream& os, const ClusterIndex& cidx);

}  // namespace qduel

#endif  // QDUEL_CLUSTER_SIM_HPP
