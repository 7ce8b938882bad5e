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

#include "qduel/cluster_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace qduel {

ClusterId ClusterIndex::optimum_cluster() const {
    for (const auto& c : clusters) {
        if (c.f_value) return c.idx;
    }
    throw Error("cluster index has no solution cluster");
}

ClusterIndex build_clusters(const ProblemInstance& inst) {
    const std::size_t N = inst.size();
    const auto v = inst.values();
    const auto f = inst.solutions();

    // Order by v, then non-solutions first at a shared v point, then index.
    // A non-solution with v equal to some solution value closes the run below
    // that value, so it must be swept before the solution.
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return f[a] < f[b];
    });

    ClusterIndex out;
    out.N = N;
    out.element_to_cluster.assign(N, 0);
    for (std::size_t i : order) {
        const bool sol = f[i] != 0;
        const bool extend = !out.clusters.empty() && out.clusters.back().f_value == sol &&
                            (!sol || out.clusters.back().v_min == v[i]);
        if (!extend) {
            Cluster c;
            c.idx = out.clusters.size() + 1;
            c.f_value = sol;
            c.v_min = v[i];
            c.v_max = v[i];
            out.clusters.push_back(std::move(c));
        }
        Cluster& c = out.clusters.back();
        ++c.size;
        c.v_max = v[i];
        c.members.push_back(i + 1);
        out.element_to_cluster[i] = c.idx;
    }
    return out;
}

ClusterState init_cluster(const ClusterIndex& cidx) {
    const std::size_t q = cidx.q();
    const double N = static_cast<double>(cidx.N);
    ClusterState s;
    s.q = q;
    s.amp.resize(q * q);
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
            s.amp[a * q + b] = std::sqrt(static_cast<double>(cidx.clusters[a].size) *
                                         static_cast<double>(cidx.clusters[b].size)) /
                               N;
        }
    }
    return s;
}

namespace {

std::vector<double> weights(const ClusterIndex& cidx) {
    std::vector<double> w(cidx.q());
    const double N = static_cast<double>(cidx.N);
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::sqrt(static_cast<double>(cidx.clusters[i].size) / N);
    }
    return w;
}

void check_dims(const ClusterState& s, const ClusterIndex& cidx) {
    if (s.q != cidx.q()) throw Error("cluster state dimension does not match index");
}

}  // namespace

void apply_g1_cluster(ClusterState& s, const ClusterIndex& cidx) {
    check_dims(s, cidx);
    const std::size_t q = s.q;
    const auto w = weights(cidx);
    std::vector<double> h(q, 0.0);
    // o(k,l) = -1 iff cluster k is a solution cluster and k < l (0-based
    // comparison is order-equivalent).
    for (std::size_t k = 0; k < q; ++k) {
        double* row = &s.amp[k * q];
        if (cidx.clusters[k].f_value) {
            for (std::size_t l = k + 1; l < q; ++l) row[l] = -row[l];
        }
        const double wk = w[k];
        for (std::size_t l = 0; l < q; ++l) h[l] += wk * row[l];
    }
    for (std::size_t k = 0; k < q; ++k) {
        double* row = &s.amp[k * q];
        const double wk2 = 2.0 * w[k];
        for (std::size_t l = 0; l < q; ++l) row[l] = wk2 * h[l] - row[l];
    }
    ++s.oracle_count;
}

void apply_g2_cluster(ClusterState& s, const ClusterIndex& cidx) {
    check_dims(s, cidx);
    const std::size_t q = s.q;
    const auto w = weights(cidx);
    for (std::size_t k = 0; k < q; ++k) {
        double* row = &s.amp[k * q];
        // o(l,k) = -1 iff cluster l is a solution cluster and l < k.
        for (std::size_t l = 0; l < k; ++l) {
            if (cidx.clusters[l].f_value) row[l] = -row[l];
        }
        double h = 0.0;
        for (std::size_t l = 0; l < q; ++l) h += w[l] * row[l];
        for (std::size_t l = 0; l < q; ++l) row[l] = 2.0 * w[l] * h - row[l];
    }
    ++s.oracle_count;
}

double norm_squared(const ClusterState& state) {
    // Extended accumulator: a plain double sum over many squares drifts.
    long double acc = 0.0L;
    for (double a : state.amp) acc += static_cast<long double>(a) * a;
    return static_cast<double>(acc);
}

std::vector<double> cluster_output_distribution(const ClusterState& state,
                                                const ClusterIndex& cidx) {
    check_dims(state, cidx);
    std::vector<double> P(state.q, 0.0);
    for (ClusterId k = 1; k <= state.q; ++k) {
        for (ClusterId l = 1; l <= state.q; ++l) {
            const double a = state.at(k, l);
            P[better_cluster(k, l, cidx) - 1] += a * a;
        }
    }
    return P;
}

std::vector<double> cluster_first_register_distribution(const ClusterState& state) {
    std::vector<double> P(state.q, 0.0);
    for (std::size_t k = 0; k < state.q; ++k) {
        for (std::size_t l = 0; l < state.q; ++l) {
            const double a = state.amp[k * state.q + l];
            P[k] += a * a;
        }
    }
    return P;
}

double combined_success(const ClusterState& state, const ClusterIndex& cidx) {
    check_dims(state, cidx);
    const std::size_t q = state.q;
    const std::size_t o = cidx.optimum_cluster() - 1;
    double acc = 0.0;
    for (std::size_t l = 0; l < q; ++l) acc += state.amp[o * q + l] * state.amp[o * q + l];
    for (std::size_t k = 0; k < q; ++k) {
        if (k != o) acc += state.amp[k * q + o] * state.amp[k * q + o];
    }
    return acc;
}

double first_register_success(const ClusterState& state, const ClusterIndex& cidx) {
    check_dims(state, cidx);
    const std::size_t q = state.q;
    const std::size_t o = cidx.optimum_cluster() - 1;
    double acc = 0.0;
    for (std::size_t l = 0; l < q; ++l) acc += state.amp[o * q + l] * state.amp[o * q + l];
    return acc;
}

DenseState expand_to_dense(const ClusterState& state, const ClusterIndex& cidx,
                           std::size_t limit) {
    check_dims(state, cidx);
    const std::size_t N = cidx.N;
    if (N > limit) {
        throw Error("expansion refuses N = " + std::to_string(N) + " (dense limit " +
                    std::to_string(limit) + ")");
    }
    DenseState d;
    d.N = N;
    d.amp.resize(N * N);
    d.oracle_count = state.oracle_count;
    for (std::size_t k = 0; k < N; ++k) {
        const ClusterId ck = cidx.element_to_cluster[k];
        const double nk = static_cast<double>(cidx.cluster(ck).size);
        for (std::size_t l = 0; l < N; ++l) {
            const ClusterId cl = cidx.element_to_cluster[l];
            const double nl = static_cast<double>(cidx.cluster(cl).size);
            d.amp[k * N + l] = state.at(ck, cl) / std::sqrt(nk * nl);
        }
    }
    return d;
}

void write_cluster_csv(std::ostream& os, const ClusterIndex& cidx) {
    const auto old = os.precision(17);
    os << "idx,size,f,v_min,v_max\n";
    for (const auto& c : cidx.clusters) {
        os << c.idx << ',' << c.size << ',' << (c.f_value ? 1 : 0) << ',' << c.v_min << ','
           << c.v_max << '\n';
    }
    os.precision(old);
}

}  // namespace qduel
