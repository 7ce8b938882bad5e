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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qduel/cluster_sim.hpp"
#include "support.hpp"

namespace qduel {
namespace {

using testing::max_abs_diff;
using testing::random_instance;
using testing::to_ref;

// Same partition as the pairwise relation, up to relabeling.
void expect_matches_pairwise(const ProblemInstance& inst) {
    const auto cidx = build_clusters(inst);
    const auto r = to_ref(inst);
    const auto label = ref::pairwise_classes(r);
    for (std::size_t x = 0; x < inst.size(); ++x) {
        for (std::size_t y = 0; y < inst.size(); ++y) {
            ASSERT_EQ(label[x] == label[y], cidx.cluster_of(x + 1) == cidx.cluster_of(y + 1))
                << x + 1 << " " << y + 1;
        }
    }
}

TEST(BuildClusters, StrideSixteen) {
    const auto inst = build_problem(8, std::nullopt, dist::ModularUniform{1, 16});
    const auto cidx = build_clusters(inst);
    ASSERT_EQ(cidx.q(), 32u);
    for (ClusterId xi = 1; xi <= 32; ++xi) {
        const auto& c = cidx.cluster(xi);
        EXPECT_EQ(c.idx, xi);
        EXPECT_EQ(c.f_value, xi % 2 == 1);
        EXPECT_EQ(c.size, c.f_value ? 1u : 15u);
    }
    EXPECT_EQ(cidx.optimum_cluster(), 1u);
    expect_matches_pairwise(inst);
}

TEST(BuildClusters, LowBlockAndAllSolutions) {
    const auto low = build_clusters(build_problem(8, std::nullopt, dist::Range{1, 16}));
    ASSERT_EQ(low.q(), 17u);
    for (ClusterId xi = 1; xi <= 16; ++xi) EXPECT_TRUE(low.cluster(xi).f_value);
    EXPECT_FALSE(low.cluster(17).f_value);
    EXPECT_EQ(low.cluster(17).size, 240u);

    const auto all = build_clusters(build_problem(6, std::nullopt, dist::Range{1, 64}));
    EXPECT_EQ(all.q(), 64u);
    for (const auto& c : all.clusters) EXPECT_EQ(c.size, 1u);
}

TEST(BuildClusters, ExhaustiveSmallSpaces) {
    // Every f on N <= 8, each with a few random v tables containing ties.
    std::mt19937_64 rng(9);
    for (std::size_t N : {2u, 4u, 8u}) {
        for (std::size_t mask = 1; mask < (std::size_t{1} << N); ++mask) {
            std::vector<std::uint8_t> f(N);
            for (std::size_t i = 0; i < N; ++i) f[i] = (mask >> i) & 1;
            for (int rep = 0; rep < 4; ++rep) {
                std::vector<double> v(N);
                for (auto& x : v) x = static_cast<double>(rng() % 4);
                expect_matches_pairwise(ProblemInstance(v, f));
            }
        }
    }
}

TEST(BuildClusters, PartitionAndOrdering) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = random_instance(64, rng);
        const auto cidx = build_clusters(inst);
        std::size_t total = 0;
        for (const auto& c : cidx.clusters) {
            total += c.size;
            EXPECT_EQ(c.members.size(), c.size);
            if (c.f_value) EXPECT_EQ(c.v_min, c.v_max);
        }
        EXPECT_EQ(total, inst.size());
        for (ClusterId a = 1; a < cidx.q(); ++a) {
            // Open v-intervals of consecutive clusters do not intersect and
            // the sort key is non-decreasing.
            EXPECT_LE(cidx.cluster(a).v_max, cidx.cluster(a + 1).v_min);
        }
        const auto& opt = cidx.cluster(cidx.optimum_cluster());
        EXPECT_TRUE(opt.f_value);
        EXPECT_EQ(opt.v_min, inst.optimal_value());
    }
}

TEST(ContractedOracle, AgreesWithElementOracle) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(64, rng, trial % 2 == 0);
        const auto cidx = build_clusters(inst);
        for (ClusterId xi = 1; xi <= cidx.q(); ++xi) EXPECT_EQ(contracted_o(xi, xi, cidx), 1);
        for (Element x = 1; x <= inst.size(); ++x) {
            for (Element y = 1; y <= inst.size(); ++y) {
                ASSERT_EQ(contracted_o(cidx.cluster_of(x), cidx.cluster_of(y), cidx),
                          element_o(x, y, inst));
            }
        }
    }
}

TEST(InitCluster, Values) {
    // Sizes (1, 255).
    const auto inst = build_problem(8, std::nullopt, dist::Range{1, 1});
    const auto cidx = build_clusters(inst);
    ASSERT_EQ(cidx.q(), 2u);
    const auto s = init_cluster(cidx);
    EXPECT_DOUBLE_EQ(s.at(1, 1), 1.0 / 256);
    EXPECT_DOUBLE_EQ(s.at(1, 2), std::sqrt(255.0) / 256);
    EXPECT_DOUBLE_EQ(s.at(2, 1), std::sqrt(255.0) / 256);
    EXPECT_DOUBLE_EQ(s.at(2, 2), 255.0 / 256);
    EXPECT_NEAR(norm_squared(s), 1.0, 1e-15);

    const auto dense = expand_to_dense(s, cidx);
    EXPECT_LE(max_abs_diff(dense.amp, init_dense(inst).amp), 1e-15);
}

TEST(InitCluster, SingleCluster) {
    const std::vector<double> v{3.0, 3.0};
    const ProblemInstance inst(v, {1, 1});
    const auto cidx = build_clusters(inst);
    ASSERT_EQ(cidx.q(), 1u);
    auto s = init_cluster(cidx);
    EXPECT_DOUBLE_EQ(s.at(1, 1), 1.0);
    apply_g1_cluster(s, cidx);
    apply_g2_cluster(s, cidx);
    EXPECT_NEAR(s.at(1, 1), 1.0, 1e-15);
    for (double a : expand_to_dense(s, cidx).amp) EXPECT_NEAR(a, 0.5, 1e-15);
}

TEST(ClusterGates, CommuteWithExpansion) {
    std::mt19937_64 rng(1234);
    for (std::size_t N : {8u, 16u, 32u, 64u}) {
        for (int trial = 0; trial < 6; ++trial) {
            const auto inst = random_instance(N, rng, trial % 3 == 0);
            const auto cidx = build_clusters(inst);
            auto c = init_cluster(cidx);
            auto d = init_dense(inst);
            for (Gate g : testing::random_ops(30, rng)) {
                apply_gate(c, cidx, g);
                apply_gate(d, inst, g);
                ASSERT_LE(max_abs_diff(expand_to_dense(c, cidx).amp, d.amp), 1e-10);
            }
            EXPECT_EQ(c.oracle_count, 30u);
            EXPECT_NEAR(combined_success(c, cidx), combined_success(d, inst), 1e-10);
            EXPECT_NEAR(first_register_success(c, cidx), first_register_success(d, inst), 1e-10);
            const auto pc = cluster_output_distribution(c, cidx);
            const auto pd = output_distribution(d, inst);
            for (Element x = 1; x <= N; ++x) {
                const auto xi = cidx.cluster_of(x);
                EXPECT_NEAR(pc[xi - 1] / static_cast<double>(cidx.cluster(xi).size), pd[x - 1], 1e-10);
            }
        }
    }
}

TEST(ClusterGates, InitialOptimumProbability) {
    const auto inst = build_problem(8, std::nullopt, dist::ModularUniform{1, 16});
    const auto cidx = build_clusters(inst);
    const auto s = init_cluster(cidx);
    EXPECT_NEAR(cluster_output_distribution(s, cidx)[0], 2.0 / 256 - 1.0 / 65536, 1e-15);
}

TEST(ClusterGates, UnionRowPeak) {
    const auto inst =
        build_problem(8, std::nullopt, dist::Union{{dist::Range{1, 1}, dist::Range{242, 256}}});
    const auto cidx = build_clusters(inst);
    auto s = init_cluster(cidx);
    for (int i = 0; i < 8; ++i) {
        apply_g1_cluster(s, cidx);
        apply_g2_cluster(s, cidx);
    }
    EXPECT_NEAR(cluster_output_distribution(s, cidx)[cidx.optimum_cluster() - 1], 0.9919, 5e-4);
}

TEST(ClusterGates, NormConservation) {
    std::mt19937_64 rng(4);
    const auto inst = random_instance(256, rng);
    const auto cidx = build_clusters(inst);
    auto s = init_cluster(cidx);
    for (int i = 0; i < 10000; ++i) {
        apply_gate(s, cidx, (rng() & 1) ? Gate::G1 : Gate::G2);
        ASSERT_NEAR(norm_squared(s), 1.0, 1e-12) << i;
    }
}

TEST(ClusterCsv, Format) {
    const auto cidx = build_clusters(build_problem(3, std::nullopt, dist::Range{2, 3}));
    std::ostringstream os;
    write_cluster_csv(os, cidx);
    EXPECT_EQ(os.str(), "idx,size,f,v_min,v_max\n1,1,0,1,1\n2,1,1,2,2\n3,1,1,3,3\n4,5,0,4,8\n");
}

TEST(ExpandToDense, RespectsLimit) {
    const auto inst = build_problem(13, std::nullopt, dist::Range{1, 1});
    const auto cidx = build_clusters(inst);
    EXPECT_THROW(expand_to_dense(init_cluster(cidx), cidx), Error);
}

}  // namespace
}  // namespace qduel
