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

#include "qduel/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <variant>

namespace qduel {

GroverPlaneState GroverPlaneState::init(std::size_t N, std::size_t m) {
    if (N == 0 || m > N) throw Error("Grover plane requires 0 <= m <= N, N >= 1");
    GroverPlaneState s;
    s.N = N;
    s.m = m;
    s.theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(N)));
    s.sigma = s.theta;
    return s;
}

void GroverPlaneState::iterate(std::size_t r) {
    iterations += r;
    sigma = (2.0 * static_cast<double>(iterations) + 1.0) * theta;
}

double GroverPlaneState::success() const {
    const double s = std::sin(sigma);
    return s * s;
}

double grover_success(std::size_t N, std::size_t m, std::size_t r) {
    auto s = GroverPlaneState::init(N, m);
    s.iterate(r);
    return s.success();
}

std::size_t preferred_rotations(std::size_t N, std::size_t m) {
    if (m < 1 || m > N) throw Error("preferred_rotations requires 1 <= m <= N");
    if (4 * m > N) return 0;
    const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(N)));
    const double r = std::round((std::numbers::pi / (2.0 * theta) - 1.0) / 2.0);
    return r < 0.0 ? 0 : static_cast<std::size_t>(r);
}

Termination default_termination(std::size_t N) {
    Termination t;
    t.max_oracles = static_cast<std::size_t>(std::ceil(50.0 * std::sqrt(static_cast<double>(N))));
    t.stop_at_optimum = true;
    return t;
}

namespace {

// Elements laid out as [targets sorted by (v, index) | everything else] so
// that the target set {f = 1, v < bound} is always a prefix.
struct SolutionLadder {
    std::vector<Element> order;
    std::vector<double> sorted_values;  // v of the solutions, ascending

    explicit SolutionLadder(const ProblemInstance& inst) {
        const std::size_t N = inst.size();
        for (Element x = 1; x <= N; ++x) {
            if (inst.is_solution(x)) order.push_back(x);
        }
        std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
            return inst.value(a) < inst.value(b);
        });
        for (Element x : order) sorted_values.push_back(inst.value(x));
        for (Element x = 1; x <= N; ++x) {
            if (!inst.is_solution(x)) order.push_back(x);
        }
    }

    // Count of solutions with v strictly below `bound`.
    std::size_t targets_below(double bound) const {
        return static_cast<std::size_t>(
            std::lower_bound(sorted_values.begin(), sorted_values.end(), bound) -
            sorted_values.begin());
    }
};

// Measures after r Grover iterations on a target prefix of size m. Returns
// the sampled element and whether it was a target.
std::pair<Element, bool> measure_plane(const SolutionLadder& ladder, std::size_t N,
                                       std::size_t m, std::size_t r, Rng& rng) {
    const double p_hit = m == 0 ? 0.0 : grover_success(N, m, r);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool hit = m > 0 && unit(rng) < p_hit;
    if (hit) {
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        return {ladder.order[pick(rng)], true};
    }
    if (m == N) {  // p_hit is 1 up to rounding; fall back to a target
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        return {ladder.order[pick(rng)], true};
    }
    std::uniform_int_distribution<std::size_t> pick(m, N - 1);
    return {ladder.order[pick(rng)], false};
}

std::size_t bbht_impl(const SolutionLadder& ladder, std::size_t N, std::size_t M, Rng& rng,
                      std::size_t budget, double growth, std::optional<Element>& found) {
    const double cap = std::sqrt(static_cast<double>(N));
    double m = 1.0;
    std::size_t spent = 0;
    while (true) {
        std::uniform_int_distribution<std::size_t> pick_j(
            0, static_cast<std::size_t>(std::ceil(m)) - 1);
        const std::size_t j = pick_j(rng);
        if (spent + j > budget) return spent;
        spent += j;
        auto [x, hit] = measure_plane(ladder, N, M, j, rng);
        if (hit) {
            found = x;
            return spent;
        }
        m = std::min(growth * m, cap);
    }
}

}  // namespace

BbhtResult bbht_search(const ProblemInstance& inst, Rng& rng, std::size_t max_oracles,
                       double growth) {
    SolutionLadder ladder(inst);
    BbhtResult r;
    r.oracles = bbht_impl(ladder, inst.size(), inst.solution_count(), rng, max_oracles, growth,
                          r.found);
    return r;
}

GasTrace run_gas(const ProblemInstance& inst, double lambda, std::uint64_t seed,
                 const Termination& termination) {
    if (!termination.max_oracles) throw Error("GAS requires an oracle budget to terminate");
    if (!(lambda > 1.0)) throw Error("GAS growth factor lambda must exceed 1");
    const std::size_t budget = *termination.max_oracles;
    const std::size_t N = inst.size();
    const double optimal = inst.optimal_value();
    SolutionLadder ladder(inst);
    Rng rng(seed);

    GasTrace trace;
    GasRecord rec;
    rec.oracle_count =
        bbht_impl(ladder, N, inst.solution_count(), rng, budget, 6.0 / 5.0, rec.best);
    if (rec.best) rec.best_value = inst.value(*rec.best);
    trace.records.push_back(rec);

    double k = 1.0;
    std::size_t oracles = rec.oracle_count;
    std::optional<Element> best = rec.best;
    auto done = [&] {
        if (termination.stop_at_optimum && best && inst.value(*best) == optimal) return true;
        return oracles >= budget;
    };
    for (std::size_t it = 1; best && !done() && it <= termination.max_iterations; ++it) {
        std::uniform_int_distribution<std::size_t> pick_r(
            0, static_cast<std::size_t>(std::ceil(k - 1.0)));
        const std::size_t r = pick_r(rng);
        if (oracles + r > budget) break;
        oracles += r;
        const std::size_t m = ladder.targets_below(inst.value(*best));
        auto [x, hit] = measure_plane(ladder, N, m, r, rng);
        if (hit && inst.is_solution(x) && inst.value(x) < inst.value(*best)) {
            best = x;
            k = 1.0;
        } else {
            k *= lambda;
        }
        GasRecord g;
        g.iteration = it;
        g.rotations = r;
        g.oracle_count = oracles;
        g.best = best;
        g.best_value = inst.value(*best);
        g.k = k;
        trace.records.push_back(g);
    }
    trace.best = best;
    trace.oracles = oracles;
    trace.found_optimum = best && inst.value(*best) == optimal;
    return trace;
}

RotationDraw uniform_rotation_draw(double lambda) {
    if (!(lambda > 1.0)) throw Error("rotation growth lambda must exceed 1");
    return [lambda](std::size_t i, Rng& rng) {
        const auto r_max = static_cast<std::size_t>(std::ceil(std::pow(lambda, double(i))));
        std::uniform_int_distribution<std::size_t> pick(1, std::max<std::size_t>(r_max, 1));
        return pick(rng);
    };
}

RotationDraw fixed_rotation_draw(std::size_t r) {
    return [r](std::size_t, Rng&) { return r; };
}

std::size_t truncation_point(const std::vector<std::size_t>& alpha,
                             const std::vector<std::size_t>& beta, std::size_t r) {
    std::size_t sum = 0;
    std::size_t p = 0;
    const std::size_t len = std::min(alpha.size(), beta.size());
    while (p < len && sum + alpha[p] + beta[p] <= r) {
        sum += alpha[p] + beta[p];
        ++p;
    }
    return p;
}

namespace {

template <class E>
struct Runner {
    E engine;
    typename E::State state;
    std::size_t rounds = 0;
};

}  // namespace

struct DuelingHybrid::Impl {
    ProblemInstance inst;
    HybridConfig cfg;
    std::variant<std::monostate, Runner<DenseEngine>, Runner<ClusterEngine>> runner;
    std::vector<std::vector<double>> pdf;  // pdf[p]
    std::vector<std::vector<double>> cdf;
    std::vector<std::size_t> prefix_cost;  // prefix_cost[p] = sum_{j<=p} alpha_j + beta_j

    Impl(const ProblemInstance& i, HybridConfig c) : inst(i), cfg(std::move(c)) {}

    void extend_to(std::size_t p) {
        std::visit(
            [&](auto& run) {
                if constexpr (!std::is_same_v<std::decay_t<decltype(run)>, std::monostate>) {
                    while (pdf.size() <= p) {
                        if (!pdf.empty()) {
                            const std::size_t j = run.rounds;
                            for (std::size_t a = 0; a < cfg.alpha[j]; ++a) {
                                run.engine.apply(run.state, Gate::G1);
                            }
                            for (std::size_t b = 0; b < cfg.beta[j]; ++b) {
                                run.engine.apply(run.state, Gate::G2);
                            }
                            ++run.rounds;
                        }
                        auto P = run.engine.element_distribution(run.state);
                        std::vector<double> c(P.size());
                        std::partial_sum(P.begin(), P.end(), c.begin());
                        pdf.push_back(std::move(P));
                        cdf.push_back(std::move(c));
                    }
                }
            },
            runner);
    }
};

DuelingHybrid::DuelingHybrid(const ProblemInstance& inst, HybridConfig cfg)
    : impl_(std::make_unique<Impl>(inst, std::move(cfg))) {
    auto& c = impl_->cfg;
    if (c.alpha.size() != c.beta.size()) throw Error("alpha and beta must have equal length");
    if (!c.termination.max_oracles && c.termination.max_iterations == 0) {
        throw Error("hybrid dueling requires a bounded termination");
    }
    if (!c.draw_r) throw Error("hybrid dueling requires a rotation draw");
    impl_->prefix_cost.push_back(0);
    for (std::size_t j = 0; j < c.alpha.size(); ++j) {
        impl_->prefix_cost.push_back(impl_->prefix_cost.back() + c.alpha[j] + c.beta[j]);
    }
    const ProblemInstance& own = impl_->inst;
    if (resolve_engine(c.engine, own.size()) == EngineKind::Dense) {
        DenseEngine e(own);
        auto s = e.init();
        impl_->runner = Runner<DenseEngine>{e, std::move(s), 0};
    } else {
        ClusterEngine e(own);
        auto s = e.init();
        impl_->runner = Runner<ClusterEngine>{std::move(e), std::move(s), 0};
    }
}

DuelingHybrid::~DuelingHybrid() = default;
DuelingHybrid::DuelingHybrid(DuelingHybrid&&) noexcept = default;
DuelingHybrid& DuelingHybrid::operator=(DuelingHybrid&&) noexcept = default;

const std::vector<double>& DuelingHybrid::distribution(std::size_t p) {
    if (p > impl_->cfg.alpha.size()) throw Error("truncation beyond the parameter sequences");
    impl_->extend_to(p);
    return impl_->pdf[p];
}

HybridResult DuelingHybrid::run(std::uint64_t seed) {
    auto& im = *impl_;
    const auto& inst = im.inst;
    const auto& term = im.cfg.termination;
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    HybridResult res;
    for (std::size_t i = 1; i <= term.max_iterations; ++i) {
        const std::size_t r = im.cfg.draw_r(i, rng);
        const std::size_t p = truncation_point(im.cfg.alpha, im.cfg.beta, r);
        const std::size_t cost = im.prefix_cost[p];
        if (term.max_oracles && res.oracles + cost > *term.max_oracles) break;
        distribution(p);
        const auto& c = im.cdf[p];
        const double u = unit(rng) * c.back();
        auto it = std::upper_bound(c.begin(), c.end(), u);
        if (it == c.end()) --it;
        const Element b = static_cast<Element>(it - c.begin()) + 1;
        res.oracles += cost;
        if (inst.is_solution(b) && (!res.best || inst.value(b) < inst.value(*res.best))) {
            res.best = b;
        }
        res.records.push_back({i, r, p, b, res.oracles, res.best});
        if (term.stop_at_optimum && res.best && inst.value(*res.best) == inst.optimal_value()) {
            break;
        }
    }
    res.found_optimum = res.best && inst.value(*res.best) == inst.optimal_value();
    return res;
}

HybridResult run_dueling_hybrid(const ProblemInstance& inst, const HybridConfig& cfg,
                                std::uint64_t seed) {
    DuelingHybrid h(inst, cfg);
    return h.run(seed);
}

}  // namespace qduel
