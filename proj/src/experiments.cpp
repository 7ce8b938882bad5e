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

#include "qduel/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace qduel {

FitResult loglog_fit(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    if (n < 3) throw Error("log-log fit needs at least 3 points");
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, y] = points[i];
        if (!(x > 0.0) || !(y > 0.0)) throw Error("log-log fit needs positive coordinates");
        xs[i] = std::log2(x);
        ys[i] = std::log2(y);
    }
    const double nd = static_cast<double>(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= nd;
    my /= nd;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw Error("log-log fit needs at least two distinct x values");

    FitResult fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    const double s2 = ss_res / (nd - 2.0);
    fit.slope_stderr = std::sqrt(s2 / sxx);
    fit.intercept_stderr = std::sqrt(s2 * (1.0 / nd + mx * mx / sxx));
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

std::vector<NamedDistribution> table1_distributions(std::size_t N) {
    const std::size_t M = uniform_solution_count(N);
    const std::size_t s = (N + M - 1) / M;
    const std::size_t half = std::max<std::size_t>(1, s / 2);
    std::vector<NamedDistribution> out;
    auto add = [&](DistributionSpec d) {
        std::string label = describe(d);
        out.push_back({std::move(label), std::move(d)});
    };
    add(dist::ModularUniform{1, s});
    add(dist::ModularUniform{half, s});
    add(dist::ModularUniform{s, s});
    add(dist::Range{1, M});
    add(dist::Range{N - M + 1, N});
    add(dist::Union{{dist::Range{1, 1}, dist::Range{N - M + 2, N}}});
    return out;
}

RoundSeries run_rounds(const ProblemInstance& inst, const std::vector<std::size_t>& alpha,
                       const std::vector<std::size_t>& beta, EngineKind engine,
                       bool per_element) {
    if (alpha.size() != beta.size()) throw Error("alpha and beta must have equal length");
    return with_engine(inst, engine, [&](const auto& e) {
        RoundSeries out;
        auto s = e.init();
        std::size_t oracles = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            for (std::size_t a = 0; a < alpha[i]; ++a) e.apply(s, Gate::G1);
            for (std::size_t b = 0; b < beta[i]; ++b) e.apply(s, Gate::G2);
            oracles += alpha[i] + beta[i];
            out.oracle_count.push_back(oracles);
            out.combined.push_back(e.combined(s));
            out.first.push_back(e.first(s));
            if (per_element) out.element_combined.push_back(e.element_distribution(s));
        }
        return out;
    });
}

PeakRow naive_peaks(const ProblemInstance& inst, std::string label, std::size_t rounds,
                    EngineKind engine) {
    const std::vector<std::size_t> ones(rounds, 1);
    const auto series = run_rounds(inst, ones, ones, engine);
    PeakRow row;
    row.label = std::move(label);
    row.M = inst.solution_count();
    std::tie(row.p_max, row.P_max) = first_local_max(series.combined);
    std::tie(row.p1_max, row.P1_max) = first_local_max(series.first);
    return row;
}

std::vector<PeakRow> run_table1(EngineKind engine, std::size_t rounds) {
    std::vector<PeakRow> rows;
    for (const auto& d : table1_distributions(256)) {
        rows.push_back(naive_peaks(build_problem(8, std::nullopt, d.spec), d.label, rounds, engine));
    }
    return rows;
}

std::vector<PeakRow> run_m_sweep(std::size_t N, const std::vector<std::size_t>& M_list,
                                 EngineKind engine, std::size_t rounds) {
    if (N < 2 || (N & (N - 1)) != 0) throw Error("M sweep needs N = 2^n");
    const auto n = static_cast<unsigned>(std::countr_zero(N));
    std::vector<PeakRow> rows;
    for (std::size_t M : M_list) {
        if (!uniform_count_valid(N, M)) {
            PeakRow bad;
            bad.label = "invalid";
            bad.M = M;
            bad.valid = false;
            rows.push_back(bad);
            continue;
        }
        const auto d = modular_uniform(N, M, 1);
        rows.push_back(naive_peaks(build_problem(n, std::nullopt, d), describe(d), rounds, engine));
    }
    return rows;
}

std::vector<HeuristicCase> heuristic_cases(std::size_t N) {
    std::vector<HeuristicCase> out;
    const std::size_t M = uniform_solution_count(N);
    const std::size_t s = (N + M - 1) / M;
    out.push_back({"shift_t1", dist::ModularUniform{1, s}});
    out.push_back({"shift_t" + std::to_string(std::max<std::size_t>(1, s / 2)),
                   dist::ModularUniform{std::max<std::size_t>(1, s / 2), s}});
    out.push_back({"shift_t0", dist::ModularUniform{s, s}});
    for (std::size_t m : {std::size_t{4}, std::size_t{16}, std::size_t{32}, std::size_t{86},
                          N}) {
        if (m > N || !uniform_count_valid(N, m)) continue;
        out.push_back({"spread_M" + std::to_string(m), modular_uniform(N, m, 1)});
    }
    out.push_back({"squares", dist::PerfectSquares{}});
    out.push_back({"low_block", dist::Range{1, M}});
    out.push_back({"high_block", dist::Range{N - M + 1, N}});
    return out;
}

std::vector<HeuristicOutcome> run_heuristic_figures(const std::vector<HeuristicCase>& cases,
                                                    unsigned n, const SearchConfig& cfg,
                                                    EngineKind engine) {
    std::vector<HeuristicOutcome> out;
    for (const auto& c : cases) {
        const auto inst = build_problem(n, std::nullopt, c.spec);
        out.push_back({c, heuristic_search(inst, cfg, engine)});
    }
    return out;
}

const std::vector<ComplexityParams>& table2_parameters() {
    static const std::vector<ComplexityParams> rows = {
        {5, 6, 6, 3, 3},        {6, 8, 8, 4, 5},        {7, 12, 12, 3, 9},
        {8, 16, 10, 8, 10},     {9, 23, 14, 10, 14},    {10, 32, 17, 14, 19},
        {11, 46, 13, 10, 27},   {12, 64, 8, 4, 44},     {13, 91, 9, 4, 66},
        {14, 128, 11, 4, 104},  {15, 182, 12, 4, 131},  {16, 256, 14, 4, 187},
    };
    return rows;
}

ProblemInstance complexity_instance(unsigned n) {
    const std::size_t N = std::size_t{1} << n;
    return build_problem(n, std::nullopt, modular_uniform(N, uniform_solution_count(N), 1));
}

ComplexityResult run_complexity(const std::vector<ComplexityParams>& params,
                                const ComplexityOptions& opts) {
    ComplexityResult res;
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : params) {
        const auto inst = complexity_instance(p.n);
        SearchConfig cfg;
        cfg.depth = p.depth;
        cfg.change_limit = p.change_limit;
        cfg.threshold = opts.threshold;
        cfg.max_gates = opts.max_gates;
        cfg.time_limit = opts.time_limit;
        cfg.threads = opts.threads;
        const auto t0 = std::chrono::steady_clock::now();
        auto sr = heuristic_search(inst, cfg, opts.engine);
        ComplexityPoint pt;
        pt.params = p;
        pt.params.M = inst.solution_count();
        pt.N = inst.size();
        pt.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        pt.timed_out = sr.timed_out;
        pt.T = oracles_to_threshold(sr.trace, opts.threshold);
        pt.trace = std::move(sr.trace);
        if (pt.T) pts.emplace_back(static_cast<double>(pt.N), static_cast<double>(*pt.T));
        res.points.push_back(std::move(pt));
    }
    if (pts.size() >= 4) res.fit = loglog_fit(pts);
    return res;
}

std::vector<ComparisonRow> run_oracle_comparison(const ProblemInstance& inst,
                                                 const std::vector<std::uint64_t>& seeds,
                                                 const HybridConfig& hybrid, double gas_lambda,
                                                 const Termination& gas_termination) {
    std::vector<ComparisonRow> rows;
    DuelingHybrid duel(inst, hybrid);
    for (auto seed : seeds) {
        const auto g = run_gas(inst, gas_lambda, seed, gas_termination);
        rows.push_back({"gas", inst.size(), inst.solution_count(), seed, g.oracles,
                        g.found_optimum});
        const auto h = duel.run(seed);
        rows.push_back({"dueling_hybrid", inst.size(), inst.solution_count(), seed, h.oracles,
                        h.found_optimum});
    }
    return rows;
}

namespace {

struct PrecisionGuard {
    std::ostream& os;
    std::streamsize old;
    explicit PrecisionGuard(std::ostream& o) : os(o), old(o.precision(17)) {}
    ~PrecisionGuard() { os.precision(old); }
};

}  // namespace

void write_rounds_csv(std::ostream& os, const RoundSeries& series) {
    PrecisionGuard g(os);
    os << "iteration,oracle_count,P_combined_opt,P_first_opt";
    const std::size_t width =
        series.element_combined.empty() ? 0 : series.element_combined.front().size();
    for (std::size_t x = 1; x <= width; ++x) os << ",P_" << x;
    os << '\n';
    for (std::size_t i = 0; i < series.combined.size(); ++i) {
        os << i + 1 << ',' << series.oracle_count[i] << ',' << series.combined[i] << ','
           << series.first[i];
        if (width) {
            for (double p : series.element_combined[i]) os << ',' << p;
        }
        os << '\n';
    }
}

void write_peaks_csv(std::ostream& os, const std::vector<PeakRow>& rows) {
    PrecisionGuard g(os);
    os << "distribution,M,valid,P_max,p_max,P1_max,p1_max\n";
    for (const auto& r : rows) {
        os << '"' << r.label << "\"," << r.M << ',' << (r.valid ? 1 : 0) << ',';
        if (r.valid) {
            os << r.P_max << ',' << r.p_max << ',' << r.P1_max << ',' << r.p1_max << '\n';
        } else {
            os << ",,,\n";
        }
    }
}

void write_complexity_csv(std::ostream& os, const ComplexityResult& res) {
    PrecisionGuard g(os);
    os << "n,N,M,depth,change_limit,T,published_T,timed_out,seconds\n";
    for (const auto& p : res.points) {
        os << p.params.n << ',' << p.N << ',' << p.params.M << ',' << p.params.depth << ','
           << p.params.change_limit << ',';
        if (p.T) os << *p.T;
        os << ',' << p.params.published_T << ',' << (p.timed_out ? 1 : 0) << ',' << p.seconds
           << '\n';
    }
}

void write_fit_csv(std::ostream& os, const FitResult& fit) {
    PrecisionGuard g(os);
    os << "slope,intercept,slope_stderr,intercept_stderr,r_squared,points\n";
    os << fit.slope << ',' << fit.intercept << ',' << fit.slope_stderr << ','
       << fit.intercept_stderr << ',' << fit.r_squared << ',' << fit.points << '\n';
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
    os << "algorithm,N,M,seed,oracles,found_optimum\n";
    for (const auto& r : rows) {
        os << r.algorithm << ',' << r.N << ',' << r.M << ',' << r.seed << ',' << r.oracles << ','
           << (r.found_optimum ? 1 : 0) << '\n';
    }
}

std::vector<std::pair<double, double>> read_xy_csv(std::istream& is, const std::string& x_col,
                                                   const std::string& y_col) {
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
            cells.push_back(cell);
        }
        return cells;
    };
    std::string line;
    if (!std::getline(is, line)) throw Error("empty CSV");
    const auto header = split(line);
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw Error("CSV has no column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t xi = col(x_col), yi = col(y_col);
    std::vector<std::pair<double, double>> pts;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() <= std::max(xi, yi)) throw Error("short CSV row: " + line);
        if (cells[xi].empty() || cells[yi].empty()) continue;  // missing point
        pts.emplace_back(std::stod(cells[xi]), std::stod(cells[yi]));
    }
    return pts;
}

}  // namespace qduel
