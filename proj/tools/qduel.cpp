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

// Command-line driver. Every subcommand writes CSV files into --out and a
// JSON sidecar named after the command.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qduel/baselines.hpp"
#include "qduel/cluster_sim.hpp"
#include "qduel/config.hpp"
#include "qduel/experiments.hpp"
#include "qduel/param_search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qduel;

namespace {

struct Common {
    std::string config;
    std::string out = ".";
    std::string engine = "auto";
    std::uint64_t seed = 1;
    double threshold = 0.4;
};

void add_common(CLI::App* app, Common& c, bool config_required = false) {
    auto* opt = app->add_option("--config", c.config, "Problem definition file (JSON)");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    app->add_option("--out", c.out, "Output directory")->capture_default_str();
    app->add_option("--engine", c.engine, "auto, dense or cluster")
        ->check(CLI::IsMember({"auto", "dense", "cluster"}))
        ->capture_default_str();
    app->add_option("--seed", c.seed, "Seed for stochastic commands")->capture_default_str();
    app->add_option("--threshold", c.threshold, "Target combined success probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

template <class Fn>
std::string to_string_with(Fn&& fn) {
    std::ostringstream os;
    fn(os);
    return os.str();
}

class Run {
   public:
    Run(std::string command, const Common& c)
        : command_(std::move(command)), out_(c.out), t0_(std::chrono::steady_clock::now()) {
        config_["engine"] = c.engine;
        config_["seed"] = c.seed;
        config_["threshold"] = c.threshold;
        if (!c.config.empty()) {
            std::ifstream in(c.config);
            config_["problem"] = json::parse(in, nullptr, true, true);
        }
        fs::create_directories(out_);
    }

    json& config() { return config_; }
    json& extra() { return extra_; }

    fs::path write(const std::string& name, const std::string& contents) {
        const auto p = out_ / name;
        write_file_atomic(p, contents);
        files_.push_back(name);
        return p;
    }

    void finish() {
        RunMetadata m;
        m.command = command_;
        m.config = config_;
        m.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        m.extra = extra_;
        m.extra["outputs"] = files_;
        write_file_atomic(out_ / (command_ + ".json"), metadata_json(m).dump(2) + "\n");
        std::cerr << command_ << ": wrote " << files_.size() << " file(s) to " << out_.string()
                  << " in " << m.wall_seconds << " s\n";
    }

   private:
    std::string command_;
    fs::path out_;
    std::chrono::steady_clock::time_point t0_;
    json config_ = json::object();
    json extra_ = json::object();
    std::vector<std::string> files_;
};

json search_report(const ProblemInstance& inst, const SearchConfig& cfg, const SearchResult& r,
                   const std::string& trace_path) {
    json j;
    j["N"] = inst.size();
    j["M"] = inst.solution_count();
    j["depth"] = cfg.depth;
    j["change_limit"] = cfg.change_limit;
    const auto T = oracles_to_threshold(r.trace, cfg.threshold);
    j["T"] = T ? json(*T) : json(nullptr);
    j["ops_string"] = ops_to_string(r.trace.ops);
    if (!r.trace.ops.empty()) {
        auto [a, b] = run_length_encode(r.trace.ops);
        j["alpha"] = a;
        j["beta"] = b;
    } else {
        j["alpha"] = json::array();
        j["beta"] = json::array();
    }
    j["trace_csv_path"] = trace_path;
    j["reached"] = r.reached;
    j["timed_out"] = r.timed_out;
    return j;
}

std::vector<Gate> schedule_from(const ProblemFile& p, std::size_t default_rounds) {
    if (p.ops) return ops_from_string(*p.ops);
    if (p.alpha) return run_length_decode(*p.alpha, *p.beta);
    const std::vector<std::size_t> ones(p.rounds.value_or(default_rounds), 1);
    return run_length_decode(ones, ones);
}

// ---------------------------------------------------------------------------

int cmd_simulate(const Common& c, std::size_t rounds) {
    Run run("simulate", c);
    const auto pf = load_problem_file(c.config);
    const auto inst = pf.instance();
    const auto ops = schedule_from(pf, rounds);
    const auto trace = replay(inst, ops, parse_engine(c.engine));
    run.write("trace.csv", to_string_with([&](auto& os) { write_trace_csv(os, trace); }));
    const auto T = oracles_to_threshold(trace, c.threshold);
    const auto [p, P] = first_local_max(trace.probs_combined);
    run.extra()["N"] = inst.size();
    run.extra()["M"] = inst.solution_count();
    run.extra()["gates"] = trace.size();
    run.extra()["T"] = T ? json(*T) : json(nullptr);
    run.extra()["first_local_max"] = {{"gate", p}, {"P", P}};
    run.finish();
    return 0;
}

int cmd_table1(const Common& c, std::size_t rounds) {
    Run run("table1", c);
    run.config()["rounds"] = rounds;
    const auto rows = run_table1(parse_engine(c.engine), rounds);
    run.write("table1.csv", to_string_with([&](auto& os) { write_peaks_csv(os, rows); }));
    run.finish();
    return 0;
}

int cmd_msweep(const Common& c, std::size_t N, std::vector<std::size_t> Ms, std::size_t rounds) {
    Run run("msweep", c);
    if (Ms.empty()) {
        Ms.resize(N);
        std::iota(Ms.begin(), Ms.end(), std::size_t{1});
    }
    run.config()["N"] = N;
    run.config()["M"] = Ms;
    run.config()["rounds"] = rounds;
    const auto rows = run_m_sweep(N, Ms, parse_engine(c.engine), rounds);
    std::size_t skipped = 0;
    for (const auto& r : rows) {
        if (!r.valid) {
            ++skipped;
            std::cerr << "msweep: M = " << r.M << " has no even spread on N = " << N
                      << ", skipped\n";
        }
    }
    run.extra()["skipped"] = skipped;
    run.write("msweep.csv", to_string_with([&](auto& os) { write_peaks_csv(os, rows); }));
    run.finish();
    return 0;
}

int cmd_heuristic(const Common& c, SearchConfig cfg, std::vector<std::string> only,
                  unsigned n) {
    Run run("heuristic", c);
    cfg.threshold = c.threshold;
    cfg.validate();
    const EngineKind engine =
        c.engine == "auto" ? EngineKind::Cluster : parse_engine(c.engine);
    std::vector<HeuristicCase> cases;
    if (!c.config.empty()) {
        const auto pf = load_problem_file(c.config);
        n = pf.n;
        if (pf.depth) cfg.depth = *pf.depth;
        if (pf.change_limit) cfg.change_limit = *pf.change_limit;
        cfg.validate();
        cases.push_back({"config", pf.distribution});
    } else {
        for (auto& hc : heuristic_cases(std::size_t{1} << n)) {
            if (only.empty() || std::find(only.begin(), only.end(), hc.name) != only.end()) {
                cases.push_back(std::move(hc));
            }
        }
        if (cases.empty()) throw Error("no heuristic case matched --case");
    }
    run.config()["n"] = n;
    run.config()["depth"] = cfg.depth;
    run.config()["change_limit"] = cfg.change_limit;
    run.config()["max_gates"] = cfg.max_gates;
    json reports = json::array();
    for (const auto& hc : cases) {
        const auto inst = build_problem(n, std::nullopt, hc.spec);
        const auto res = heuristic_search(inst, cfg, engine);
        const std::string trace_name = "heuristic_" + hc.name + ".csv";
        const auto trace_path = run.write(
            trace_name, to_string_with([&](auto& os) { write_trace_csv(os, res.trace); }));
        auto rep = search_report(inst, cfg, res, trace_path.string());
        rep["case"] = hc.name;
        rep["distribution"] = describe(hc.spec);
        run.write("heuristic_" + hc.name + ".json", rep.dump(2) + "\n");
        reports.push_back(rep);
        std::cerr << "heuristic: " << hc.name << " T = " << rep["T"] << " after "
                  << res.trace.size() << " gates\n";
    }
    run.extra()["reports"] = reports;
    run.finish();
    return 0;
}

int cmd_complexity(const Common& c, unsigned n_min, unsigned n_max, double time_limit,
                   std::size_t max_gates, unsigned threads) {
    Run run("complexity", c);
    std::vector<ComplexityParams> params;
    for (const auto& p : table2_parameters()) {
        if (p.n >= n_min && p.n <= n_max) params.push_back(p);
    }
    if (params.empty()) throw Error("no complexity rows in the requested n range");
    ComplexityOptions opts;
    opts.threshold = c.threshold;
    opts.time_limit = time_limit;
    opts.max_gates = max_gates;
    opts.threads = threads;
    opts.engine = c.engine == "auto" ? EngineKind::Cluster : parse_engine(c.engine);
    run.config()["n_min"] = n_min;
    run.config()["n_max"] = n_max;
    run.config()["time_limit"] = time_limit;
    run.config()["max_gates"] = max_gates;

    const auto res = run_complexity(params, opts);
    json reports = json::array();
    for (const auto& pt : res.points) {
        const std::string name = "complexity_n" + std::to_string(pt.params.n);
        const auto trace_path = run.write(
            name + ".csv", to_string_with([&](auto& os) { write_trace_csv(os, pt.trace); }));
        SearchConfig cfg;
        cfg.depth = pt.params.depth;
        cfg.change_limit = pt.params.change_limit;
        cfg.threshold = c.threshold;
        SearchResult sr{pt.trace, pt.T.has_value(), pt.timed_out, 0};
        auto rep = search_report(complexity_instance(pt.params.n), cfg, sr, trace_path.string());
        run.write(name + ".json", rep.dump(2) + "\n");
        reports.push_back(rep);
        if (!pt.T) std::cerr << "complexity: n = " << pt.params.n << " produced no T\n";
    }
    run.write("complexity.csv", to_string_with([&](auto& os) { write_complexity_csv(os, res); }));
    if (res.fit) {
        run.write("fit.csv", to_string_with([&](auto& os) { write_fit_csv(os, *res.fit); }));
        std::cerr << "complexity: slope " << res.fit->slope << " +- " << res.fit->slope_stderr
                  << ", R^2 " << res.fit->r_squared << "\n";
    } else {
        std::cerr << "complexity: fewer than 4 points, no fit\n";
    }
    run.extra()["reports"] = reports;
    run.finish();
    return 0;
}

int cmd_fit(const Common& c, const std::string& input, const std::string& x_col,
            const std::string& y_col) {
    Run run("fit", c);
    std::ifstream in(input);
    if (!in) throw Error("cannot open " + input);
    run.config()["input"] = input;
    run.config()["x"] = x_col;
    run.config()["y"] = y_col;
    const auto pts = read_xy_csv(in, x_col, y_col);
    const auto fit = loglog_fit(pts);
    run.write("fit.csv", to_string_with([&](auto& os) { write_fit_csv(os, fit); }));
    std::cout.precision(6);
    std::cout << "slope " << fit.slope << " +- " << fit.slope_stderr << ", intercept "
              << fit.intercept << " +- " << fit.intercept_stderr << ", R^2 " << fit.r_squared
              << "\n";
    run.finish();
    return 0;
}

int cmd_compare(const Common& c, std::size_t seeds, double lambda, std::size_t rounds) {
    Run run("compare", c);
    const auto pf = load_problem_file(c.config);
    const auto inst = pf.instance();
    HybridConfig hc;
    const auto ops = schedule_from(pf, rounds);
    std::tie(hc.alpha, hc.beta) = run_length_encode(ops);
    if (hc.beta.size() < hc.alpha.size()) hc.beta.push_back(0);
    hc.draw_r = uniform_rotation_draw(lambda);
    hc.termination = default_termination(inst.size());
    hc.engine = parse_engine(c.engine);
    std::vector<std::uint64_t> seed_list(seeds);
    std::iota(seed_list.begin(), seed_list.end(), c.seed);
    run.config()["seeds"] = seeds;
    run.config()["lambda"] = lambda;
    const auto rows =
        run_oracle_comparison(inst, seed_list, hc, lambda, default_termination(inst.size()));
    run.write("comparison.csv", to_string_with([&](auto& os) { write_comparison_csv(os, rows); }));
    run.finish();
    return 0;
}

int cmd_clusters(const Common& c) {
    Run run("clusters", c);
    const auto inst = load_problem_file(c.config).instance();
    const auto cidx = build_clusters(inst);
    run.extra()["q"] = cidx.q();
    run.write("clusters.csv", to_string_with([&](auto& os) { write_cluster_csv(os, cidx); }));
    run.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum dueling simulator and experiment driver"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Common c;
    std::size_t rounds = kNaiveRounds;

    auto* sim = app.add_subcommand("simulate", "Run one instance under a fixed schedule");
    add_common(sim, c, true);
    sim->add_option("--rounds", rounds, "alpha = beta = 1 rounds when the file has no schedule")
        ->capture_default_str();

    auto* t1 = app.add_subcommand("table1", "Peak probabilities for the naive schedule on N = 256");
    add_common(t1, c);
    t1->add_option("--rounds", rounds)->capture_default_str();

    std::size_t sweep_N = 256;
    std::vector<std::size_t> sweep_M;
    auto* ms = app.add_subcommand("msweep", "Naive schedule over solution counts");
    add_common(ms, c);
    ms->add_option("--N", sweep_N, "Search space size")->capture_default_str();
    ms->add_option("--M", sweep_M, "Solution counts (default: 1..N)")->delimiter(',');
    ms->add_option("--rounds", rounds)->capture_default_str();

    SearchConfig hcfg;
    hcfg.depth = 18;
    hcfg.change_limit = 17;
    hcfg.max_gates = 120;
    std::vector<std::string> only;
    unsigned hn = 8;
    auto* he = app.add_subcommand("heuristic", "Window-greedy schedule search on the case set");
    add_common(he, c);
    he->add_option("--depth", hcfg.depth)->capture_default_str();
    he->add_option("--change-limit", hcfg.change_limit)->capture_default_str();
    he->add_option("--max-gates", hcfg.max_gates)->capture_default_str();
    he->add_option("--threads", hcfg.threads, "0 = hardware concurrency");
    he->add_option("--n", hn, "Qubits per register for the built-in cases")->capture_default_str();
    he->add_option("--case", only, "Restrict to named cases")->delimiter(',');
    bool first_metric = false;
    he->add_flag("--first-register", first_metric, "Score windows by register-1 probability");

    unsigned n_min = 5, n_max = 12, threads = 0;
    double time_limit = 0.0;
    std::size_t cmax = 4096;
    auto* cx = app.add_subcommand("complexity", "Oracles-to-threshold versus N, with fit");
    add_common(cx, c);
    cx->add_option("--n-min", n_min)->capture_default_str();
    cx->add_option("--n-max", n_max)->capture_default_str();
    cx->add_option("--time-limit", time_limit, "Seconds per N, 0 = none")->capture_default_str();
    cx->add_option("--max-gates", cmax)->capture_default_str();
    cx->add_option("--threads", threads, "0 = hardware concurrency");

    std::string fit_in, fit_x = "N", fit_y = "T";
    auto* fi = app.add_subcommand("fit", "Log-log least squares on two CSV columns");
    add_common(fi, c);
    fi->add_option("input", fit_in, "CSV file")->required()->check(CLI::ExistingFile);
    fi->add_option("--x", fit_x)->capture_default_str();
    fi->add_option("--y", fit_y)->capture_default_str();

    std::size_t seeds = 200;
    double lambda = kGasLambda;
    auto* co = app.add_subcommand("compare", "GAS versus the dueling hybrid, oracle counts");
    add_common(co, c, true);
    co->add_option("--seeds", seeds)->capture_default_str();
    co->add_option("--lambda", lambda)->capture_default_str();
    co->add_option("--rounds", rounds)->capture_default_str();

    auto* cl = app.add_subcommand("clusters", "Dump the cluster partition");
    add_common(cl, c, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return cmd_simulate(c, rounds);
        if (*t1) return cmd_table1(c, rounds);
        if (*ms) return cmd_msweep(c, sweep_N, sweep_M, rounds);
        if (*he) {
            if (first_metric) hcfg.metric = ScoreMetric::FirstRegister;
            return cmd_heuristic(c, hcfg, only, hn);
        }
        if (*cx) return cmd_complexity(c, n_min, n_max, time_limit, cmax, threads);
        if (*fi) return cmd_fit(c, fit_in, fit_x, fit_y);
        if (*co) return cmd_compare(c, seeds, lambda, rounds);
        if (*cl) return cmd_clusters(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
