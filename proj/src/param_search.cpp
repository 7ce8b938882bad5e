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

#include "qduel/param_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace qduel {

void SearchConfig::validate() const {
    if (depth < 1) throw Error("search depth must be >= 1");
    if (change_limit > depth - 1) throw Error("change_limit must be <= depth - 1");
    if (max_gates < 1) throw Error("max_gates must be >= 1");
}

std::string ops_to_string(const std::vector<Gate>& ops) {
    std::string s;
    s.reserve(ops.size());
    for (Gate g : ops) s.push_back(g == Gate::G1 ? '1' : '2');
    return s;
}

std::vector<Gate> ops_from_string(std::string_view s) {
    std::vector<Gate> ops;
    ops.reserve(s.size());
    for (char c : s) {
        if (c == '1') {
            ops.push_back(Gate::G1);
        } else if (c == '2') {
            ops.push_back(Gate::G2);
        } else {
            throw Error(std::string("invalid operator character '") + c + "'");
        }
    }
    return ops;
}

std::size_t transition_count(const std::vector<Gate>& s) {
    std::size_t c = 0;
    for (std::size_t i = 1; i < s.size(); ++i) c += s[i] != s[i - 1];
    return c;
}

namespace {

void enumerate_rec(std::size_t depth, std::size_t limit, std::vector<Gate>& cur,
                   std::size_t changes, std::vector<std::vector<Gate>>& out) {
    if (cur.size() == depth) {
        out.push_back(cur);
        return;
    }
    for (Gate g : {Gate::G1, Gate::G2}) {
        const std::size_t c = changes + (!cur.empty() && cur.back() != g);
        if (c > limit) continue;
        cur.push_back(g);
        enumerate_rec(depth, limit, cur, c, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<Gate>> enumerate_windows(std::size_t depth, std::size_t change_limit) {
    SearchConfig{depth, change_limit}.validate();
    std::vector<std::vector<Gate>> out;
    std::vector<Gate> cur;
    enumerate_rec(depth, change_limit, cur, 0, out);
    return out;
}

std::size_t window_count(std::size_t depth, std::size_t change_limit) {
    SearchConfig{depth, change_limit}.validate();
    // C(depth-1, j) computed incrementally.
    std::size_t total = 0;
    std::size_t c = 1;
    for (std::size_t j = 0; j <= change_limit; ++j) {
        total += c;
        c = c * (depth - 1 - j) / (j + 1);
    }
    return 2 * total;
}

namespace {

template <class E>
class WindowSearch {
   public:
    using State = typename E::State;

    struct Best {
        bool valid = false;
        double score = -std::numeric_limits<double>::infinity();
        std::vector<Gate> ops;
        std::vector<double> combined;
        std::vector<double> first;
        State state;
    };

    WindowSearch(const E& engine, const SearchConfig& cfg) : engine_(engine), cfg_(cfg) {
        std::vector<Gate> cur;
        split_ = choose_split();
        enumerate_prefixes(cur, 0);
    }

    Best evaluate(const State& start) const {
        const std::size_t tasks = prefixes_.size();
        std::vector<Best> results(tasks);
        unsigned threads = cfg_.threads ? cfg_.threads : std::thread::hardware_concurrency();
        threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks)));
        if (threads == 1) {
            for (std::size_t t = 0; t < tasks; ++t) results[t] = run_task(start, t);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t t = next++; t < tasks; t = next++) {
                        results[t] = run_task(start, t);
                    }
                });
            }
        }
        // Ordered reduction keeps the lexicographically first maximum.
        Best best;
        for (auto& r : results) {
            if (r.valid && (!best.valid || r.score > best.score)) best = std::move(r);
        }
        return best;
    }

   private:
    struct Node {
        State state;
        double combined = 0.0;
        double first = 0.0;
    };

    std::size_t choose_split() const {
        const std::size_t total = window_count(cfg_.depth, cfg_.change_limit);
        if (total < 64) return 0;
        return std::min<std::size_t>(cfg_.depth - 1, 4);
    }

    void enumerate_prefixes(std::vector<Gate>& cur, std::size_t changes) {
        if (cur.size() == split_) {
            prefixes_.push_back({cur, changes});
            return;
        }
        for (Gate g : {Gate::G1, Gate::G2}) {
            const std::size_t c = changes + (!cur.empty() && cur.back() != g);
            if (c > cfg_.change_limit) continue;
            cur.push_back(g);
            enumerate_prefixes(cur, c);
            cur.pop_back();
        }
    }

    double score(const Node& n) const {
        return cfg_.metric == ScoreMetric::Combined ? n.combined : n.first;
    }

    Best run_task(const State& start, std::size_t t) const {
        const auto& [prefix, changes] = prefixes_[t];
        std::vector<Node> path(cfg_.depth + 1);
        path[0].state = start;
        std::vector<Gate> ops;
        ops.reserve(cfg_.depth);
        for (std::size_t d = 0; d < prefix.size(); ++d) {
            step(path, d, prefix[d]);
            ops.push_back(prefix[d]);
        }
        Best best;
        dfs(path, ops, changes, best);
        return best;
    }

    void step(std::vector<Node>& path, std::size_t d, Gate g) const {
        Node& n = path[d + 1];
        n.state = path[d].state;
        engine_.apply(n.state, g);
        n.combined = engine_.combined(n.state);
        n.first = engine_.first(n.state);
    }

    void dfs(std::vector<Node>& path, std::vector<Gate>& ops, std::size_t changes,
             Best& best) const {
        const std::size_t d = ops.size();
        if (d == cfg_.depth) {
            const double s = score(path[d]);
            if (!best.valid || s > best.score) {
                best.valid = true;
                best.score = s;
                best.ops = ops;
                best.combined.resize(d);
                best.first.resize(d);
                for (std::size_t i = 0; i < d; ++i) {
                    best.combined[i] = path[i + 1].combined;
                    best.first[i] = path[i + 1].first;
                }
                best.state = path[d].state;
            }
            return;
        }
        for (Gate g : {Gate::G1, Gate::G2}) {
            const std::size_t c = changes + (d > 0 && ops.back() != g);
            if (c > cfg_.change_limit) continue;
            step(path, d, g);
            ops.push_back(g);
            dfs(path, ops, c, best);
            ops.pop_back();
        }
    }

    const E& engine_;
    const SearchConfig& cfg_;
    std::size_t split_ = 0;
    std::vector<std::pair<std::vector<Gate>, std::size_t>> prefixes_;
};

template <class E>
SearchResult search_with(const E& engine, const SearchConfig& cfg) {
    WindowSearch<E> search(engine, cfg);
    SearchResult res;
    auto state = engine.init();
    const auto t0 = std::chrono::steady_clock::now();
    while (res.trace.size() < cfg.max_gates) {
        if (cfg.time_limit > 0.0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
                cfg.time_limit) {
            res.timed_out = true;
            break;
        }
        auto best = search.evaluate(state);
        const std::size_t start = res.trace.size();
        for (std::size_t i = 0; i < best.ops.size(); ++i) {
            res.trace.append(best.ops[i], best.combined[i], best.first[i]);
        }
        state = std::move(best.state);
        ++res.windows_committed;
        const auto& series = cfg.metric == ScoreMetric::Combined ? res.trace.probs_combined
                                                                 : res.trace.probs_first;
        if (std::any_of(series.begin() + static_cast<std::ptrdiff_t>(start), series.end(),
                        [&](double p) { return p >= cfg.threshold; })) {
            res.reached = true;
            break;
        }
    }
    return res;
}

}  // namespace

SearchResult heuristic_search(const ProblemInstance& inst, const SearchConfig& cfg,
                              EngineKind engine) {
    cfg.validate();
    return with_engine(inst, engine, [&](const auto& e) { return search_with(e, cfg); });
}

GateTrace replay(const ProblemInstance& inst, const std::vector<Gate>& ops, EngineKind engine) {
    return with_engine(inst, engine, [&](const auto& e) {
        GateTrace trace;
        auto s = e.init();
        for (Gate g : ops) {
            e.apply(s, g);
            trace.append(g, e.combined(s), e.first(s));
        }
        return trace;
    });
}

std::optional<std::size_t> oracles_to_threshold(const GateTrace& trace, double threshold) {
    for (std::size_t i = 0; i < trace.probs_combined.size(); ++i) {
        if (trace.probs_combined[i] >= threshold) return trace.oracle_count(i);
    }
    return std::nullopt;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> run_length_encode(
    const std::vector<Gate>& ops) {
    if (ops.empty()) throw Error("cannot encode an empty operator sequence");
    std::vector<std::size_t> alpha, beta;
    if (ops.front() == Gate::G2) alpha.push_back(0);
    std::size_t i = 0;
    while (i < ops.size()) {
        std::size_t j = i;
        while (j < ops.size() && ops[j] == ops[i]) ++j;
        (ops[i] == Gate::G1 ? alpha : beta).push_back(j - i);
        i = j;
    }
    return {alpha, beta};
}

std::vector<Gate> run_length_decode(const std::vector<std::size_t>& alpha,
                                    const std::vector<std::size_t>& beta) {
    if (beta.size() != alpha.size() && beta.size() + 1 != alpha.size()) {
        throw Error("beta must have as many entries as alpha, or one fewer");
    }
    std::vector<Gate> ops;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        ops.insert(ops.end(), alpha[i], Gate::G1);
        if (i < beta.size()) ops.insert(ops.end(), beta[i], Gate::G2);
    }
    return ops;
}

void write_trace_csv(std::ostream& os, const GateTrace& trace) {
    const auto old = os.precision(17);
    os << "gate,oracle_count,op,P_combined_opt,P_first_opt\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        os << i + 1 << ',' << trace.oracle_count(i) << ','
           << (trace.ops[i] == Gate::G1 ? "G1" : "G2") << ',' << trace.probs_combined[i] << ','
           << trace.probs_first[i] << '\n';
    }
    os.precision(old);
}

GateTrace read_trace_csv(std::istream& is) {
    GateTrace trace;
    std::string line;
    if (!std::getline(is, line)) throw Error("empty trace CSV");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string gate, oracles, op, pc, pf;
        if (!std::getline(row, gate, ',') || !std::getline(row, oracles, ',') ||
            !std::getline(row, op, ',') || !std::getline(row, pc, ',') ||
            !std::getline(row, pf, ',')) {
            throw Error("malformed trace row: " + line);
        }
        if (op != "G1" && op != "G2") throw Error("unknown operator in trace: " + op);
        trace.append(op == "G1" ? Gate::G1 : Gate::G2, std::stod(pc), std::stod(pf));
    }
    return trace;
}

}  // namespace qduel
