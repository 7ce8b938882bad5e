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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qduel/baselines.hpp"
#include "qduel/cluster_sim.hpp"
#include "qduel/config.hpp"
#include "qduel/experiments.hpp"
#include "qduel/param_search.hpp"

namespace py = pybind11;
using namespace qduel;

namespace {

py::dict peak_dict(const PeakRow& r) {
    py::dict d;
    d["distribution"] = r.label;
    d["M"] = r.M;
    d["valid"] = r.valid;
    d["P_max"] = r.P_max;
    d["p_max"] = r.p_max;
    d["P1_max"] = r.P1_max;
    d["p1_max"] = r.p1_max;
    return d;
}

py::list peak_list(const std::vector<PeakRow>& rows) {
    py::list out;
    for (const auto& r : rows) out.append(peak_dict(r));
    return out;
}

py::dict trace_dict(const GateTrace& t, double threshold) {
    py::dict d;
    d["ops"] = ops_to_string(t.ops);
    d["P_combined"] = t.probs_combined;
    d["P_first"] = t.probs_first;
    const auto T = oracles_to_threshold(t, threshold);
    d["T"] = T ? py::cast(*T) : py::none();
    return d;
}

ScoreMetric parse_metric(const std::string& s) {
    if (s == "combined") return ScoreMetric::Combined;
    if (s == "first") return ScoreMetric::FirstRegister;
    throw Error("metric must be 'combined' or 'first'");
}

}  // namespace

PYBIND11_MODULE(_qduel, m) {
    m.doc() = "Dueling search simulator core";
    m.attr("__version__") = kVersion;
    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def(py::init<std::vector<double>, std::vector<std::uint8_t>>(), py::arg("v"),
             py::arg("f"))
        .def_property_readonly("qubits", &ProblemInstance::qubits)
        .def_property_readonly("N", &ProblemInstance::size)
        .def_property_readonly("M", &ProblemInstance::solution_count)
        .def_property_readonly("optimal_value", &ProblemInstance::optimal_value)
        .def_property_readonly("optimum", [](const ProblemInstance& p) { return optimum(p); })
        .def_property_readonly("values",
                               [](const ProblemInstance& p) {
                                   return std::vector<double>(p.values().begin(), p.values().end());
                               })
        .def_property_readonly("solutions",
                               [](const ProblemInstance& p) {
                                   return std::vector<std::uint8_t>(p.solutions().begin(),
                                                                    p.solutions().end());
                               })
        .def("__repr__", [](const ProblemInstance& p) {
            return "ProblemInstance(N=" + std::to_string(p.size()) +
                   ", M=" + std::to_string(p.solution_count()) + ")";
        });

    m.def(
        "problem_from_json",
        [](const std::string& text) { return parse_problem(nlohmann::json::parse(text, nullptr, true, true)).instance(); },
        py::arg("text"), "Builds an instance from problem-file JSON text.");
    m.def("complexity_instance", &complexity_instance, py::arg("n"));
    m.def("uniform_solution_count", &uniform_solution_count, py::arg("N"));

    m.def(
        "run_rounds",
        [](const ProblemInstance& inst, const std::vector<std::size_t>& alpha,
           const std::vector<std::size_t>& beta, const std::string& engine, bool per_element) {
            const auto s = run_rounds(inst, alpha, beta, parse_engine(engine), per_element);
            py::dict d;
            d["oracle_count"] = s.oracle_count;
            d["P_combined"] = s.combined;
            d["P_first"] = s.first;
            if (per_element) d["P_elements"] = s.element_combined;
            return d;
        },
        py::arg("inst"), py::arg("alpha"), py::arg("beta"), py::arg("engine") = "auto",
        py::arg("per_element") = false);
    m.def(
        "table1", [](const std::string& engine) { return peak_list(run_table1(parse_engine(engine))); },
        py::arg("engine") = "auto");
    m.def(
        "m_sweep",
        [](std::size_t N, const std::vector<std::size_t>& Ms, const std::string& engine) {
            return peak_list(run_m_sweep(N, Ms, parse_engine(engine)));
        },
        py::arg("N"), py::arg("M"), py::arg("engine") = "auto");

    m.def(
        "heuristic_search",
        [](const ProblemInstance& inst, std::size_t depth, std::size_t change_limit, double threshold,
           std::size_t max_gates, const std::string& metric, unsigned threads, double time_limit,
           const std::string& engine) {
            SearchConfig cfg;
            cfg.depth = depth;
            cfg.change_limit = change_limit;
            cfg.threshold = threshold;
            cfg.max_gates = max_gates;
            cfg.metric = parse_metric(metric);
            cfg.threads = threads;
            cfg.time_limit = time_limit;
            SearchResult r;
            {
                py::gil_scoped_release release;
                r = heuristic_search(inst, cfg, parse_engine(engine));
            }
            auto d = trace_dict(r.trace, threshold);
            d["reached"] = r.reached;
            d["timed_out"] = r.timed_out;
            d["windows_committed"] = r.windows_committed;
            const auto [a, b] = run_length_encode(r.trace.ops);
            d["alpha"] = a;
            d["beta"] = b;
            return d;
        },
        py::arg("inst"), py::arg("depth"), py::arg("change_limit"), py::arg("threshold") = 0.4,
        py::arg("max_gates") = 4096, py::arg("metric") = "combined", py::arg("threads") = 0,
        py::arg("time_limit") = 0.0, py::arg("engine") = "auto");
    m.def(
        "replay",
        [](const ProblemInstance& inst, const std::string& ops, const std::string& engine,
           double threshold) { return trace_dict(replay(inst, ops_from_string(ops), parse_engine(engine)), threshold); },
        py::arg("inst"), py::arg("ops"), py::arg("engine") = "auto", py::arg("threshold") = 0.4);
    m.def(
        "run_length_encode", [](const std::string& ops) { return run_length_encode(ops_from_string(ops)); },
        py::arg("ops"));
    m.def(
        "run_length_decode",
        [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
            return ops_to_string(run_length_decode(a, b));
        },
        py::arg("alpha"), py::arg("beta"));

    m.def(
        "clusters",
        [](const ProblemInstance& inst) {
            py::list out;
            for (const auto& c : build_clusters(inst).clusters) {
                out.append(py::make_tuple(c.idx, c.size, c.f_value, c.v_min, c.v_max));
            }
            return out;
        },
        py::arg("inst"), "Rows (idx, size, f, v_min, v_max) in cluster order.");

    m.def("grover_success", &grover_success, py::arg("N"), py::arg("m"), py::arg("r"));
    m.def("preferred_rotations", &preferred_rotations, py::arg("N"), py::arg("m"));
    m.def(
        "run_gas",
        [](const ProblemInstance& inst, double lambda, std::uint64_t seed,
           std::optional<std::size_t> max_oracles) {
            auto term = default_termination(inst.size());
            if (max_oracles) term.max_oracles = max_oracles;
            const auto t = run_gas(inst, lambda, seed, term);
            py::dict d;
            d["oracles"] = t.oracles;
            d["found_optimum"] = t.found_optimum;
            d["best"] = t.best ? py::cast(*t.best) : py::none();
            d["iterations"] = t.records.size();
            return d;
        },
        py::arg("inst"), py::arg("lam") = kGasLambda, py::arg("seed") = 1,
        py::arg("max_oracles") = std::nullopt);

    m.def(
        "loglog_fit",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            if (x.size() != y.size()) throw Error("x and y lengths differ");
            std::vector<std::pair<double, double>> pts;
            for (std::size_t i = 0; i < x.size(); ++i) pts.emplace_back(x[i], y[i]);
            const auto f = loglog_fit(pts);
            py::dict d;
            d["slope"] = f.slope;
            d["intercept"] = f.intercept;
            d["slope_stderr"] = f.slope_stderr;
            d["intercept_stderr"] = f.intercept_stderr;
            d["r_squared"] = f.r_squared;
            d["points"] = f.points;
            return d;
        },
        py::arg("x"), py::arg("y"));
}
