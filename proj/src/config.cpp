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

#include "qduel/config.hpp"

#include <fstream>
#include <sstream>

namespace qduel {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t get_size(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw Error(std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

DistributionSpec distribution_from_json(const json& j, std::size_t N) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw Error("distribution must be an object with a string 'type'");
    }
    const auto type = j.at("type").get<std::string>();
    DistributionSpec spec;
    if (type == "modular_uniform") {
        if (j.contains("M")) {
            const std::size_t t = j.contains("t") ? get_size(j, "t") : 1;
            spec = modular_uniform(N, get_size(j, "M"), t);
        } else {
            spec = dist::ModularUniform{get_size(j, "t"), get_size(j, "s")};
        }
    } else if (type == "range") {
        spec = dist::Range{get_size(j, "lo"), get_size(j, "hi")};
    } else if (type == "perfect_squares") {
        spec = dist::PerfectSquares{};
    } else if (type == "explicit") {
        dist::ExplicitTable t;
        for (const auto& b : j.at("bits")) t.bits.push_back(b.get<int>() != 0);
        spec = std::move(t);
    } else if (type == "union") {
        dist::Union u;
        for (const auto& p : j.at("parts")) u.parts.push_back(distribution_from_json(p, N));
        spec = std::move(u);
    } else {
        throw Error("unknown distribution type '" + type + "'");
    }
    validate(spec, N);
    return spec;
}

json distribution_to_json(const DistributionSpec& spec) {
    return std::visit(
        overloaded{
            [](const dist::ModularUniform& d) -> json {
                return {{"type", "modular_uniform"}, {"t", d.t}, {"s", d.s}};
            },
            [](const dist::Range& d) -> json {
                return {{"type", "range"}, {"lo", d.lo}, {"hi", d.hi}};
            },
            [](const dist::PerfectSquares&) -> json { return {{"type", "perfect_squares"}}; },
            [](const dist::ExplicitTable& d) -> json {
                json bits = json::array();
                for (auto b : d.bits) bits.push_back(int{b});
                return {{"type", "explicit"}, {"bits", bits}};
            },
            [](const dist::Union& d) -> json {
                json parts = json::array();
                for (const auto& p : d.parts) parts.push_back(distribution_to_json(p));
                return {{"type", "union"}, {"parts", parts}};
            },
        },
        spec);
}

ProblemFile parse_problem(const json& j) {
    if (!j.is_object()) throw Error("problem file must be a JSON object");
    ProblemFile p;
    p.raw = j;
    const std::size_t n = get_size(j, "n");
    if (n < 1 || n > 40) throw Error("n must be in [1, 40]");
    p.n = static_cast<unsigned>(n);
    const std::size_t N = std::size_t{1} << n;

    if (j.contains("v")) {
        const auto& v = j.at("v");
        if (v.is_string()) {
            if (v.get<std::string>() != "identity") {
                throw Error("v must be \"identity\" or an array of numbers");
            }
        } else if (v.is_array()) {
            std::vector<double> vals;
            for (const auto& x : v) vals.push_back(x.get<double>());
            if (vals.size() != N) throw Error("v has " + std::to_string(vals.size()) +
                                              " entries, expected " + std::to_string(N));
            p.v = std::move(vals);
        } else {
            throw Error("v must be \"identity\" or an array of numbers");
        }
    }
    if (!j.contains("distribution")) throw Error("missing field 'distribution'");
    p.distribution = distribution_from_json(j.at("distribution"), N);

    p.alpha = get_opt<std::vector<std::size_t>>(j, "alpha");
    p.beta = get_opt<std::vector<std::size_t>>(j, "beta");
    p.ops = get_opt<std::string>(j, "ops");
    p.rounds = get_opt<std::size_t>(j, "rounds");
    p.depth = get_opt<std::size_t>(j, "depth");
    p.change_limit = get_opt<std::size_t>(j, "change_limit");
    if (p.alpha.has_value() != p.beta.has_value()) {
        throw Error("alpha and beta must be given together");
    }
    return p;
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open problem file " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw Error("problem file " + path.string() + ": " + e.what());
    }
    return parse_problem(j);
}

json problem_to_json(const ProblemFile& p) {
    json j;
    j["n"] = p.n;
    if (p.v) {
        j["v"] = *p.v;
    } else {
        j["v"] = "identity";
    }
    j["distribution"] = distribution_to_json(p.distribution);
    if (p.alpha) j["alpha"] = *p.alpha;
    if (p.beta) j["beta"] = *p.beta;
    if (p.ops) j["ops"] = *p.ops;
    if (p.rounds) j["rounds"] = *p.rounds;
    if (p.depth) j["depth"] = *p.depth;
    if (p.change_limit) j["change_limit"] = *p.change_limit;
    return j;
}

ProblemInstance ProblemFile::instance() const { return build_problem(n, v, distribution); }

std::uint64_t config_hash(const json& j) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

json metadata_json(const RunMetadata& m) {
    json j;
    j["command"] = m.command;
    j["config_hash"] = hex64(config_hash(m.config));
    j["config"] = m.config;
    j["versions"] = {{"qduel", kVersion},
                     {"compiler", __VERSION__},
                     {"cplusplus", static_cast<long>(__cplusplus)},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    j["wall_time_seconds"] = m.wall_seconds;
    for (auto it = m.extra.begin(); it != m.extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << contents;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qduel
