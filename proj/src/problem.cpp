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

#include "qduel/problem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qduel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t isqrt(std::size_t x) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

}  // namespace

void validate(const DistributionSpec& spec, std::size_t N) {
    std::visit(overloaded{
                   [N](const dist::ModularUniform& d) {
                       if (d.t < 1 || d.t > d.s || d.s > N) {
                           throw Error("ModularUniform requires 1 <= t <= s <= N");
                       }
                   },
                   [N](const dist::Range& d) {
                       if (d.lo < 1 || d.lo > d.hi || d.hi > N) {
                           throw Error("Range requires 1 <= lo <= hi <= N");
                       }
                   },
                   [](const dist::PerfectSquares&) {},
                   [N](const dist::ExplicitTable& d) {
                       if (d.bits.size() != N) {
                           throw Error("ExplicitTable length " + std::to_string(d.bits.size()) +
                                       " does not match N = " + std::to_string(N));
                       }
                   },
                   [N](const dist::Union& d) {
                       if (d.parts.empty()) throw Error("Union requires at least one part");
                       for (const auto& p : d.parts) validate(p, N);
                   },
               },
               spec);
}

std::vector<std::uint8_t> materialize(const DistributionSpec& spec, std::size_t N) {
    validate(spec, N);
    std::vector<std::uint8_t> f(N, 0);
    std::visit(overloaded{
                   [&](const dist::ModularUniform& d) {
                       for (std::size_t x = 1; x <= N; ++x) f[x - 1] = (x % d.s) == (d.t % d.s);
                   },
                   [&](const dist::Range& d) {
                       for (std::size_t x = d.lo; x <= d.hi; ++x) f[x - 1] = 1;
                   },
                   [&](const dist::PerfectSquares&) {
                       for (std::size_t y = 1; y * y <= N; ++y) f[y * y - 1] = 1;
                   },
                   [&](const dist::ExplicitTable& d) {
                       for (std::size_t i = 0; i < N; ++i) f[i] = d.bits[i] != 0;
                   },
                   [&](const dist::Union& d) {
                       for (const auto& p : d.parts) {
                           auto g = materialize(p, N);
                           for (std::size_t i = 0; i < N; ++i) f[i] |= g[i];
                       }
                   },
               },
               spec);
    return f;
}

std::string describe(const DistributionSpec& spec) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const dist::ModularUniform& d) {
                       os << "[x = " << (d.t % d.s) << " (mod " << d.s << ")]";
                   },
                   [&](const dist::Range& d) { os << "[" << d.lo << " <= x <= " << d.hi << "]"; },
                   [&](const dist::PerfectSquares&) { os << "[x is a square]"; },
                   [&](const dist::ExplicitTable& d) {
                       os << "[explicit, " << std::count(d.bits.begin(), d.bits.end(), 1)
                          << " ones]";
                   },
                   [&](const dist::Union& d) {
                       for (std::size_t i = 0; i < d.parts.size(); ++i) {
                           if (i) os << " or ";
                           os << describe(d.parts[i]);
                       }
                   },
               },
               spec);
    return os.str();
}

ProblemInstance::ProblemInstance(std::vector<double> v, std::vector<std::uint8_t> f)
    : v_(std::move(v)), f_(std::move(f)) {
    if (v_.size() != f_.size()) throw Error("v and f tables differ in length");
    if (v_.size() < 2 || !std::has_single_bit(v_.size())) {
        throw Error("search space size must be 2^n with n >= 1, got " + std::to_string(v_.size()));
    }
    qubits_ = static_cast<unsigned>(std::countr_zero(v_.size()));
    optimal_value_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (f_[i] > 1) f_[i] = 1;
        if (f_[i]) {
            ++solution_count_;
            optimal_value_ = std::min(optimal_value_, v_[i]);
        }
    }
    if (solution_count_ == 0) throw Error("distribution has no solutions (M = 0)");
}

ProblemInstance build_problem(unsigned n, const MeasureSpec& v_spec, const DistributionSpec& dist) {
    if (n < 1 || n > 40) throw Error("qubit count must be in [1, 40]");
    const std::size_t N = std::size_t{1} << n;
    std::vector<double> v;
    if (v_spec) {
        if (v_spec->size() != N) throw Error("measure table length does not match N");
        v = *v_spec;
    } else {
        v.resize(N);
        std::iota(v.begin(), v.end(), 1.0);
    }
    return ProblemInstance(std::move(v), materialize(dist, N));
}

std::size_t uniform_solution_count(std::size_t N) {
    const std::size_t r = isqrt(N);
    return r * r == N ? r : r + 1;
}

bool uniform_count_valid(std::size_t N, std::size_t M) {
    if (M < 1 || M > N) return false;
    if (M == 1) return true;
    const std::size_t s = (N + M - 1) / M;
    return s * (M - 1) < N;
}

DistributionSpec modular_uniform(std::size_t N, std::size_t M, std::size_t t) {
    if (!uniform_count_valid(N, M)) {
        throw Error("no integer stride spreads M = " + std::to_string(M) +
                    " solutions evenly over N = " + std::to_string(N));
    }
    const std::size_t s = (N + M - 1) / M;
    if (t < 1 || t > s) throw Error("offset t must lie in [1, s]");
    const std::size_t count = (N - t) / s + 1;
    if (count != M) {
        throw Error("offset t = " + std::to_string(t) + " yields " + std::to_string(count) +
                    " solutions instead of " + std::to_string(M));
    }
    return dist::ModularUniform{t, s};
}

Element optimum(const ProblemInstance& inst) {
    const auto f = inst.solutions();
    const auto v = inst.values();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] && v[i] == inst.optimal_value()) return i + 1;
    }
    throw Error("instance has no solution");  // unreachable: constructor rejects M = 0
}

}  // namespace qduel
