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

#include "qduel/dense_sim.hpp"

#include <algorithm>
#include <cmath>

namespace qduel {

namespace {

template <class T>
BasicDenseState<T> make_uniform(std::size_t N, std::size_t limit) {
    if (N > limit) {
        throw Error("dense engine refuses N = " + std::to_string(N) + " (limit " +
                    std::to_string(limit) + "); use the cluster engine");
    }
    BasicDenseState<T> s;
    s.N = N;
    s.amp.assign(N * N, T(1.0 / static_cast<double>(N)));
    return s;
}

void check_dims(std::size_t N, std::size_t vlen, std::size_t flen) {
    if (vlen != N || flen != N) throw Error("state dimension does not match instance");
}

// Column and row sums feed every amplitude of the reflection, so they are
// accumulated in extended precision and rounded once.
template <class T>
struct Wide {
    using type = long double;
};
template <class T>
struct Wide<std::complex<T>> {
    using type = std::complex<long double>;
};

// Row k is the first register. G1 mixes within each column l, conditioned on
// v(l); G2 mixes within each row k, conditioned on v(k).
template <class T>
void g1_kernel(BasicDenseState<T>& s, std::span<const double> v, std::span<const std::uint8_t> f) {
    const std::size_t N = s.N;
    check_dims(N, v.size(), f.size());
    using W = typename Wide<T>::type;
    const long double scale = 2.0L / static_cast<long double>(N);
    std::vector<W> h(N, W(0));
    // Flip signs in place; row-major sweeps keep memory access contiguous.
    for (std::size_t k = 0; k < N; ++k) {
        T* row = &s.amp[k * N];
        if (f[k]) {
            const double vk = v[k];
            for (std::size_t l = 0; l < N; ++l) {
                if (vk < v[l]) row[l] = -row[l];
                h[l] += W(row[l]);
            }
        } else {
            for (std::size_t l = 0; l < N; ++l) h[l] += W(row[l]);
        }
    }
    std::vector<T> hs(N);
    for (std::size_t l = 0; l < N; ++l) hs[l] = T(h[l] * scale);
    for (std::size_t k = 0; k < N; ++k) {
        T* row = &s.amp[k * N];
        for (std::size_t l = 0; l < N; ++l) row[l] = hs[l] - row[l];
    }
    ++s.oracle_count;
}

template <class T>
void g2_kernel(BasicDenseState<T>& s, std::span<const double> v, std::span<const std::uint8_t> f) {
    const std::size_t N = s.N;
    check_dims(N, v.size(), f.size());
    using W = typename Wide<T>::type;
    const long double scale = 2.0L / static_cast<long double>(N);
    for (std::size_t k = 0; k < N; ++k) {
        T* row = &s.amp[k * N];
        const double vk = v[k];
        W acc = W(0);
        for (std::size_t l = 0; l < N; ++l) {
            if (f[l] && v[l] < vk) row[l] = -row[l];
            acc += W(row[l]);
        }
        const T h = T(acc * scale);
        for (std::size_t l = 0; l < N; ++l) row[l] = h - row[l];
    }
    ++s.oracle_count;
}

}  // namespace

DenseState init_dense(const ProblemInstance& inst, std::size_t limit) {
    return make_uniform<double>(inst.size(), limit);
}

ComplexDenseState init_dense_complex(const ProblemInstance& inst, std::size_t limit) {
    return make_uniform<std::complex<double>>(inst.size(), limit);
}

void apply_g1_dense(DenseState& state, const ProblemInstance& inst) {
    g1_kernel(state, inst.values(), inst.solutions());
}
void apply_g2_dense(DenseState& state, const ProblemInstance& inst) {
    g2_kernel(state, inst.values(), inst.solutions());
}
void apply_g1_dense(DenseState& state, std::span<const double> v, std::span<const std::uint8_t> f) {
    g1_kernel(state, v, f);
}
void apply_g2_dense(DenseState& state, std::span<const double> v, std::span<const std::uint8_t> f) {
    g2_kernel(state, v, f);
}
void apply_g1_dense(ComplexDenseState& state, const ProblemInstance& inst) {
    g1_kernel(state, inst.values(), inst.solutions());
}
void apply_g2_dense(ComplexDenseState& state, const ProblemInstance& inst) {
    g2_kernel(state, inst.values(), inst.solutions());
}

double norm_squared(const DenseState& state) {
    // Extended accumulator: a plain double sum over N^2 squares loses ~1e-12.
    long double acc = 0.0L;
    for (double a : state.amp) acc += static_cast<long double>(a) * a;
    return static_cast<double>(acc);
}

double norm_squared(const ComplexDenseState& state) {
    long double acc = 0.0L;
    for (const auto& a : state.amp) acc += static_cast<long double>(std::norm(a));
    return static_cast<double>(acc);
}

double max_imag(const ComplexDenseState& state) {
    double m = 0.0;
    for (const auto& a : state.amp) m = std::max(m, std::abs(a.imag()));
    return m;
}

std::vector<double> output_distribution(const DenseState& state, const ProblemInstance& inst) {
    const std::size_t N = state.N;
    check_dims(N, inst.size(), inst.size());
    std::vector<double> P(N, 0.0);
    for (Element k = 1; k <= N; ++k) {
        for (Element l = 1; l <= N; ++l) {
            const double a = state.at(k, l);
            P[better(k, l, inst) - 1] += a * a;
        }
    }
    return P;
}

std::vector<double> first_register_distribution(const DenseState& state) {
    const std::size_t N = state.N;
    std::vector<double> P(N, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        const double* row = &state.amp[k * N];
        double acc = 0.0;
        for (std::size_t l = 0; l < N; ++l) acc += row[l] * row[l];
        P[k] = acc;
    }
    return P;
}

namespace {

std::vector<std::size_t> optimal_set(const ProblemInstance& inst) {
    std::vector<std::size_t> out;
    const auto f = inst.solutions();
    const auto v = inst.values();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] && v[i] == inst.optimal_value()) out.push_back(i);
    }
    return out;
}

}  // namespace

double combined_success(const DenseState& state, const ProblemInstance& inst) {
    // An optimal element wins against everything; between two optimal
    // elements the kept one is still optimal. So the success event is
    // "k optimal or l optimal".
    const std::size_t N = state.N;
    check_dims(N, inst.size(), inst.size());
    const auto opt = optimal_set(inst);
    std::vector<std::uint8_t> is_opt(N, 0);
    for (auto i : opt) is_opt[i] = 1;
    double acc = 0.0;
    for (auto k : opt) {
        const double* row = &state.amp[k * N];
        for (std::size_t l = 0; l < N; ++l) acc += row[l] * row[l];
    }
    for (std::size_t k = 0; k < N; ++k) {
        if (is_opt[k]) continue;
        for (auto l : opt) {
            const double a = state.amp[k * N + l];
            acc += a * a;
        }
    }
    return acc;
}

double first_register_success(const DenseState& state, const ProblemInstance& inst) {
    const std::size_t N = state.N;
    check_dims(N, inst.size(), inst.size());
    double acc = 0.0;
    for (auto k : optimal_set(inst)) {
        const double* row = &state.amp[k * N];
        for (std::size_t l = 0; l < N; ++l) acc += row[l] * row[l];
    }
    return acc;
}

std::pair<std::size_t, double> first_local_max(std::span<const double> series) {
    if (series.empty()) throw Error("first_local_max of an empty series");
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        if (series[i] >= series[i + 1]) return {i + 1, series[i]};
    }
    return {series.size(), series.back()};
}

}  // namespace qduel
