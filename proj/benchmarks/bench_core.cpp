/* Copyright 2026 The dimquot Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include <benchmark/benchmark.h>

#include <random>

#include "dimquot/groupring.hpp"
#include "dimquot/groups.hpp"
#include "dimquot/linalg.hpp"
#include "dimquot/magnus.hpp"
#include "dimquot/nil2.hpp"

using namespace dimquot;

static void BM_Hnf(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> dist(-50, 50);
    IntMatrix m(n + n / 2, n);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}
BENCHMARK(BM_Hnf)->Arg(8)->Arg(16)->Arg(32);

static void BM_Snf(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> dist(-20, 20);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(8)->Arg(16);

static void BM_AugPowers(benchmark::State& state) {
    const FiniteGroup g = build_family(state.range(0) == 0 ? "dihedral:32" : "cex:2,1,1").group;
    for (auto _ : state) benchmark::DoNotOptimize(aug_powers(g, 4));
}
BENCHMARK(BM_AugPowers)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_RelativeD3(benchmark::State& state) {
    const FamilyGroup c = build_family("cex:2,1,1");
    for (auto _ : state) benchmark::DoNotOptimize(relative_dimension_subgroup(c.group, *c.distinguished, 3));
}
BENCHMARK(BM_RelativeD3)->Unit(benchmark::kMillisecond);

static void BM_MagnusExpand(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const FreeWord w = random_word(3, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(magnus_expand(w, 5));
}
BENCHMARK(BM_MagnusExpand)->Arg(8)->Arg(32);

static void BM_Msq(benchmark::State& state) {
    const auto r = static_cast<unsigned>(state.range(0));
    const auto rels = parse_relators(r == 2 ? "[1,2]^2; [1,2,2]" : "[1,2]; [2,3]^2", r);
    for (auto _ : state) benchmark::DoNotOptimize(msq_equality(rels, r));
}
BENCHMARK(BM_Msq)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_DeltaMaps(benchmark::State& state) {
    const Class2Data d(build_family("heisenberg:2*cyclic:2").group);
    for (auto _ : state) benchmark::DoNotOptimize(delta_maps(d));
}
BENCHMARK(BM_DeltaMaps)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
