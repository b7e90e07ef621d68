/*******************************************************************************
 * Copyright 2026 The tmkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/

#include <benchmark/benchmark.h>

#include <random>

#include "tmkit/truth_table_kernel.hpp"

using namespace tmkit::logic::kernel;

namespace {

// Valid argument over n variables: a chain v0 -> ... -> v{n-1} plus random
// noise premises, goal v0 -> v{n-1}. Validity forces a full scan.
CompiledArgument valid_chain(std::uint32_t n) {
    CompiledArgument a;
    a.variables = n;
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        a.premises.push_back({{i, false}, {i + 1, false}});
    std::mt19937 rng(n);
    std::uniform_int_distribution<std::uint32_t> var(0, n - 1);
    for (std::uint32_t i = 0; i < n; ++i)
        a.premises.push_back({{var(rng), true}, {var(rng), false}});
    a.goal = {{0, false}, {n - 1, false}};
    return a;
}

void BM_serial(benchmark::State &state) {
    CompiledArgument a = valid_chain(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(first_countermodel_serial(a));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * a.rows()));
}

void BM_parallel(benchmark::State &state) {
    CompiledArgument a = valid_chain(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(first_countermodel_parallel(a));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * a.rows()));
}

} // namespace

BENCHMARK(BM_serial)->DenseRange(10, 22, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_parallel)->DenseRange(10, 22, 4)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
