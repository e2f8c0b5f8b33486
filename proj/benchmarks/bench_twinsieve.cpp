// Copyright 2026 The twinsieve Authors
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

#include <benchmark/benchmark.h>

#include <cmath>

#include "twinsieve/ntheory.hpp"
#include "twinsieve/pipeline.hpp"
#include "twinsieve/sieve_lab.hpp"
#include "twinsieve/tuples.hpp"
#include "twinsieve/variational/quadrature.hpp"
#include "twinsieve/variational/schedule.hpp"
#include "twinsieve/variational/tail_integral.hpp"
#include "twinsieve/variational/weights.hpp"

namespace nt = twinsieve::ntheory;
namespace tp = twinsieve::tuples;
namespace v = twinsieve::variational;
namespace sv = twinsieve::sieve;
namespace pl = twinsieve::pipeline;

namespace {

void BM_SievePrimes(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nt::sieve_primes(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->Arg(1 << 20)->Arg(1 << 24);

void BM_Factorize(benchmark::State& state) {
  const auto table = nt::sieve_primes(100'000);
  std::uint64_t n = 9'000'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(nt::factorize(n++, table));
}
BENCHMARK(BM_Factorize);

void BM_ProgressionFactorizer(benchmark::State& state) {
  const auto table = nt::sieve_primes(100'000);
  nt::ProgressionFactorizer pf(table);
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    pf.factor(9'000'000'001, 30, count);
    benchmark::DoNotOptimize(pf.cofactor(0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProgressionFactorizer)->Arg(4096)->Arg(65536);

void BM_BuildTwinTuple(benchmark::State& state) {
  const auto k0 = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tp::build_twin_tuple(k0));
}
BENCHMARK(BM_BuildTwinTuple)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SimplexMc(benchmark::State& state) {
  const auto dim = static_cast<unsigned>(state.range(0));
  v::McOptions o;
  o.samples = 1 << 18;
  const v::Integrand f = [](std::span<const double> t) {
    double s = 0.0;
    for (const double x : t) s += x * x;
    return s;
  };
  for (auto _ : state) benchmark::DoNotOptimize(v::simplex_mc(f, 1.0, dim, o));
  state.SetItemsProcessed(state.iterations() * o.samples);
}
BENCHMARK(BM_SimplexMc)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_TailIntegral(benchmark::State& state) {
  const auto weight = v::make_smooth_weight(static_cast<unsigned>(state.range(0)));
  std::vector<double> t(weight->dim(), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(v::tail_integral(*weight, t));
}
BENCHMARK(BM_TailIntegral)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SieveSums(benchmark::State& state) {
  sv::SieveConfig c;
  c.x = static_cast<std::uint64_t>(state.range(0));
  c.tuple = tp::OffsetTuple({0, 2}, true);
  const auto run = sv::make_sieve_run(c);
  for (auto _ : state) benchmark::DoNotOptimize(sv::compute_sums(run, 10.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(run.terms));
}
BENCHMARK(BM_SieveSums)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_ClusterScan(benchmark::State& state) {
  const tp::OffsetTuple t({0, 2, 6, 8}, true);
  const sv::ScanOptions o;
  const auto x2 = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sv::cluster_scan(2, x2, t, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClusterScan)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_DeriveConstants(benchmark::State& state) {
  const auto p = pl::preset("baker-irving");
  unsigned long long m = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pl::derive_constants(m++ % 100'000 + 1, p));
}
BENCHMARK(BM_DeriveConstants);

}  // namespace

BENCHMARK_MAIN();
