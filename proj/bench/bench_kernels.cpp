// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference path against the OpenMP path for the three sampling
// kernels. Arg 0 is Serial, 1 is Parallel.
#include <benchmark/benchmark.h>

#include "symred/catalog.hpp"
#include "symred/releq.hpp"
#include "symred/semialg.hpp"
#include "symred/strata.hpp"

using namespace symred;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_SignatureBatch(benchmark::State& state) {
  const VerifiedModel m = require_verified(catalog_model("oscillator_r8"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(signature_batch(m, 0, 4096, 1, 1e-9, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}

void BM_SampleSurface(benchmark::State& state) {
  SemiAlgebraicSet s = *catalog_orbit_space("so3_diag_r9_scaled");
  s.relations.push_back(Polynomial::variable(4, 3));
  MeshOptions o;
  o.grid = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_surface(s, Chart{0, 1, 2}, o, mode(state)));
  }
}

void BM_Multistart(benchmark::State& state) {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const Polynomial h = poly_parse("x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2", cot->variables);
  SolveOptions opt;
  opt.seeds = 128;
  opt.exec = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_relative_equilibria(cot, h, std::vector<double>{0, 0, 1}, opt));
  }
}

}  // namespace

BENCHMARK(BM_SignatureBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSurface)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multistart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
