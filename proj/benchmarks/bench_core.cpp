/*
 * Copyright 2026 The cosplit Authors
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
 */
#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "cosplit/catalog.hpp"
#include "cosplit/integrator.hpp"
#include "cosplit/model.hpp"
#include "cosplit/order_estimate.hpp"
#include "cosplit/spectral.hpp"
#include "cosplit/subflows.hpp"

namespace {

using namespace cosplit;

ComplexBuffer random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  ComplexBuffer f(n);
  for (auto& c : f) c = {d(rng), d(rng)};
  return f;
}

Grid grid_for(int dim, std::size_t m) {
  std::vector<std::size_t> sizes(dim, m);
  std::vector<double> extents(dim, std::numbers::pi);
  return make_grid(dim, sizes, extents);
}

void BM_RoundTrip(benchmark::State& state) {
  const auto g = grid_for(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  SpectralTransform t(g);
  TransformCounter counter;
  auto f = random_field(2 * g.size(), 1);
  for (auto _ : state) {
    t.forward(f, counter);
    t.inverse(f, counter);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_RoundTrip)->Args({1, 256})->Args({2, 128})->Args({3, 32});

void BM_SplitStep(benchmark::State& state, const char* scheme_name, bool cgl) {
  const auto g = grid_for(1, 256);
  const auto model = cgl ? preset_cgl(Complex(1.0, 1.0), 1.0, Complex(-1.0, -1.0)) : preset_rd_1d();
  GaussianInitial gi{{0.0}, {1.0}, 1.0, true};
  DoubledState s = DoubledState::from_field(gaussian_initial(g, gi).values);
  SplitStepper stepper(find_scheme(builtin_catalog(), scheme_name), model, g);
  TransformCounter counter;
  for (auto _ : state) {
    const auto r = stepper.step(s, 1e-3, counter);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK_CAPTURE(BM_SplitStep, rd_strang, "strang", false);
BENCHMARK_CAPTURE(BM_SplitStep, rd_sc6o4, "sc6o4", false);
BENCHMARK_CAPTURE(BM_SplitStep, rd_ac19o6, "ac19o6", false);
BENCHMARK_CAPTURE(BM_SplitStep, cgl_sc6o4, "sc6o4", true);
BENCHMARK_CAPTURE(BM_SplitStep, cgl_ac7o4, "ac7o4", true);

void BM_GlNonlinearFlow(benchmark::State& state) {
  const auto f = random_field(4096, 2);
  DoubledState s = DoubledState::from_field(f);
  const std::vector<Complex> W(f.size(), Complex(0.5, -0.2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl_nonlinear_flow(s, W, Complex(-1.0, -1.0), Complex(1e-4, 1e-5)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_GlNonlinearFlow);

void BM_OrderEstimate(benchmark::State& state) {
  const auto& s = find_scheme(builtin_catalog(), "sc6o4");
  OrderEstimateOptions opt;
  opt.trials = 3;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_nonstiff_order(s, opt));
}
BENCHMARK(BM_OrderEstimate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
