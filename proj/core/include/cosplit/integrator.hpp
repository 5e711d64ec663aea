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
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cosplit/grid.hpp"
#include "cosplit/model.hpp"
#include "cosplit/scheme.hpp"
#include "cosplit/spectral.hpp"
#include "cosplit/subflows.hpp"

namespace cosplit {

enum class FlowKind { linear, multiplication };

struct FusedFlow {
  FlowKind kind;
  Complex coefficient;
};

/// Application-order flow list of one step. Vanishing coefficients are
/// dropped and consecutive linear flows merged. With skip_multiplication all
/// multiplication flows are dropped as well (models without an F2 part).
std::vector<FusedFlow> fuse_flows(const SplittingScheme& scheme, bool skip_multiplication = false);

struct TimeGrid {
  double t0 = 0.0;
  double T = 1.0;
  std::size_t steps = 0;

  double tau() const { return steps == 0 ? 0.0 : (T - t0) / static_cast<double>(steps); }
};

enum class RunStatus { completed, blowup };
std::string_view to_string(RunStatus status);

struct StepResult {
  FlowStatus status = FlowStatus::ok;
  /// Index into the fused flow list of the flow that signalled.
  std::size_t flow_index = 0;
};

/// Applies one splitting step to a physical-space doubled state. Exponential
/// factors of the linear flows are cached per stepsize.
class SplitStepper {
 public:
  SplitStepper(const SplittingScheme& scheme, const ModelSpec& model, const Grid& grid);

  StepResult step(DoubledState& state, double tau, TransformCounter& counter);

  const std::vector<FusedFlow>& flows() const { return flows_; }
  /// Transforms spent per step: 2 per linear flow.
  std::size_t transforms_per_step() const;

 private:
  struct LinearFactors {
    bool overflow = false;
    ComplexBuffer u;
    ComplexBuffer v;
  };
  const std::vector<LinearFactors>& factors_for(double tau);
  FlowStatus multiplication(DoubledState& state, Complex h) const;

  ModelSpec model_;
  SpectralTransform transform_;
  std::vector<FusedFlow> flows_;
  std::vector<Complex> symbol_;
  std::map<double, std::vector<LinearFactors>> cache_;
};

struct RunOutcome {
  DoubledState final;
  RunStatus status = RunStatus::completed;
  /// Step (1-based) at which blowup was detected; 0 when completed.
  std::size_t blowup_step = 0;
  TransformCounter::Snapshot transforms;
  std::vector<double> norm_history;
  double final_time = 0.0;
};

struct EvolveOptions {
  /// Blowup when ||u|| or ||v|| exceeds this factor times its initial value.
  double blowup_factor = 1e6;
  bool record_norms = false;
  /// Call on_snapshot every k steps (and at step 0 and the final step); 0 disables.
  std::size_t snapshot_every = 0;
  std::function<void(std::size_t step, double time, const DoubledState& state)> on_snapshot;
};

RunOutcome evolve(const SplittingScheme& scheme, const ModelSpec& model, const Grid& grid,
                  const DoubledState& initial, const TimeGrid& time,
                  const EvolveOptions& options = {});

}  // namespace cosplit
