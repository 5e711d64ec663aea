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
#include "cosplit/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "cosplit/error.hpp"

namespace cosplit {

std::vector<FusedFlow> fuse_flows(const SplittingScheme& scheme, bool skip_multiplication) {
  std::vector<FusedFlow> flows;
  const auto seq = scheme.sequence();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const FlowKind kind = (i % 2 == 0) ? FlowKind::linear : FlowKind::multiplication;
    const Complex c = seq[i];
    if (c == 0.0) continue;
    if (kind == FlowKind::multiplication && skip_multiplication) continue;
    if (kind == FlowKind::linear && !flows.empty() && flows.back().kind == FlowKind::linear) {
      flows.back().coefficient += c;
      continue;
    }
    flows.push_back({kind, c});
  }
  return flows;
}

std::string_view to_string(RunStatus status) {
  return status == RunStatus::completed ? "completed" : "blowup";
}

SplitStepper::SplitStepper(const SplittingScheme& scheme, const ModelSpec& model, const Grid& grid)
    : model_(model),
      transform_(grid),
      flows_(fuse_flows(scheme, model.trivial_multiplication())),
      symbol_(linear_symbol(model.alphas, grid)) {
  if (!model_.potential.empty() && model_.potential.size() != grid.size()) {
    throw Error(ErrorCode::shape_mismatch, "model potential does not match grid");
  }
}

std::size_t SplitStepper::transforms_per_step() const {
  return 2 * static_cast<std::size_t>(std::count_if(
                 flows_.begin(), flows_.end(),
                 [](const FusedFlow& f) { return f.kind == FlowKind::linear; }));
}

const std::vector<SplitStepper::LinearFactors>& SplitStepper::factors_for(double tau) {
  if (auto it = cache_.find(tau); it != cache_.end()) return it->second;
  std::vector<LinearFactors> factors(flows_.size());
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    if (flows_[i].kind != FlowKind::linear) continue;
    const Complex h = flows_[i].coefficient * tau;
    auto& f = factors[i];
    f.u.resize(symbol_.size());
    f.v.resize(symbol_.size());
    for (std::size_t m = 0; m < symbol_.size(); ++m) {
      const Complex eu = h * symbol_[m];
      const Complex ev = h * std::conj(symbol_[m]);
      if (eu.real() > kOverflowExponent || ev.real() > kOverflowExponent) {
        f.overflow = true;
        break;
      }
      f.u[m] = complex_expm1(eu);
      f.v[m] = complex_expm1(ev);
    }
  }
  if (cache_.size() > 64) cache_.clear();
  return cache_.emplace(tau, std::move(factors)).first->second;
}

FlowStatus SplitStepper::multiplication(DoubledState& state, Complex h) const {
  const auto& nl = model_.nonlinearity;
  switch (nl.kind) {
    case NonlinearityKind::none:
      return potential_flow(state, model_.potential, h);
    case NonlinearityKind::polynomial:
      return polynomial_reaction_flow(state, model_.potential, nl, h, {model_.flow_tolerance});
    case NonlinearityKind::modulus_cubic:
      return model_.modulus_flow == ModulusFlow::doubled
                 ? gl_nonlinear_flow(state, model_.potential, nl.beta2, h)
                 : frozen_modulus_flow(state, model_.potential, nl.beta2, h);
  }
  return FlowStatus::ok;
}

StepResult SplitStepper::step(DoubledState& state, double tau, TransformCounter& counter) {
  if (state.size() != symbol_.size()) {
    throw Error(ErrorCode::shape_mismatch, "state does not match grid");
  }
  const auto& factors = factors_for(tau);
  const std::size_t n = state.size();
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    if (flows_[i].kind == FlowKind::linear) {
      const auto& f = factors[i];
      if (f.overflow) return {FlowStatus::blowup, i};
      auto data = state.data();
      transform_.forward(data, counter);
      for (std::size_t m = 0; m < n; ++m) {
        data[m] += data[m] * f.u[m];
        data[n + m] += data[n + m] * f.v[m];
      }
      transform_.inverse(data, counter);
    } else if (multiplication(state, flows_[i].coefficient * tau) == FlowStatus::blowup) {
      return {FlowStatus::blowup, i};
    }
  }
  return {};
}

RunOutcome evolve(const SplittingScheme& scheme, const ModelSpec& model, const Grid& grid,
                  const DoubledState& initial, const TimeGrid& time,
                  const EvolveOptions& options) {
  if (initial.size() != grid.size()) {
    throw Error(ErrorCode::shape_mismatch, "initial state does not match grid");
  }
  if (time.steps > 0 && !(time.T > time.t0)) {
    throw Error(ErrorCode::invalid_argument, "time grid needs T > t0");
  }
  RunOutcome out;
  out.final = initial;
  out.final_time = time.t0;
  TransformCounter counter;
  const double nu0 = l2_norm(grid, initial.u());
  const double nv0 = l2_norm(grid, initial.v());
  const double tiny = 1e-300;
  if (options.record_norms) out.norm_history.push_back(nu0);
  const bool snapshots = options.snapshot_every > 0 && options.on_snapshot;
  if (snapshots) options.on_snapshot(0, time.t0, out.final);

  if (time.steps > 0) {
    SplitStepper stepper(scheme, model, grid);
    const double tau = time.tau();
    DoubledState backup = initial;
    for (std::size_t n = 1; n <= time.steps; ++n) {
      backup = out.final;
      const auto r = stepper.step(out.final, tau, counter);
      bool blown = r.status == FlowStatus::blowup || !out.final.all_finite();
      double nu = 0.0;
      if (!blown) {
        nu = l2_norm(grid, out.final.u());
        const double nv = l2_norm(grid, out.final.v());
        blown = nu > options.blowup_factor * std::max(nu0, tiny) ||
                nv > options.blowup_factor * std::max(nv0, tiny);
      }
      if (blown) {
        out.final = std::move(backup);
        out.status = RunStatus::blowup;
        out.blowup_step = n;
        break;
      }
      out.final_time = n == time.steps ? time.T : time.t0 + static_cast<double>(n) * tau;
      if (options.record_norms) out.norm_history.push_back(nu);
      if (snapshots && (n % options.snapshot_every == 0 || n == time.steps)) {
        options.on_snapshot(n, out.final_time, out.final);
      }
    }
  }
  out.transforms = counter.snapshot();
  return out;
}

}  // namespace cosplit
