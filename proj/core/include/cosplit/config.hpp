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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cosplit/grid.hpp"
#include "cosplit/model.hpp"

namespace cosplit {

enum class NormKind { automatic, real, complex };

/// Study configuration, read from YAML. See configs/README.md for the schema.
struct StudyConfig {
  std::string name;
  std::filesystem::path base_dir;

  std::string preset;
  /// Preset parameters; scalars are stored as one-element lists.
  std::map<std::string, std::vector<Complex>> params;
  ModulusFlow modulus_flow = ModulusFlow::doubled;
  double flow_tolerance = 1e-12;

  std::vector<std::size_t> sizes;
  std::vector<double> extents;

  /// "gaussian" or "noise"; noise uses gaussian.amplitude as its scale.
  std::string initial_kind = "gaussian";
  GaussianInitial gaussian;

  double t0 = 0.0;
  double T = 1.0;
  /// Step counts of the convergence ladder; tau = (T - t0) / steps.
  std::vector<std::size_t> ladder;
  std::vector<std::string> schemes;

  std::vector<std::string> reference_schemes;
  std::size_t reference_divisor = 64;
  double reference_tolerance = 1e-9;

  NormKind norm = NormKind::automatic;
  double blowup_factor = 1e6;

  /// Stability scan: values of alpha1 and the step count of each short run.
  std::vector<Complex> scan_alpha1;
  std::size_t scan_steps = 0;

  /// Simulation.
  std::string simulate_scheme;
  std::size_t simulate_steps = 0;
  std::size_t snapshot_every = 0;

  /// Order check.
  int order_trials = 5;
  int order_dimension = 6;
  double order_tau_first = 0.1;
  double order_tau_ratio = 0.8;
  int order_tau_count = 20;
  double order_matrix_norm = 1.0;

  std::optional<std::filesystem::path> catalog;
  std::uint64_t seed = 1;

  /// Recorded empirical facts, e.g. blowup thresholds, keyed by name.
  std::map<std::string, double> golden;
};

StudyConfig parse_study_config(std::string_view yaml_text,
                               const std::filesystem::path& base_dir = {});
StudyConfig load_study_config(const std::filesystem::path& path);

/// Step counts must increase with a constant ratio (tau ratio in (0,1)) and
/// have at least 4 rungs. Throws config_error.
void validate_ladder(const std::vector<std::size_t>& steps);

Grid build_grid(const StudyConfig& config);
/// Builds the preset; entries of overrides replace config parameters.
ModelSpec build_model(const StudyConfig& config, const Grid& grid,
                      const std::map<std::string, std::vector<Complex>>& overrides = {});
InitialField build_initial(const StudyConfig& config, const Grid& grid);

}  // namespace cosplit
