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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cosplit/config.hpp"
#include "cosplit/integrator.hpp"
#include "cosplit/scheme.hpp"

namespace cosplit {

/// Shortest decimal string that reads back to the same double.
std::string format_double(double value);

/// Schemes available to a study: the configured catalog file or the built-in one.
std::vector<SplittingScheme> study_catalog(const StudyConfig& config);

NormKind resolve_norm(const StudyConfig& config, const ModelSpec& model);
std::string_view to_string(NormKind kind);
double field_distance(const Grid& grid, std::span<const Complex> a, std::span<const Complex> b,
                      NormKind kind);
double field_norm(const Grid& grid, std::span<const Complex> a, NormKind kind);

struct Reference {
  DoubledState state;
  std::string scheme;
  std::string cross_scheme;
  std::size_t steps = 0;
  double tau = 0.0;
  /// Relative distance between the two reference runs.
  double cross_check = 0.0;
  NormKind norm = NormKind::complex;
  double norm_value = 0.0;
};

/// Reference at tau_min / divisor with the first reference scheme, checked
/// against the second. Throws reference_blowup or reference_cross_check.
Reference compute_reference(const StudyConfig& config, const std::vector<SplittingScheme>& catalog,
                            ModulusFlow flow = ModulusFlow::doubled);

struct RunRecord {
  std::string scheme;
  double tau = 0.0;
  std::size_t steps = 0;
  std::optional<double> error;
  std::uint64_t transforms = 0;
  RunStatus status = RunStatus::completed;
  std::string norm_kind;
  std::string variant;
};

/// Evolves every (scheme, rung) and compares with the reference. Records are
/// sorted by scheme then decreasing tau.
std::vector<RunRecord> run_convergence(const StudyConfig& config,
                                       const std::vector<SplittingScheme>& catalog,
                                       const Reference& reference,
                                       ModulusFlow flow = ModulusFlow::doubled);

/// Both nonlinear subflow variants against one doubled-system reference;
/// variant column "correct" or "naive".
std::vector<RunRecord> run_naive_vs_correct(const StudyConfig& config,
                                            const std::vector<SplittingScheme>& catalog,
                                            const Reference& reference);

struct SlopeFit {
  std::string scheme;
  std::string variant;
  std::optional<double> slope;
  std::size_t used = 0;
};

inline constexpr double kFitLower = 1e-10;
inline constexpr double kFitUpper = 1e-2;

/// Fits over completed rungs with relative error (error / reference_norm)
/// in [lower, upper]; fewer than 3 rungs leaves the slope empty
/// ("indeterminate").
std::vector<SlopeFit> fit_slopes(const std::vector<RunRecord>& records, double reference_norm,
                                 double lower = kFitLower, double upper = kFitUpper);
const SlopeFit* find_fit(const std::vector<SlopeFit>& fits, std::string_view scheme,
                         std::string_view variant);

inline constexpr std::string_view kConvergenceCsvHeader =
    "scheme,tau,error,transforms,status,norm_kind,variant";
void write_convergence_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_convergence_csv(std::istream& in);
void write_slopes_csv(std::ostream& out, const std::vector<SlopeFit>& fits);

struct StabilityRow {
  std::string scheme;
  Complex alpha1;
  bool predicted_stable = true;
  double max_margin = 0.0;
  RunStatus status = RunStatus::completed;
  /// Predicate says unstable but the run completed, or the converse.
  bool agrees = true;
};

std::vector<StabilityRow> run_stability_scan(const StudyConfig& config,
                                             const std::vector<SplittingScheme>& catalog);
inline constexpr std::string_view kStabilityCsvHeader =
    "scheme,alpha_re,alpha_im,predicted,max_margin,status,agrees";
void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows);

struct SimulationResult {
  RunOutcome outcome;
  std::vector<std::filesystem::path> snapshots;
};

/// Writes snap_<step>.bin every snapshot_every steps (plus first and last) into out_dir.
SimulationResult simulate(const StudyConfig& config, const std::vector<SplittingScheme>& catalog,
                          const std::filesystem::path& out_dir);

struct OrderCheckRow {
  std::string scheme;
  int declared = 0;
  /// Empty when fewer than 3 stepsizes had a measurable local error.
  std::optional<double> observed;
  bool pass = false;
};

std::vector<OrderCheckRow> run_order_check(const StudyConfig& config,
                                           const std::vector<SplittingScheme>& catalog);
void write_order_csv(std::ostream& out, const std::vector<OrderCheckRow>& rows);

}  // namespace cosplit
