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
#include <vector>

#include <Eigen/Dense>

#include "cosplit/scheme.hpp"

namespace cosplit {

/// tau_k = first * ratio^k, k = 0..count-1.
std::vector<double> geometric_stepsizes(double first, double ratio, int count);

struct OrderEstimateOptions {
  int trials = 5;
  int dimension = 6;
  std::vector<double> stepsizes = geometric_stepsizes(0.1, 0.8, 20);
  std::uint64_t seed = 20240917;
  /// Draw real instead of complex test matrices.
  bool real_matrices = false;
  /// Frobenius norm of the test matrices.
  double matrix_norm = 1.0;
};

struct OrderEstimate {
  double order = 0.0;
  std::vector<double> per_trial;
};

/// S_tau = prod_j exp(b_j tau B) exp(a_j tau A), applied right to left.
Eigen::MatrixXcd compose_matrix(const SplittingScheme& scheme, const Eigen::MatrixXcd& A,
                                const Eigen::MatrixXcd& B, double tau);

/// Least-squares slope of log(error) against log(tau) over points with
/// error in [lower, upper]. Throws degenerate_fit with fewer than 3 points.
double fit_loglog_slope(const std::vector<double>& tau, const std::vector<double>& error,
                        double lower, double upper);

/// Numerical nonstiff order: local-error slope minus one, averaged over
/// seeded trials with random matrices of Frobenius norm matrix_norm (<= 1
/// by default).
OrderEstimate estimate_nonstiff_order(const SplittingScheme& scheme,
                                      const OrderEstimateOptions& options = {});

}  // namespace cosplit
