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
#include "cosplit/order_estimate.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "cosplit/error.hpp"

namespace cosplit {

std::vector<double> geometric_stepsizes(double first, double ratio, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  double tau = first;
  for (int k = 0; k < count; ++k) {
    out.push_back(tau);
    tau *= ratio;
  }
  return out;
}

Eigen::MatrixXcd compose_matrix(const SplittingScheme& scheme, const Eigen::MatrixXcd& A,
                                const Eigen::MatrixXcd& B, double tau) {
  const auto n = A.rows();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& p : scheme.pairs()) {
    if (p.a != 0.0) S = (A * (p.a * tau)).exp() * S;
    if (p.b != 0.0) S = (B * (p.b * tau)).exp() * S;
  }
  return S;
}

double fit_loglog_slope(const std::vector<double>& tau, const std::vector<double>& error,
                        double lower, double upper) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < tau.size() && k < error.size(); ++k) {
    const double e = error[k];
    if (!(e >= lower && e <= upper) || !(tau[k] > 0)) continue;
    const double x = std::log(tau[k]);
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 3 || !(std::abs(denom) > 0)) {
    throw Error(ErrorCode::degenerate_fit,
                "only " + std::to_string(n) + " usable points for the slope fit");
  }
  return (n * sxy - sx * sy) / denom;
}

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int n, bool real, double norm) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = real ? 0.0 : normal(rng);
      M(i, j) = Complex(re, im);
    }
  }
  return M * (norm / M.norm());
}

}  // namespace

OrderEstimate estimate_nonstiff_order(const SplittingScheme& scheme,
                                      const OrderEstimateOptions& options) {
  if (options.trials < 3) throw Error(ErrorCode::invalid_argument, "at least 3 trials required");
  if (options.dimension < 4 || options.dimension > 12) {
    throw Error(ErrorCode::invalid_argument, "matrix dimension must lie in [4, 12]");
  }
  for (double tau : options.stepsizes) {
    if (!(tau >= 1e-4 && tau <= 1e-1)) {
      throw Error(ErrorCode::invalid_argument, "stepsizes must lie in [1e-4, 1e-1]");
    }
  }
  if (!(options.matrix_norm > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "matrix norm must be positive");
  }
  const double eps = std::numeric_limits<double>::epsilon();
  OrderEstimate result;
  double sum = 0.0;
  for (int t = 0; t < options.trials; ++t) {
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(t));
    const Eigen::MatrixXcd A = random_matrix(rng, options.dimension, options.real_matrices,
                                               options.matrix_norm);
    const Eigen::MatrixXcd B = random_matrix(rng, options.dimension, options.real_matrices,
                                               options.matrix_norm);
    const Eigen::MatrixXcd C = A + B;
    std::vector<double> errors;
    errors.reserve(options.stepsizes.size());
    for (double tau : options.stepsizes) {
      const Eigen::MatrixXcd exact = (C * tau).exp();
      errors.push_back((compose_matrix(scheme, A, B, tau) - exact).norm());
    }
    const double order = fit_loglog_slope(options.stepsizes, errors, 1e3 * eps, 1e-2) - 1.0;
    result.per_trial.push_back(order);
    sum += order;
  }
  result.order = sum / options.trials;
  return result;
}

}  // namespace cosplit
