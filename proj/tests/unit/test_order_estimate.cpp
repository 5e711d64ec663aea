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
#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "cosplit/catalog.hpp"
#include "cosplit/error.hpp"
#include "cosplit/order_estimate.hpp"

namespace cosplit {
namespace {

TEST(OrderEstimate, GeometricStepsizes) {
  const auto t = geometric_stepsizes(0.1, 0.5, 4);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_DOUBLE_EQ(t[0], 0.1);
  EXPECT_DOUBLE_EQ(t[3], 0.0125);
}

TEST(OrderEstimate, ComposeLieTrotter) {
  const auto& lt = find_scheme(builtin_catalog(), "lie_trotter");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(4, 4);
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Random(4, 4);
  const double tau = 0.05;
  const Eigen::MatrixXcd expected = (tau * B).exp() * (tau * A).exp();
  EXPECT_LT((compose_matrix(lt, A, B, tau) - expected).norm(), 1e-14);
}

TEST(OrderEstimate, CommutingMatricesAreExact) {
  const auto& s = find_scheme(builtin_catalog(), "ac7o4");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(4, 4);
  A.diagonal() << 1.0, 2.0, -1.0, 0.5;
  Eigen::MatrixXcd B = 0.3 * A;
  const Eigen::MatrixXcd exact = (0.1 * (A + B)).exp();
  EXPECT_LT((compose_matrix(s, A, B, 0.1) - exact).norm(), 1e-14);
}

TEST(OrderEstimate, FitRecoversPowerLaw) {
  std::vector<double> tau;
  std::vector<double> err;
  for (int k = 0; k < 8; ++k) {
    tau.push_back(0.1 * std::pow(0.5, k));
    err.push_back(3.0 * std::pow(tau.back(), 5));
  }
  EXPECT_NEAR(fit_loglog_slope(tau, err, 0.0, 1.0), 5.0, 1e-12);
}

TEST(OrderEstimate, FitWindowAndDegenerate) {
  const std::vector<double> tau{0.1, 0.05, 0.025, 0.0125};
  const std::vector<double> err{1e-1, 1e-3, 1e-5, 1e-20};
  try {
    fit_loglog_slope(tau, err, 1e-12, 1e-2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_fit);
  }
}

TEST(OrderEstimate, LieTrotterAndStrang) {
  const auto& cat = builtin_catalog();
  EXPECT_NEAR(estimate_nonstiff_order(find_scheme(cat, "lie_trotter")).order, 1.0, 0.1);
  EXPECT_NEAR(estimate_nonstiff_order(find_scheme(cat, "strang")).order, 2.0, 0.1);
}

TEST(OrderEstimate, OrderFourSchemes) {
  const auto& cat = builtin_catalog();
  for (const char* name : {"yoshida4", "yoshida4c", "sc4o4", "sc6o4", "ac7o4"}) {
    EXPECT_NEAR(estimate_nonstiff_order(find_scheme(cat, name)).order, 4.0, 0.25) << name;
  }
}

TEST(OrderEstimate, Seeded) {
  const auto& s = find_scheme(builtin_catalog(), "sc4o3");
  const auto a = estimate_nonstiff_order(s);
  const auto b = estimate_nonstiff_order(s);
  EXPECT_EQ(a.per_trial, b.per_trial);
  EXPECT_EQ(a.per_trial.size(), 5u);
}

TEST(OrderEstimate, RealMatricesWork) {
  OrderEstimateOptions opt;
  opt.real_matrices = true;
  EXPECT_NEAR(estimate_nonstiff_order(find_scheme(builtin_catalog(), "strang"), opt).order, 2.0,
              0.1);
}

TEST(OrderEstimate, LargerNormResolvesOrderSix) {
  OrderEstimateOptions opt;
  opt.matrix_norm = 8.0;
  for (const char* name : {"sc16o6", "ac19o6"}) {
    EXPECT_NEAR(estimate_nonstiff_order(find_scheme(builtin_catalog(), name), opt).order, 6.0,
                0.25)
        << name;
  }
}

TEST(OrderEstimate, PreconditionsEnforced) {
  const auto& s = find_scheme(builtin_catalog(), "strang");
  OrderEstimateOptions opt;
  opt.trials = 2;
  EXPECT_THROW(estimate_nonstiff_order(s, opt), Error);
  opt = {};
  opt.dimension = 3;
  EXPECT_THROW(estimate_nonstiff_order(s, opt), Error);
  opt = {};
  opt.stepsizes = geometric_stepsizes(0.5, 0.8, 10);
  EXPECT_THROW(estimate_nonstiff_order(s, opt), Error);
  opt = {};
  opt.matrix_norm = 0.0;
  EXPECT_THROW(estimate_nonstiff_order(s, opt), Error);
}

}  // namespace
}  // namespace cosplit
