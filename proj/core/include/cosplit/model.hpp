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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cosplit/grid.hpp"
#include "cosplit/subflows.hpp"

namespace cosplit {

/// Which nonlinear subflow a modulus-type model uses.
enum class ModulusFlow { doubled, frozen_modulus };

/// dU/dt = sum_k alpha_k Delta^k U + W(x) U + f(U).
struct ModelSpec {
  std::string name;
  std::vector<Complex> alphas;
  /// Sampled on the grid; empty means zero.
  std::vector<Complex> potential;
  NonlinearitySpec nonlinearity;
  bool realness = false;
  ModulusFlow modulus_flow = ModulusFlow::doubled;
  double flow_tolerance = 1e-12;

  /// Index of the highest nonzero alpha.
  int order_K() const;
  Complex leading_alpha() const;
  /// True when the multiplication part is identically zero.
  bool trivial_multiplication() const;
};

/// Validates the well-posedness sign (-1)^K Re(alpha_K) <= 0 and the
/// realness flag. Throws well_posedness or invalid_argument.
ModelSpec make_model(std::string name, std::vector<Complex> alphas,
                     std::vector<Complex> potential, NonlinearitySpec nonlinearity,
                     bool realness);

struct ReactionDiffusionParams {
  std::vector<Complex> alphas;
  Complex beta1{0.0, 0.0};
  Complex beta2{0.0, 0.0};
  Complex beta3{0.0, 0.0};
};

/// u_t = u + 0.05 u_xx - 0.001 u_xxxx - u^3 unless overridden.
ReactionDiffusionParams default_rd_1d_params();
/// u_t = u + 0.05 Delta u - 1e-6 Delta^4 u - u^3 unless overridden.
ReactionDiffusionParams default_rd_3d_params();

ModelSpec preset_rd_1d(const ReactionDiffusionParams& params = default_rd_1d_params());
ModelSpec preset_rd_hi_3d(const ReactionDiffusionParams& params = default_rd_3d_params());

struct QuasicrystalParams {
  double epsilon = 0.1;
  double g = 0.5;
  double q1 = 1.0;
};

/// Two-ring symbol eps - (q1^2 - lambda)^2 (q2^2 - lambda)^2 with
/// q2 = 2 cos(pi/12) q1, and f(u) = g u^2 - u^3.
ModelSpec preset_quasicrystal_2d(const QuasicrystalParams& params = {});
double quasicrystal_q2(double q1);

/// u_t = alpha1 Delta u + alpha0 u + beta2 |u|^2 u. Requires Re(alpha1) > 0.
ModelSpec preset_cgl(Complex alpha1, Complex alpha0, Complex beta2);

/// Harmonic potential V(x) = |x|^2 / 2 sampled on the grid.
std::vector<double> harmonic_potential(const Grid& grid);

/// i u_t = alpha Delta u + beta V u + theta |u|^2 u.
ModelSpec preset_gpe(double alpha, double beta, double theta, std::span<const double> V);
/// u_t = alpha Delta u + beta V u + theta |u|^2 u with alpha > 0.
ModelSpec preset_gpe_parabolic(double alpha, double beta, double theta,
                               std::span<const double> V);

struct GaussianInitial {
  std::vector<double> center;
  std::vector<double> width;
  Complex amplitude{1.0, 0.0};
  /// Sum the periodic images so the field is smooth across the cell boundary.
  bool periodize = false;
};

struct InitialField {
  std::vector<Complex> values;
  /// Set when the Gaussian does not decay below 1e-12 of its peak at the boundary.
  bool periodization_warning = false;
};

/// U0(x) = amplitude * exp(-sum_l (x_l - c_l)^2 / (2 w_l^2)), optionally
/// summed over the periodic images x_l + 2 k L_l.
InitialField gaussian_initial(const Grid& grid, const GaussianInitial& params);

/// Independent normal samples with standard deviation |amplitude| times the
/// phase of amplitude, drawn from a seeded generator.
InitialField noise_initial(const Grid& grid, Complex amplitude, std::uint64_t seed);

}  // namespace cosplit
