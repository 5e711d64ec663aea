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
#include "cosplit/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "cosplit/error.hpp"

namespace cosplit {

namespace {

bool is_real(Complex z) { return z.imag() == 0.0; }

}  // namespace

int ModelSpec::order_K() const {
  for (std::size_t k = alphas.size(); k-- > 0;) {
    if (alphas[k] != 0.0) return static_cast<int>(k);
  }
  return 0;
}

Complex ModelSpec::leading_alpha() const {
  return alphas.empty() ? Complex{0.0, 0.0} : alphas[static_cast<std::size_t>(order_K())];
}

bool ModelSpec::trivial_multiplication() const {
  if (nonlinearity.kind != NonlinearityKind::none &&
      (nonlinearity.beta1 != 0.0 || nonlinearity.beta2 != 0.0 || nonlinearity.beta3 != 0.0)) {
    return false;
  }
  for (const auto& w : potential) {
    if (w != 0.0) return false;
  }
  return true;
}

ModelSpec make_model(std::string name, std::vector<Complex> alphas,
                     std::vector<Complex> potential, NonlinearitySpec nonlinearity,
                     bool realness) {
  if (alphas.empty()) throw Error(ErrorCode::invalid_argument, "model needs alpha_0..alpha_K");
  ModelSpec m;
  m.name = std::move(name);
  m.alphas = std::move(alphas);
  m.potential = std::move(potential);
  m.nonlinearity = nonlinearity;
  m.realness = realness;
  const int K = m.order_K();
  const double sign = (K % 2 == 0) ? 1.0 : -1.0;
  if (sign * m.leading_alpha().real() > 0.0) {
    throw Error(ErrorCode::well_posedness,
                "model '" + m.name + "': (-1)^K Re(alpha_K) must be <= 0 (K = " +
                    std::to_string(K) + ")");
  }
  if (realness) {
    bool real = true;
    for (const auto& a : m.alphas) real = real && is_real(a);
    for (const auto& w : m.potential) real = real && is_real(w);
    real = real && is_real(nonlinearity.beta1) && is_real(nonlinearity.beta2) &&
           is_real(nonlinearity.beta3);
    if (!real) {
      throw Error(ErrorCode::invalid_argument,
                  "model '" + m.name + "': realness requires real constants");
    }
  }
  return m;
}

ReactionDiffusionParams default_rd_1d_params() {
  return {{1.0, 0.05, -0.001}, 0.0, 0.0, -1.0};
}

ReactionDiffusionParams default_rd_3d_params() {
  return {{1.0, 0.05, 0.0, 0.0, -1.0e-6}, 0.0, 0.0, -1.0};
}

namespace {

ModelSpec reaction_diffusion(std::string name, const ReactionDiffusionParams& p) {
  for (Complex b : {p.beta1, p.beta2, p.beta3}) {
    if (!is_real(b)) {
      throw Error(ErrorCode::invalid_argument, "reaction-diffusion constants must be real");
    }
  }
  for (const auto& a : p.alphas) {
    if (!is_real(a)) {
      throw Error(ErrorCode::invalid_argument, "reaction-diffusion constants must be real");
    }
  }
  auto m = make_model(std::move(name), p.alphas, {},
                      NonlinearitySpec::polynomial(p.beta1, p.beta2, p.beta3), true);
  if (!(m.leading_alpha().real() != 0.0)) {
    throw Error(ErrorCode::well_posedness, "leading alpha must be nonzero");
  }
  return m;
}

}  // namespace

ModelSpec preset_rd_1d(const ReactionDiffusionParams& params) {
  return reaction_diffusion("rd_1d", params);
}

ModelSpec preset_rd_hi_3d(const ReactionDiffusionParams& params) {
  return reaction_diffusion("rd_3d", params);
}

double quasicrystal_q2(double q1) { return 2.0 * std::cos(std::numbers::pi / 12.0) * q1; }

ModelSpec preset_quasicrystal_2d(const QuasicrystalParams& params) {
  // eps - ((x + a)(x + b))^2 with x = -lambda, a = q1^2, b = q2^2.
  const double a = params.q1 * params.q1;
  const double q2 = quasicrystal_q2(params.q1);
  const double b = q2 * q2;
  const double s = a + b;
  const double p = a * b;
  std::vector<Complex> alphas = {params.epsilon - p * p, -2.0 * p * s, -(s * s + 2.0 * p),
                                 -2.0 * s, -1.0};
  return make_model("quasicrystal_2d", std::move(alphas), {},
                    NonlinearitySpec::polynomial(0.0, params.g, -1.0), true);
}

ModelSpec preset_cgl(Complex alpha1, Complex alpha0, Complex beta2) {
  if (!(alpha1.real() > 0.0)) {
    throw Error(ErrorCode::well_posedness, "complex Ginzburg-Landau requires Re(alpha1) > 0");
  }
  return make_model("cgl", {alpha0, alpha1}, {}, NonlinearitySpec::modulus_cubic(beta2), false);
}

std::vector<double> harmonic_potential(const Grid& grid) {
  std::vector<std::vector<double>> axes;
  for (std::size_t l = 0; l < grid.dim(); ++l) axes.push_back(grid.axis_points(l));
  std::vector<double> V(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    double r2 = 0.0;
    for (std::size_t l = 0; l < grid.dim(); ++l) r2 += axes[l][idx[l]] * axes[l][idx[l]];
    V[i] = 0.5 * r2;
  }
  return V;
}

namespace {

ModelSpec gpe_like(std::string name, Complex alpha1, Complex beta1, Complex beta2,
                   std::span<const double> V) {
  std::vector<Complex> W(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) W[i] = beta1 * V[i];
  return make_model(std::move(name), {0.0, alpha1}, std::move(W),
                    NonlinearitySpec::modulus_cubic(beta2), false);
}

}  // namespace

ModelSpec preset_gpe(double alpha, double beta, double theta, std::span<const double> V) {
  const Complex I{0.0, 1.0};
  return gpe_like("gpe", -I * alpha, -I * beta, -I * theta, V);
}

ModelSpec preset_gpe_parabolic(double alpha, double beta, double theta,
                               std::span<const double> V) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::well_posedness, "parabolic GPE requires alpha > 0");
  return gpe_like("gpe_parabolic", alpha, beta, theta, V);
}

InitialField gaussian_initial(const Grid& grid, const GaussianInitial& params) {
  const std::size_t d = grid.dim();
  auto center = params.center;
  auto width = params.width;
  if (center.empty()) center.assign(d, 0.0);
  if (width.size() == 1 && d > 1) width.assign(d, width[0]);
  if (center.size() != d || width.size() != d) {
    throw Error(ErrorCode::invalid_argument, "gaussian center/width must have dim entries");
  }
  InitialField out;
  for (std::size_t l = 0; l < d; ++l) {
    if (!(width[l] > 0.0)) throw Error(ErrorCode::invalid_argument, "gaussian width must be > 0");
    // Distance from the center to the nearest boundary of the periodic cell.
    const double L = grid.extents()[l];
    const double reach = std::min(L - center[l], L + center[l]);
    if (!params.periodize && std::exp(-reach * reach / (2.0 * width[l] * width[l])) > 1e-12) {
      out.periodization_warning = true;
    }
  }
  // Separable profile: one table per axis.
  std::vector<std::vector<double>> profile(d);
  for (std::size_t l = 0; l < d; ++l) {
    const double L = grid.extents()[l];
    const double w2 = 2.0 * width[l] * width[l];
    const int images = params.periodize ? static_cast<int>(std::ceil(8.0 * width[l] / L)) + 1 : 0;
    for (double x : grid.axis_points(l)) {
      double acc = 0.0;
      for (int k = -images; k <= images; ++k) {
        const double y = x - center[l] + 2.0 * k * L;
        acc += std::exp(-y * y / w2);
      }
      profile[l].push_back(acc);
    }
  }
  out.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    double e = 1.0;
    for (std::size_t l = 0; l < d; ++l) e *= profile[l][idx[l]];
    out.values[i] = params.amplitude * e;
  }
  return out;
}

InitialField noise_initial(const Grid& grid, Complex amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  InitialField out;
  out.values.resize(grid.size());
  for (auto& v : out.values) v = amplitude * normal(rng);
  return out;
}

}  // namespace cosplit
