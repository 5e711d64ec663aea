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
#include "cosplit/subflows.hpp"

#include <array>
#include <cmath>

#include "cosplit/error.hpp"

namespace cosplit {

DoubledState DoubledState::from_field(std::span<const Complex> u) {
  DoubledState s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    s.u()[i] = u[i];
    s.v()[i] = std::conj(u[i]);
  }
  return s;
}

bool DoubledState::all_finite() const {
  for (const auto& c : data_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

namespace {

constexpr double kSeriesThreshold = 1e-8;
constexpr double kBranchSafeRadius = 0.5;
constexpr int kBranchSamples = 64;

// (exp(w) - 1) / w.
Complex phi1(Complex w) {
  if (std::abs(w) < kSeriesThreshold) return 1.0 + w * (0.5 + w / 6.0);
  return complex_expm1(w) / w;
}

// log(1 + z) without cancellation for small |z|.
Complex log1pc(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

// -log(1 - z) / z.
Complex neg_log1m_over(Complex z) {
  if (std::abs(z) < 1e-4) {
    return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 3.0 + z * (1.0 / 4.0 + z * (1.0 / 5.0))));
  }
  return -log1pc(-z) / z;
}

// D(s) = 1 - c s phi1(w s) stays away from zero and off the branch cut on
// [0, 1]. D(0) = 1, and |c| e^{max(0, Re w)} < 1/2 keeps D in the right
// half-plane without sampling.
bool principal_path(Complex c, Complex w) {
  if (std::abs(c) * std::exp(std::max(0.0, w.real())) < kBranchSafeRadius) return true;
  Complex prev{1.0, 0.0};
  for (int k = 1; k <= kBranchSamples; ++k) {
    const double s = static_cast<double>(k) / kBranchSamples;
    const Complex d = 1.0 - c * s * phi1(w * s);
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag()) || std::abs(d) < 1e-12) return false;
    const bool crosses = d.real() < 0.0 && prev.real() < 0.0 &&
                         ((d.imag() < 0.0) != (prev.imag() < 0.0) || d.imag() == 0.0);
    if (crosses) return false;
    prev = d;
  }
  return true;
}

std::optional<Complex> scaled(Complex y, Complex exponent) {
  if (!(exponent.real() <= kOverflowExponent)) return std::nullopt;
  const Complex out = y + y * complex_expm1(exponent);
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) return std::nullopt;
  return out;
}

Complex at(std::span<const Complex> W, std::size_t i) {
  return W.empty() ? Complex{0.0, 0.0} : W[i];
}

void check_sizes(const DoubledState& state, std::span<const Complex> W) {
  if (!W.empty() && W.size() != state.size()) {
    throw Error(ErrorCode::shape_mismatch, "potential does not match state");
  }
}

template <class PointFlow>
FlowStatus apply_pairwise(DoubledState& state, std::span<const Complex> W, PointFlow&& flow) {
  check_sizes(state, W);
  auto u = state.u();
  auto v = state.v();
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto r = flow(u[i], v[i], at(W, i));
    if (!r) return FlowStatus::blowup;
    u[i] = r->u;
    v[i] = r->v;
  }
  return FlowStatus::ok;
}

}  // namespace

FlowStatus potential_flow(DoubledState& state, std::span<const Complex> W, Complex h) {
  if (W.empty()) return FlowStatus::ok;
  return apply_pairwise(state, W, [h](Complex u, Complex v, Complex w) -> std::optional<PointPair> {
    const auto nu = scaled(u, h * w);
    const auto nv = scaled(v, h * std::conj(w));
    if (!nu || !nv) return std::nullopt;
    return PointPair{*nu, *nv};
  });
}

std::optional<PointPair> gl_point_flow(Complex u, Complex v, Complex W, Complex beta2, Complex h) {
  // P = u v solves P' = mu P + nu P^2; Phi is its integral over the unit step.
  const Complex P0 = u * v;
  const Complex mu = h * (2.0 * W.real());
  const Complex nu = h * (2.0 * beta2.real());
  const Complex q = phi1(mu);
  const Complex c = nu * P0;
  if (!principal_path(c, mu)) return std::nullopt;
  const Complex Phi = P0 * q * neg_log1m_over(c * q);
  const auto nu_ = scaled(u, h * W + h * beta2 * Phi);
  const auto nv_ = scaled(v, h * std::conj(W) + h * std::conj(beta2) * Phi);
  if (!nu_ || !nv_) return std::nullopt;
  return PointPair{*nu_, *nv_};
}

std::optional<PointPair> frozen_point_flow(Complex u, Complex v, Complex W, Complex beta2,
                                           Complex h) {
  const double modulus = std::norm(u);
  const auto nu_ = scaled(u, h * (W + beta2 * modulus));
  const auto nv_ = scaled(v, h * (std::conj(W) + std::conj(beta2) * modulus));
  if (!nu_ || !nv_) return std::nullopt;
  return PointPair{*nu_, *nv_};
}

FlowStatus gl_nonlinear_flow(DoubledState& state, std::span<const Complex> W, Complex beta2,
                             Complex h) {
  return apply_pairwise(state, W, [&](Complex u, Complex v, Complex w) {
    return gl_point_flow(u, v, w, beta2, h);
  });
}

FlowStatus frozen_modulus_flow(DoubledState& state, std::span<const Complex> W, Complex beta2,
                               Complex h) {
  return apply_pairwise(state, W, [&](Complex u, Complex v, Complex w) {
    return frozen_point_flow(u, v, w, beta2, h);
  });
}

std::optional<Complex> bernoulli_point_flow(Complex y, Complex c1, Complex c3) {
  // z = y^-2 is linear: z' = -2 c1 z - 2 c3.
  if (y == 0.0) return y;
  if (!(c1.real() <= kOverflowExponent)) return std::nullopt;
  const Complex c = 2.0 * c3 * y * y;
  const Complex w = 2.0 * c1;
  if (!principal_path(c, w)) return std::nullopt;
  // y e^{c1} / sqrt(1 - c phi1(w)) with the principal branch.
  return scaled(y, c1 - 0.5 * log1pc(-c * phi1(w)));
}

std::optional<Complex> taylor_point_flow(Complex y, Complex c1, Complex c2, Complex c3,
                                         double tol) {
  constexpr int K = 16;
  constexpr int kMaxSteps = 100000;
  if (y == 0.0) return y;
  std::array<Complex, K + 1> a{};
  std::array<Complex, K + 1> sq{};
  std::array<Complex, K + 1> cu{};
  double t = 0.0;
  for (int step = 0; step < kMaxSteps && t < 1.0; ++step) {
    a[0] = y;
    for (int k = 0; k < K; ++k) {
      Complex s2{0.0, 0.0};
      for (int i = 0; i <= k; ++i) s2 += a[i] * a[k - i];
      sq[k] = s2;
      Complex s3{0.0, 0.0};
      for (int i = 0; i <= k; ++i) s3 += sq[i] * a[k - i];
      cu[k] = s3;
      a[k + 1] = (c1 * a[k] + c2 * sq[k] + c3 * cu[k]) / static_cast<double>(k + 1);
    }
    const double scale = std::max(1.0, std::abs(y));
    double dt = 1.0 - t;
    for (int k : {K - 1, K}) {
      const double mag = std::abs(a[k]);
      if (mag > 0.0) dt = std::min(dt, 0.9 * std::pow(tol * scale / mag, 1.0 / k));
    }
    if (!(dt > 0.0)) return std::nullopt;
    if (t + dt > 1.0 || 1.0 - (t + dt) < 1e-14) dt = 1.0 - t;
    Complex acc = a[K];
    for (int k = K; k-- > 0;) acc = acc * dt + a[k];
    y = acc;
    t += dt;
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag()) ||
        std::log(std::abs(y)) > kOverflowExponent) {
      return std::nullopt;
    }
    if (y == 0.0) return y;
  }
  if (t < 1.0) return std::nullopt;
  return y;
}

FlowStatus polynomial_reaction_flow(DoubledState& state, std::span<const Complex> W,
                                    const NonlinearitySpec& spec, Complex h,
                                    const PolynomialFlowOptions& options) {
  if (spec.kind != NonlinearityKind::polynomial) {
    throw Error(ErrorCode::invalid_argument, "polynomial_reaction_flow needs a polynomial spec");
  }
  const bool closed_form = spec.beta2 == 0.0 && !options.force_taylor;
  const double tol = options.tol;
  auto scalar = [&](Complex y, Complex c1, Complex c2, Complex c3) -> std::optional<Complex> {
    if (closed_form) return bernoulli_point_flow(y, c1, c3);
    return taylor_point_flow(y, c1, c2, c3, tol);
  };
  return apply_pairwise(state, W, [&](Complex u, Complex v, Complex w) -> std::optional<PointPair> {
    const auto nu = scalar(u, h * (w + spec.beta1), h * spec.beta2, h * spec.beta3);
    if (!nu) return std::nullopt;
    const auto nv = scalar(v, h * std::conj(w + spec.beta1), h * std::conj(spec.beta2),
                           h * std::conj(spec.beta3));
    if (!nv) return std::nullopt;
    return PointPair{*nu, *nv};
  });
}

}  // namespace cosplit
