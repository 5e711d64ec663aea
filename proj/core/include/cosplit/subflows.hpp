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

#include <optional>
#include <span>

#include "cosplit/spectral.hpp"

namespace cosplit {

/// Solution u and its conjugate partner v, continued independently so that
/// complex substeps of non-holomorphic right-hand sides stay well defined.
/// Stored contiguously as [u | v] for batched transforms.
class DoubledState {
 public:
  DoubledState() = default;
  explicit DoubledState(std::size_t n) : n_(n), data_(2 * n) {}

  /// v = conj(u).
  static DoubledState from_field(std::span<const Complex> u);

  std::size_t size() const { return n_; }
  std::span<Complex> u() { return {data_.data(), n_}; }
  std::span<const Complex> u() const { return {data_.data(), n_}; }
  std::span<Complex> v() { return {data_.data() + n_, n_}; }
  std::span<const Complex> v() const { return {data_.data() + n_, n_}; }
  std::span<Complex> data() { return {data_.data(), data_.size()}; }
  std::span<const Complex> data() const { return {data_.data(), data_.size()}; }

  bool all_finite() const;

 private:
  std::size_t n_ = 0;
  ComplexBuffer data_;
};

enum class NonlinearityKind { none, polynomial, modulus_cubic };

/// polynomial:     f(u) = beta1 u + beta2 u^2 + beta3 u^3
/// modulus_cubic:  f(u) = beta2 |u|^2 u
struct NonlinearitySpec {
  NonlinearityKind kind = NonlinearityKind::none;
  Complex beta1{0.0, 0.0};
  Complex beta2{0.0, 0.0};
  Complex beta3{0.0, 0.0};

  static NonlinearitySpec none() { return {}; }
  static NonlinearitySpec polynomial(Complex b1, Complex b2, Complex b3) {
    return {NonlinearityKind::polynomial, b1, b2, b3};
  }
  static NonlinearitySpec modulus_cubic(Complex b2) {
    return {NonlinearityKind::modulus_cubic, {0.0, 0.0}, b2, {0.0, 0.0}};
  }
};

/// u <- u exp(h W), v <- v exp(h conj(W)). An empty W is zero.
FlowStatus potential_flow(DoubledState& state, std::span<const Complex> W, Complex h);

struct PointPair {
  Complex u;
  Complex v;
};

/// Exact unit-time flow of u' = h (W u + b u^2 v), v' = h (conj(W) v + conj(b) v^2 u).
/// Returns nullopt when the solution has a pole or leaves the principal
/// branch along the step, or the result would overflow.
std::optional<PointPair> gl_point_flow(Complex u, Complex v, Complex W, Complex beta2, Complex h);

/// Modulus frozen at |u|^2 of the step start.
std::optional<PointPair> frozen_point_flow(Complex u, Complex v, Complex W, Complex beta2,
                                           Complex h);

FlowStatus gl_nonlinear_flow(DoubledState& state, std::span<const Complex> W, Complex beta2,
                             Complex h);
FlowStatus frozen_modulus_flow(DoubledState& state, std::span<const Complex> W, Complex beta2,
                               Complex h);

/// Unit-time flow of y' = c1 y + c3 y^3 in closed form.
std::optional<Complex> bernoulli_point_flow(Complex y, Complex c1, Complex c3);

/// Unit-time flow of y' = c1 y + c2 y^2 + c3 y^3 by a fixed-order Taylor
/// method with local error control.
std::optional<Complex> taylor_point_flow(Complex y, Complex c1, Complex c2, Complex c3,
                                         double tol);

struct PolynomialFlowOptions {
  double tol = 1e-12;
  /// Use the Taylor integrator even when beta2 = 0.
  bool force_taylor = false;
};

/// u' = h (W u + f(u)), v' = h (conj(W) v + conj(f)(v)) with f polynomial.
FlowStatus polynomial_reaction_flow(DoubledState& state, std::span<const Complex> W,
                                    const NonlinearitySpec& spec, Complex h,
                                    const PolynomialFlowOptions& options = {});

}  // namespace cosplit
