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

#include <cstddef>
#include <vector>

namespace cosplit {

/// Periodic tensor-product grid on prod_l [-L_l, L_l).
///
/// Points x_j = -L + j * 2L/M. Data are stored in C order (last axis fastest).
/// Modes use the FFT layout: index k maps to wavenumber m = k for k < M/2 and
/// m = k - M for k >= M/2, so the Nyquist index carries m = -M/2.
class Grid {
 public:
  Grid(std::vector<std::size_t> sizes, std::vector<double> extents);

  std::size_t dim() const { return sizes_.size(); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  const std::vector<double>& extents() const { return extents_; }
  std::size_t size() const { return total_; }

  /// lambda_m = sum_l (m_l pi / L_l)^2, one per mode in storage order.
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }

  /// Signed integer wavenumber of FFT index k along an axis of length M.
  static long wavenumber(std::size_t k, std::size_t M);

  std::vector<double> axis_points(std::size_t axis) const;
  double spacing(std::size_t axis) const;
  double cell_volume() const;
  double domain_volume() const;

  /// Multi-index of a flat storage index.
  std::vector<std::size_t> unflatten(std::size_t index) const;

  bool operator==(const Grid& other) const {
    return sizes_ == other.sizes_ && extents_ == other.extents_;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<double> extents_;
  std::size_t total_ = 0;
  std::vector<double> eigenvalues_;
};

/// Throws invalid_argument for dim outside 1..3, odd or small sizes, or
/// non-positive extents.
Grid make_grid(std::size_t dim, std::vector<std::size_t> sizes, std::vector<double> extents);

}  // namespace cosplit
