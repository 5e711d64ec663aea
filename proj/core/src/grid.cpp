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
#include "cosplit/grid.hpp"

#include <cmath>
#include <numbers>

#include "cosplit/error.hpp"

namespace cosplit {

long Grid::wavenumber(std::size_t k, std::size_t M) {
  const auto kk = static_cast<long>(k);
  const auto MM = static_cast<long>(M);
  return kk < MM / 2 ? kk : kk - MM;
}

Grid::Grid(std::vector<std::size_t> sizes, std::vector<double> extents)
    : sizes_(std::move(sizes)), extents_(std::move(extents)) {
  if (sizes_.empty() || sizes_.size() > 3) {
    throw Error(ErrorCode::invalid_argument, "grid dimension must be 1, 2 or 3");
  }
  if (extents_.size() != sizes_.size()) {
    throw Error(ErrorCode::invalid_argument, "one extent per axis required");
  }
  total_ = 1;
  for (std::size_t l = 0; l < sizes_.size(); ++l) {
    if (sizes_[l] < 8 || sizes_[l] % 2 != 0) {
      throw Error(ErrorCode::invalid_argument,
                  "grid size must be even and >= 8, got " + std::to_string(sizes_[l]));
    }
    if (!(extents_[l] > 0.0) || !std::isfinite(extents_[l])) {
      throw Error(ErrorCode::invalid_argument, "grid extents must be positive");
    }
    total_ *= sizes_[l];
  }

  // Per-axis contributions; integer squares when L == pi.
  std::vector<std::vector<double>> axis(sizes_.size());
  for (std::size_t l = 0; l < sizes_.size(); ++l) {
    const bool unit = extents_[l] == std::numbers::pi;
    axis[l].resize(sizes_[l]);
    for (std::size_t k = 0; k < sizes_[l]; ++k) {
      const long m = wavenumber(k, sizes_[l]);
      if (unit) {
        axis[l][k] = static_cast<double>(m * m);
      } else {
        const double kappa = static_cast<double>(m) * std::numbers::pi / extents_[l];
        axis[l][k] = kappa * kappa;
      }
    }
  }
  eigenvalues_.resize(total_);
  for (std::size_t i = 0; i < total_; ++i) {
    std::size_t rest = i;
    double lambda = 0.0;
    for (std::size_t l = sizes_.size(); l-- > 0;) {
      lambda += axis[l][rest % sizes_[l]];
      rest /= sizes_[l];
    }
    eigenvalues_[i] = lambda;
  }
}

std::vector<double> Grid::axis_points(std::size_t axis) const {
  std::vector<double> x(sizes_.at(axis));
  const double h = spacing(axis);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = -extents_[axis] + static_cast<double>(j) * h;
  return x;
}

double Grid::spacing(std::size_t axis) const {
  return 2.0 * extents_.at(axis) / static_cast<double>(sizes_.at(axis));
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (std::size_t l = 0; l < dim(); ++l) v *= spacing(l);
  return v;
}

double Grid::domain_volume() const {
  double v = 1.0;
  for (double L : extents_) v *= 2.0 * L;
  return v;
}

std::vector<std::size_t> Grid::unflatten(std::size_t index) const {
  std::vector<std::size_t> idx(dim());
  for (std::size_t l = dim(); l-- > 0;) {
    idx[l] = index % sizes_[l];
    index /= sizes_[l];
  }
  return idx;
}

Grid make_grid(std::size_t dim, std::vector<std::size_t> sizes, std::vector<double> extents) {
  if (dim < 1 || dim > 3) throw Error(ErrorCode::invalid_argument, "dim must be 1, 2 or 3");
  if (sizes.size() != dim || extents.size() != dim) {
    throw Error(ErrorCode::invalid_argument, "sizes and extents must have dim entries");
  }
  return Grid(std::move(sizes), std::move(extents));
}

}  // namespace cosplit
