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
#include "cosplit/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "cosplit/error.hpp"

namespace cosplit {

namespace detail {

void* aligned_alloc_bytes(std::size_t bytes) {
  void* p = fftw_malloc(std::max<std::size_t>(bytes, 1));
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void aligned_free_bytes(void* p) noexcept { fftw_free(p); }

}  // namespace detail

namespace {

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays is. Plans live for the whole process.
class PlanCache {
 public:
  fftw_plan get(const std::vector<std::size_t>& sizes, int howmany, int sign, bool aligned) {
    const Key key{sizes, howmany, sign, aligned};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> n(sizes.begin(), sizes.end());
    std::size_t total = 1;
    for (auto s : sizes) total *= s;
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total * howmany));
    unsigned flags = FFTW_ESTIMATE;
    if (!aligned) flags |= FFTW_UNALIGNED;
    fftw_plan plan = fftw_plan_many_dft(static_cast<int>(n.size()), n.data(), howmany, scratch,
                                        nullptr, 1, static_cast<int>(total), scratch, nullptr, 1,
                                        static_cast<int>(total), sign, flags);
    fftw_free(scratch);
    if (plan == nullptr) throw Error(ErrorCode::invalid_argument, "FFT planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::tuple<std::vector<std::size_t>, int, int, bool>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

SpectralTransform::SpectralTransform(const Grid& grid) : grid_(grid) {}

void SpectralTransform::execute(std::span<Complex> data, int sign) const {
  const std::size_t n = grid_.size();
  if (data.empty() || data.size() % n != 0) {
    throw Error(ErrorCode::shape_mismatch, "field size " + std::to_string(data.size()) +
                                               " does not match grid size " + std::to_string(n));
  }
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(ptr)) == 0;
  const int howmany = static_cast<int>(data.size() / n);
  fftw_execute_dft(plan_cache().get(grid_.sizes(), howmany, sign, aligned), ptr, ptr);
}

void SpectralTransform::forward(std::span<Complex> data, TransformCounter& counter) const {
  execute(data, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : data) c *= scale;
  counter.add_forward();
}

void SpectralTransform::inverse(std::span<Complex> data, TransformCounter& counter) const {
  execute(data, FFTW_BACKWARD);
  counter.add_inverse();
}

ComplexBuffer to_spectrum(const SpectralTransform& transform, std::span<const Complex> field,
                          TransformCounter& counter) {
  if (field.size() != transform.grid().size()) {
    throw Error(ErrorCode::shape_mismatch, "field does not match grid");
  }
  ComplexBuffer out(field.begin(), field.end());
  transform.forward(out, counter);
  return out;
}

ComplexBuffer to_physical(const SpectralTransform& transform, std::span<const Complex> spectrum,
                          TransformCounter& counter) {
  if (spectrum.size() != transform.grid().size()) {
    throw Error(ErrorCode::shape_mismatch, "spectrum does not match grid");
  }
  ComplexBuffer out(spectrum.begin(), spectrum.end());
  transform.inverse(out, counter);
  return out;
}

std::vector<Complex> linear_symbol(std::span<const Complex> alphas, const Grid& grid) {
  if (alphas.empty()) throw Error(ErrorCode::invalid_argument, "empty coefficient list");
  const auto& lambda = grid.eigenvalues();
  std::vector<Complex> sigma(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double x = -lambda[i];
    Complex acc = alphas.back();
    for (std::size_t k = alphas.size() - 1; k-- > 0;) acc = acc * x + alphas[k];
    sigma[i] = acc;
  }
  return sigma;
}

Complex complex_expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

FlowStatus linear_flow(std::span<Complex> spectrum, std::span<const Complex> symbol, Complex h) {
  if (spectrum.size() != symbol.size()) {
    throw Error(ErrorCode::shape_mismatch, "symbol does not match spectrum");
  }
  for (const auto& s : symbol) {
    if ((h * s).real() > kOverflowExponent) return FlowStatus::blowup;
  }
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    spectrum[i] += spectrum[i] * complex_expm1(h * symbol[i]);
  }
  return FlowStatus::ok;
}

double l2_norm(const Grid& grid, std::span<const Complex> field) {
  double s = 0.0;
  for (const auto& c : field) s += std::norm(c);
  return std::sqrt(grid.cell_volume() * s);
}

double l2_norm_real(const Grid& grid, std::span<const Complex> field) {
  double s = 0.0;
  for (const auto& c : field) s += c.real() * c.real();
  return std::sqrt(grid.cell_volume() * s);
}

double spectral_l2_norm(const Grid& grid, std::span<const Complex> spectrum) {
  double s = 0.0;
  for (const auto& c : spectrum) s += std::norm(c);
  return std::sqrt(grid.domain_volume() * s);
}

double spectral_tail_fraction(const Grid& grid, std::span<const Complex> spectrum) {
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const auto idx = grid.unflatten(i);
    bool high = false;
    for (std::size_t l = 0; l < grid.dim(); ++l) {
      const auto M = grid.sizes()[l];
      const auto m = std::abs(Grid::wavenumber(idx[l], M));
      if (2 * static_cast<std::size_t>(m) > M / 2) high = true;
    }
    const double w = std::norm(spectrum[i]);
    total += w;
    if (high) tail += w;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace cosplit
