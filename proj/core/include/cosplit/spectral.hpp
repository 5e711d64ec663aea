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

#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <new>
#include <span>
#include <vector>

#include "cosplit/grid.hpp"

namespace cosplit {

using Complex = std::complex<double>;

namespace detail {
void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free_bytes(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage suitable for the FFT backend.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) throw std::bad_alloc();
    return static_cast<T*>(detail::aligned_alloc_bytes(n * sizeof(T)));
  }
  void deallocate(T* p, std::size_t) noexcept { detail::aligned_free_bytes(p); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Counts full d-dimensional transforms. A batched transform of the doubled
/// pair (u, v) counts once. Safe under concurrent increments.
class TransformCounter {
 public:
  struct Snapshot {
    std::uint64_t forward = 0;
    std::uint64_t inverse = 0;
    std::uint64_t total() const { return forward + inverse; }
  };

  void add_forward(std::uint64_t n = 1) { forward_.fetch_add(n, std::memory_order_relaxed); }
  void add_inverse(std::uint64_t n = 1) { inverse_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t forward() const { return forward_.load(std::memory_order_relaxed); }
  std::uint64_t inverse() const { return inverse_.load(std::memory_order_relaxed); }
  std::uint64_t total() const { return forward() + inverse(); }
  Snapshot snapshot() const { return {forward(), inverse()}; }

 private:
  std::atomic<std::uint64_t> forward_{0};
  std::atomic<std::uint64_t> inverse_{0};
};

/// In-place FFT over a grid, on one field or on a contiguous batch of fields.
///
/// Normalization: forward carries 1/N, inverse is unscaled, so the spectrum
/// holds the coefficients c_m of u(x_j) = sum_m c_m exp(i m pi (x_j + L) / L)
/// and the discrete L2 norm obeys ||u||^2 = |Omega| * sum_m |c_m|^2.
class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid& grid);

  const Grid& grid() const { return grid_; }

  /// data.size() must be a positive multiple of grid().size().
  void forward(std::span<Complex> data, TransformCounter& counter) const;
  void inverse(std::span<Complex> data, TransformCounter& counter) const;

 private:
  void execute(std::span<Complex> data, int sign) const;

  Grid grid_;
};

ComplexBuffer to_spectrum(const SpectralTransform& transform, std::span<const Complex> field,
                          TransformCounter& counter);
ComplexBuffer to_physical(const SpectralTransform& transform, std::span<const Complex> spectrum,
                          TransformCounter& counter);

/// sigma_m = sum_k alpha_k (-lambda_m)^k by Horner's rule.
std::vector<Complex> linear_symbol(std::span<const Complex> alphas, const Grid& grid);

inline constexpr double kOverflowExponent = 700.0;

/// exp(z) - 1 without cancellation for small |z|. Flows update y += y *
/// complex_expm1(e) so that rounding does not drift over many tiny steps.
Complex complex_expm1(Complex z);

enum class FlowStatus { ok, blowup };

/// spectrum_m *= exp(h sigma_m). Leaves the data untouched and reports
/// blowup if some Re(h sigma_m) exceeds kOverflowExponent.
FlowStatus linear_flow(std::span<Complex> spectrum, std::span<const Complex> symbol, Complex h);

/// sqrt(cell_volume * sum |u_j|^2).
double l2_norm(const Grid& grid, std::span<const Complex> field);
/// Same norm restricted to the real part.
double l2_norm_real(const Grid& grid, std::span<const Complex> field);
/// sqrt(|Omega| * sum |c_m|^2); equals l2_norm of the physical field.
double spectral_l2_norm(const Grid& grid, std::span<const Complex> spectrum);

/// Fraction of spectral mass in the top octave: modes with max_l |m_l| / (M_l/2) > 1/2.
double spectral_tail_fraction(const Grid& grid, std::span<const Complex> spectrum);

}  // namespace cosplit
