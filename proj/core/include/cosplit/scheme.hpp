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

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosplit {

using Complex = std::complex<double>;

/// Coefficient patterns of a splitting scheme.
///
/// Patterns are checked on the application-order sequence
/// (a_1, b_1, a_2, b_2, ..., a_s, b_s) after removing the single alignment
/// zero (a_1 = 0 or b_s = 0):
///   symmetric              palindrome
///   symmetric_conjugate    palindrome up to complex conjugation
///   alternating_conjugate  a half H followed by conj(H), the two seam
///                          flows of equal kind merged into one
enum class StructureTag { none, symmetric, symmetric_conjugate, alternating_conjugate };

std::string_view to_string(StructureTag tag);
std::optional<StructureTag> parse_structure_tag(std::string_view text);

/// Which coefficient vanishes to make room for the mirrored pattern.
enum class Alignment { leading_zero_a, trailing_zero_b };

/// One stage: the linear flow with step a*tau is applied before the
/// multiplication flow with step b*tau.
struct CoefficientPair {
  Complex a;
  Complex b;
};

inline constexpr double kConsistencyTolerance = 1e-12;
inline constexpr double kStructureTolerance = 1e-12;

/// An exponential splitting method
///   S_tau = E_{b_s tau F2} o E_{a_s tau F1} o ... o E_{b_1 tau F2} o E_{a_1 tau F1}.
/// Immutable once created; create() enforces first-order consistency and that
/// the coefficients carry the declared structure pattern.
class SplittingScheme {
 public:
  static SplittingScheme create(std::string name, std::vector<CoefficientPair> pairs,
                                int declared_order, StructureTag structure,
                                std::string source = {});

  const std::string& name() const { return name_; }
  const std::vector<CoefficientPair>& pairs() const { return pairs_; }
  std::size_t stages() const { return pairs_.size(); }
  int declared_order() const { return declared_order_; }
  StructureTag structure() const { return structure_; }
  const std::string& source() const { return source_; }

  /// Flattened application-order sequence (a_1, b_1, ..., a_s, b_s).
  std::vector<Complex> sequence() const;

  bool has_real_coefficients(double tol = kStructureTolerance) const;
  bool has_real_a(double tol = kStructureTolerance) const;
  /// All a_j real and >= 0 (the parabolic-safe class).
  bool has_nonnegative_real_a(double tol = kStructureTolerance) const;

  /// Scheme with every coefficient conjugated (structure re-checked).
  SplittingScheme conjugated() const;

 private:
  SplittingScheme() = default;

  std::string name_;
  std::vector<CoefficientPair> pairs_;
  int declared_order_ = 1;
  StructureTag structure_ = StructureTag::none;
  std::string source_;
};

bool matches_structure(std::span<const Complex> sequence, StructureTag tag,
                       double tol = kStructureTolerance);

/// Most specific matching tag. Order of preference: alternating_conjugate,
/// symmetric, symmetric_conjugate. For real coefficients symmetric and
/// symmetric_conjugate coincide and the real tag wins.
StructureTag classify_structure(std::span<const Complex> sequence,
                                double tol = kStructureTolerance);
StructureTag classify_structure(const SplittingScheme& scheme,
                                double tol = kStructureTolerance);

/// Kernels are given in application order, starting with the kind that follows
/// the alignment zero (a b-coefficient for leading_zero_a).
SplittingScheme build_symmetric(std::span<const Complex> kernel, Complex pivot,
                                Alignment alignment, std::string name = "symmetric",
                                int declared_order = 1);
SplittingScheme build_symmetric_conjugate(std::span<const Complex> kernel, Complex pivot,
                                          Alignment alignment,
                                          std::string name = "symmetric_conjugate",
                                          int declared_order = 1);
/// `half` must have odd length so that it begins and ends with the same kind;
/// its last flow merges with the first flow of the conjugated copy.
SplittingScheme build_alternating_conjugate(std::span<const Complex> half, Alignment alignment,
                                            std::string name = "alternating_conjugate",
                                            int declared_order = 1);

struct StabilityVerdict {
  std::vector<bool> per_stage;
  bool overall = true;
  /// (-1)^K Re(a_j alpha_K), one entry per stage.
  std::vector<double> margin;
};

/// Per-stage sign test for the highest Laplacian power alpha_K Delta^K.
/// `tolerance` may absorb roundoff up to 1e-14.
StabilityVerdict stability_predicate(const SplittingScheme& scheme, Complex alpha_K, int K,
                                     double tolerance = 0.0);

}  // namespace cosplit
