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
#include "cosplit/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cosplit/error.hpp"

namespace cosplit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_document: return "malformed-document";
    case ErrorCode::consistency_violation: return "consistency-violation";
    case ErrorCode::structure_violation: return "structure-violation";
    case ErrorCode::non_real_pivot: return "non-real-pivot";
    case ErrorCode::degenerate_fit: return "degenerate-fit";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::shape_mismatch: return "shape-mismatch";
    case ErrorCode::well_posedness: return "well-posedness";
    case ErrorCode::unknown_scheme: return "unknown-scheme";
    case ErrorCode::config_error: return "config-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::reference_cross_check: return "reference-cross-check";
    case ErrorCode::reference_blowup: return "reference-blowup";
  }
  return "error";
}

std::string_view to_string(StructureTag tag) {
  switch (tag) {
    case StructureTag::none: return "none";
    case StructureTag::symmetric: return "symmetric";
    case StructureTag::symmetric_conjugate: return "symmetric_conjugate";
    case StructureTag::alternating_conjugate: return "alternating_conjugate";
  }
  return "none";
}

std::optional<StructureTag> parse_structure_tag(std::string_view text) {
  for (auto tag : {StructureTag::none, StructureTag::symmetric, StructureTag::symmetric_conjugate,
                   StructureTag::alternating_conjugate}) {
    if (text == to_string(tag)) return tag;
  }
  return std::nullopt;
}

namespace {

bool near(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol; }

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// Odd-length bodies left after removing one alignment zero.
std::vector<std::span<const Complex>> aligned_bodies(std::span<const Complex> seq, double tol) {
  std::vector<std::span<const Complex>> bodies;
  if (seq.size() < 2) return bodies;
  if (std::abs(seq.front()) <= tol) bodies.push_back(seq.subspan(1));
  if (std::abs(seq.back()) <= tol) bodies.push_back(seq.first(seq.size() - 1));
  return bodies;
}

bool is_palindrome(std::span<const Complex> body, bool conjugate, double tol) {
  const std::size_t n = body.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex mirror = conjugate ? std::conj(body[n - 1 - k]) : body[n - 1 - k];
    if (!near(body[k], mirror, tol)) return false;
  }
  return true;
}

bool is_conjugate_concatenation(std::span<const Complex> body, double tol) {
  const std::size_t n = body.size();
  if (n < 2) return false;
  if (n % 2 == 0) {
    // H ++ conj(H) with no merged seam; both halves must start with the same kind.
    const std::size_t h = n / 2;
    if (h % 2 != 0) return false;
    for (std::size_t k = 0; k < h; ++k) {
      if (!near(body[h + k], std::conj(body[k]), tol)) return false;
    }
    return true;
  }
  // H = (h_0, ..., h_m), body = (h_0, ..., h_{m-1}, h_m + conj(h_0), conj(h_1), ..., conj(h_m)).
  const std::size_t m = (n - 1) / 2;
  if (m == 0 || m % 2 != 0) return false;
  for (std::size_t k = 1; k < m; ++k) {
    if (!near(body[m + k], std::conj(body[k]), tol)) return false;
  }
  return near(body[2 * m] + body[0], std::conj(body[m]), tol);
}

std::vector<CoefficientPair> to_pairs(const std::vector<Complex>& seq) {
  std::vector<CoefficientPair> pairs(seq.size() / 2);
  for (std::size_t j = 0; j < pairs.size(); ++j) pairs[j] = {seq[2 * j], seq[2 * j + 1]};
  return pairs;
}

std::vector<Complex> mirror(std::span<const Complex> kernel, bool conjugate) {
  std::vector<Complex> out(kernel.rbegin(), kernel.rend());
  if (conjugate) {
    for (auto& c : out) c = std::conj(c);
  }
  return out;
}

std::vector<Complex> place_alignment_zero(std::vector<Complex> body, Alignment alignment) {
  if (alignment == Alignment::leading_zero_a) {
    body.insert(body.begin(), Complex{0.0, 0.0});
  } else {
    body.push_back(Complex{0.0, 0.0});
  }
  return body;
}

SplittingScheme build_mirrored(std::span<const Complex> kernel, Complex pivot, Alignment alignment,
                               bool conjugate, StructureTag tag, std::string name,
                               int declared_order) {
  std::vector<Complex> body(kernel.begin(), kernel.end());
  body.push_back(pivot);
  const auto tail = mirror(kernel, conjugate);
  body.insert(body.end(), tail.begin(), tail.end());
  return SplittingScheme::create(std::move(name), to_pairs(place_alignment_zero(body, alignment)),
                                 declared_order, tag, "built");
}

}  // namespace

SplittingScheme SplittingScheme::create(std::string name, std::vector<CoefficientPair> pairs,
                                        int declared_order, StructureTag structure,
                                        std::string source) {
  if (pairs.empty()) {
    throw Error(ErrorCode::invalid_argument, "scheme '" + name + "' has no stages");
  }
  if (declared_order < 1) {
    throw Error(ErrorCode::invalid_argument,
                "scheme '" + name + "' declares non-positive order " +
                    std::to_string(declared_order));
  }
  Complex sum_a{0.0, 0.0};
  Complex sum_b{0.0, 0.0};
  for (const auto& p : pairs) {
    if (!std::isfinite(p.a.real()) || !std::isfinite(p.a.imag()) || !std::isfinite(p.b.real()) ||
        !std::isfinite(p.b.imag())) {
      throw Error(ErrorCode::invalid_argument, "scheme '" + name + "' has non-finite coefficients");
    }
    sum_a += p.a;
    sum_b += p.b;
  }
  if (std::abs(sum_a - 1.0) > kConsistencyTolerance) {
    throw Error(ErrorCode::consistency_violation,
                "scheme '" + name + "': sum of a_j = " + format_complex(sum_a) + " != 1");
  }
  if (std::abs(sum_b - 1.0) > kConsistencyTolerance) {
    throw Error(ErrorCode::consistency_violation,
                "scheme '" + name + "': sum of b_j = " + format_complex(sum_b) + " != 1");
  }

  SplittingScheme scheme;
  scheme.name_ = std::move(name);
  scheme.pairs_ = std::move(pairs);
  scheme.declared_order_ = declared_order;
  scheme.structure_ = structure;
  scheme.source_ = std::move(source);
  if (structure != StructureTag::none) {
    const auto seq = scheme.sequence();
    if (!matches_structure(seq, structure)) {
      throw Error(ErrorCode::structure_violation,
                  "scheme '" + scheme.name_ + "' does not match declared structure " +
                      std::string(to_string(structure)));
    }
  }
  return scheme;
}

std::vector<Complex> SplittingScheme::sequence() const {
  std::vector<Complex> seq;
  seq.reserve(2 * pairs_.size());
  for (const auto& p : pairs_) {
    seq.push_back(p.a);
    seq.push_back(p.b);
  }
  return seq;
}

bool SplittingScheme::has_real_coefficients(double tol) const {
  return std::all_of(pairs_.begin(), pairs_.end(), [tol](const CoefficientPair& p) {
    return std::abs(p.a.imag()) <= tol && std::abs(p.b.imag()) <= tol;
  });
}

bool SplittingScheme::has_real_a(double tol) const {
  return std::all_of(pairs_.begin(), pairs_.end(),
                     [tol](const CoefficientPair& p) { return std::abs(p.a.imag()) <= tol; });
}

bool SplittingScheme::has_nonnegative_real_a(double tol) const {
  return std::all_of(pairs_.begin(), pairs_.end(), [tol](const CoefficientPair& p) {
    return std::abs(p.a.imag()) <= tol && p.a.real() >= -tol;
  });
}

SplittingScheme SplittingScheme::conjugated() const {
  auto pairs = pairs_;
  for (auto& p : pairs) {
    p.a = std::conj(p.a);
    p.b = std::conj(p.b);
  }
  // Conjugation preserves every pattern.
  return create(name_ + "_conj", std::move(pairs), declared_order_, structure_, source_);
}

bool matches_structure(std::span<const Complex> sequence, StructureTag tag, double tol) {
  switch (tag) {
    case StructureTag::none:
      return true;
    case StructureTag::symmetric:
    case StructureTag::symmetric_conjugate: {
      const bool conj = tag == StructureTag::symmetric_conjugate;
      for (auto body : aligned_bodies(sequence, tol)) {
        if (is_palindrome(body, conj, tol)) return true;
      }
      return false;
    }
    case StructureTag::alternating_conjugate: {
      for (auto body : aligned_bodies(sequence, tol)) {
        if (is_conjugate_concatenation(body, tol)) return true;
      }
      return is_conjugate_concatenation(sequence, tol);
    }
  }
  return false;
}

StructureTag classify_structure(std::span<const Complex> sequence, double tol) {
  for (auto tag : {StructureTag::alternating_conjugate, StructureTag::symmetric,
                   StructureTag::symmetric_conjugate}) {
    if (matches_structure(sequence, tag, tol)) return tag;
  }
  return StructureTag::none;
}

StructureTag classify_structure(const SplittingScheme& scheme, double tol) {
  const auto seq = scheme.sequence();
  return classify_structure(seq, tol);
}

SplittingScheme build_symmetric(std::span<const Complex> kernel, Complex pivot,
                                Alignment alignment, std::string name, int declared_order) {
  return build_mirrored(kernel, pivot, alignment, false, StructureTag::symmetric, std::move(name),
                        declared_order);
}

SplittingScheme build_symmetric_conjugate(std::span<const Complex> kernel, Complex pivot,
                                          Alignment alignment, std::string name,
                                          int declared_order) {
  if (pivot.imag() != 0.0) {
    throw Error(ErrorCode::non_real_pivot,
                "symmetric-conjugate pivot must be real, got " + format_complex(pivot));
  }
  return build_mirrored(kernel, pivot, alignment, true, StructureTag::symmetric_conjugate,
                        std::move(name), declared_order);
}

SplittingScheme build_alternating_conjugate(std::span<const Complex> half, Alignment alignment,
                                            std::string name, int declared_order) {
  if (half.size() % 2 == 0) {
    throw Error(ErrorCode::invalid_argument,
                "alternating-conjugate half must have odd length, got " +
                    std::to_string(half.size()));
  }
  std::vector<Complex> body(half.begin(), half.end());
  body.back() += std::conj(half.front());
  for (std::size_t k = 1; k < half.size(); ++k) body.push_back(std::conj(half[k]));
  return SplittingScheme::create(std::move(name), to_pairs(place_alignment_zero(body, alignment)),
                                 declared_order, StructureTag::alternating_conjugate, "built");
}

StabilityVerdict stability_predicate(const SplittingScheme& scheme, Complex alpha_K, int K,
                                     double tolerance) {
  if (K < 1) throw Error(ErrorCode::invalid_argument, "K must be >= 1");
  if (tolerance < 0.0 || tolerance > 1e-14) {
    throw Error(ErrorCode::invalid_argument, "stability tolerance must lie in [0, 1e-14]");
  }
  const double sign = (K % 2 == 0) ? 1.0 : -1.0;
  StabilityVerdict verdict;
  for (const auto& p : scheme.pairs()) {
    const double m =
        sign * (p.a.real() * alpha_K.real() - p.a.imag() * alpha_K.imag());
    verdict.margin.push_back(m);
    const bool ok = m <= tolerance;
    verdict.per_stage.push_back(ok);
    verdict.overall = verdict.overall && ok;
  }
  return verdict;
}

}  // namespace cosplit
