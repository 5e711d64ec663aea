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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../common/scheme_factory.hpp"
#include "cosplit/catalog.hpp"
#include "cosplit/error.hpp"
#include "cosplit/scheme.hpp"

namespace cosplit {
namespace {

const Complex I{0.0, 1.0};

SplittingScheme strang() {
  return SplittingScheme::create("strang", {{0.5, 1.0}, {0.5, 0.0}}, 2, StructureTag::symmetric);
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::invalid_argument;
}

TEST(Scheme, StrangIsSymmetric) {
  const auto s = strang();
  EXPECT_EQ(classify_structure(s), StructureTag::symmetric);
  EXPECT_TRUE(s.has_real_coefficients());
  EXPECT_TRUE(s.has_nonnegative_real_a());
  EXPECT_EQ(s.stages(), 2u);
}

TEST(Scheme, SequenceIsApplicationOrder) {
  const auto seq = strang().sequence();
  ASSERT_EQ(seq.size(), 4u);
  EXPECT_EQ(seq[0], Complex(0.5));
  EXPECT_EQ(seq[1], Complex(1.0));
  EXPECT_EQ(seq[2], Complex(0.5));
  EXPECT_EQ(seq[3], Complex(0.0));
}

TEST(Scheme, RejectsInconsistentCoefficients) {
  EXPECT_EQ(code_of([] {
              SplittingScheme::create("bad", {{0.5, 1.0}, {0.4, 0.0}}, 2, StructureTag::none);
            }),
            ErrorCode::consistency_violation);
  EXPECT_EQ(code_of([] {
              SplittingScheme::create("bad", {{1.0, 0.9}}, 1, StructureTag::none);
            }),
            ErrorCode::consistency_violation);
}

TEST(Scheme, RejectsWrongDeclaredStructure) {
  EXPECT_EQ(code_of([] {
              SplittingScheme::create("lt", {{1.0, 1.0}}, 1, StructureTag::symmetric_conjugate);
            }),
            ErrorCode::structure_violation);
}

TEST(Scheme, RejectsEmptyAndBadOrder) {
  EXPECT_EQ(code_of([] { SplittingScheme::create("e", {}, 1, StructureTag::none); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { SplittingScheme::create("o", {{1.0, 1.0}}, 0, StructureTag::none); }),
            ErrorCode::invalid_argument);
}

TEST(Scheme, SymmetricConjugateRequiresRealPivot) {
  const std::vector<Complex> kernel{Complex(0.25, 0.1)};
  EXPECT_EQ(code_of([&] {
              build_symmetric_conjugate(kernel, Complex(0.5, 0.1), Alignment::leading_zero_a);
            }),
            ErrorCode::non_real_pivot);
}

TEST(Scheme, AlternatingConjugateRequiresOddHalf) {
  const std::vector<Complex> half{0.5, 0.5};
  EXPECT_EQ(code_of([&] { build_alternating_conjugate(half, Alignment::leading_zero_a); }),
            ErrorCode::invalid_argument);
}

TEST(Scheme, AlternatingConjugateMergesSeam) {
  // H = (a, b, c) with a real sum: body (a, b, c + conj(a), conj(b), conj(c)).
  const Complex a{0.25, 0.2};
  const Complex b{0.5, -0.3};
  const Complex c{0.25, 0.1};
  const std::vector<Complex> half{a, b, c};
  const auto s = build_alternating_conjugate(half, Alignment::trailing_zero_b);
  const auto seq = s.sequence();
  ASSERT_EQ(seq.size(), 6u);
  EXPECT_EQ(seq[2], c + std::conj(a));
  EXPECT_EQ(seq[3], std::conj(b));
  EXPECT_EQ(seq[5], Complex(0.0));
  EXPECT_EQ(classify_structure(s), StructureTag::alternating_conjugate);
}

TEST(Scheme, BuilderOutputsClassifyToTheirTag) {
  testing::SchemeFactory factory(7);
  for (auto tag : {StructureTag::symmetric, StructureTag::symmetric_conjugate,
                   StructureTag::alternating_conjugate}) {
    for (int i = 0; i < 200; ++i) {
      const auto s = factory.make(tag);
      ASSERT_EQ(classify_structure(s), tag) << to_string(tag) << " trial " << i;
    }
  }
}

TEST(Scheme, RealSchemesPreferRealTags) {
  testing::SchemeFactory factory(11);
  for (int i = 0; i < 200; ++i) {
    const auto sym = factory.make(StructureTag::symmetric, true);
    EXPECT_EQ(classify_structure(sym), StructureTag::symmetric);
    const auto sc = factory.make(StructureTag::symmetric_conjugate, true);
    EXPECT_EQ(classify_structure(sc), StructureTag::symmetric);
    EXPECT_TRUE(matches_structure(sc.sequence(), StructureTag::symmetric_conjugate));
  }
}

TEST(Scheme, RealClassificationNeverPicksConjugateTagAlone) {
  testing::SchemeFactory factory(13);
  for (auto tag : {StructureTag::symmetric, StructureTag::symmetric_conjugate,
                   StructureTag::alternating_conjugate}) {
    for (int i = 0; i < 100; ++i) {
      const auto s = factory.make(tag, true);
      const auto seq = s.sequence();
      const auto got = classify_structure(seq);
      if (got == StructureTag::symmetric_conjugate) {
        EXPECT_TRUE(matches_structure(seq, StructureTag::symmetric));
      }
      if (got == StructureTag::alternating_conjugate) {
        EXPECT_TRUE(matches_structure(seq, StructureTag::alternating_conjugate));
      }
    }
  }
}

TEST(Scheme, ConjugatedKeepsStructure) {
  testing::SchemeFactory factory(17);
  for (auto tag : {StructureTag::symmetric, StructureTag::symmetric_conjugate,
                   StructureTag::alternating_conjugate}) {
    const auto s = factory.make(tag);
    const auto c = s.conjugated();
    EXPECT_EQ(classify_structure(c), tag);
    for (std::size_t j = 0; j < s.stages(); ++j) {
      EXPECT_EQ(c.pairs()[j].a, std::conj(s.pairs()[j].a));
      EXPECT_EQ(c.pairs()[j].b, std::conj(s.pairs()[j].b));
    }
  }
}

TEST(Stability, MarginSignFollowsK) {
  const auto s = SplittingScheme::create("c", {{Complex(0.5, 0.5), 0.5}, {Complex(0.5, -0.5), 0.5}},
                                         1, StructureTag::none);
  // K = 1, alpha_1 = 1 + 10i: margin_j = -(Re a Re alpha - Im a Im alpha).
  const auto v = stability_predicate(s, Complex(1.0, 10.0), 1);
  ASSERT_EQ(v.margin.size(), 2u);
  EXPECT_NEAR(v.margin[0], -(0.5 - 5.0), 1e-15);
  EXPECT_NEAR(v.margin[1], -(0.5 + 5.0), 1e-15);
  EXPECT_FALSE(v.per_stage[0]);
  EXPECT_TRUE(v.per_stage[1]);
  EXPECT_FALSE(v.overall);
}

TEST(Stability, InvariantUnderPositiveScaling) {
  testing::SchemeFactory factory(19);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int i = 0; i < 300; ++i) {
    const auto s = factory.make(StructureTag::symmetric_conjugate);
    const Complex alpha{d(rng), d(rng)};
    const int K = 1 + i % 4;
    const bool base = stability_predicate(s, alpha, K).overall;
    EXPECT_EQ(stability_predicate(s, alpha * scale(rng), K).overall, base);
  }
}

TEST(Stability, NonnegativeRealAAlwaysStableForWellPosedAlpha) {
  for (const auto& s : builtin_catalog()) {
    if (!s.has_nonnegative_real_a()) continue;
    for (int K = 1; K <= 4; ++K) {
      const double sign = (K % 2 == 0) ? -1.0 : 1.0;
      for (double im : {0.0, 1.0, -10.0, 100.0}) {
        const Complex alpha{sign * 0.7, im};
        EXPECT_TRUE(stability_predicate(s, alpha, K).overall) << s.name() << " K=" << K;
      }
    }
  }
}

TEST(Stability, ToleranceBounds) {
  EXPECT_THROW(stability_predicate(strang(), 1.0, 1, 1e-10), Error);
  EXPECT_THROW(stability_predicate(strang(), 1.0, 0), Error);
  EXPECT_NO_THROW(stability_predicate(strang(), 1.0, 1, 1e-14));
}

TEST(Scheme, TagRoundTrip) {
  for (auto tag : {StructureTag::none, StructureTag::symmetric, StructureTag::symmetric_conjugate,
                   StructureTag::alternating_conjugate}) {
    EXPECT_EQ(parse_structure_tag(to_string(tag)), tag);
  }
  EXPECT_FALSE(parse_structure_tag("palindrome").has_value());
}

}  // namespace
}  // namespace cosplit
