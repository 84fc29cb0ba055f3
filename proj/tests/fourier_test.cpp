// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "freiman/errors.hpp"
#include "freiman/fourier.hpp"
#include "freiman/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace freiman;
using testutil::make_set;

namespace {

void expect_transform(const DualFunc& t, std::vector<Complex> expected) {
  ASSERT_EQ(t.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_LE(std::abs(t[static_cast<ElementIndex>(i)] - expected[i]), 1e-12);
}

TEST(Dft, FullIndicatorOfZ2) { expect_transform(dft(indicator(GroupSet::full(GroupSpec({2})))), {2.0, 0.0}); }

TEST(Dft, DiracAtZero) { expect_transform(dft(point_mass(GroupSpec({2}), 0)), {1.0, 1.0}); }

TEST(Dft, DiracAtOneIsSignCharacter) { expect_transform(dft(point_mass(GroupSpec({2}), 1)), {1.0, -1.0}); }

TEST(Dft, MatchesDirectSumOracle) {
  const GroupSpec g({3, 4, 2});
  const auto mod = oracle::moduli_of(g);
  Rng rng(1);
  RationalFunc f(g);
  for (ElementIndex x = 0; x < g.order(); ++x) f.set(x, testutil::q(static_cast<long>(rng.below(9)) - 4, 3));
  const DualFunc t = dft(f);
  const auto ref = oracle::to_func(f);
  for (ElementIndex gamma = 0; gamma < g.order(); ++gamma) {
    EXPECT_LE(std::abs(t[gamma] - oracle::dft_at(mod, ref, g.element(gamma).coords)), 1e-9);
  }
}

TEST(Dft, FactoredAgreesWithNaive) {
  const GroupSpec g({4, 3, 5});
  Rng rng(2);
  std::vector<double> values(g.order());
  for (auto& v : values) v = static_cast<double>(rng.below(1000)) / 37.0;
  const DualFunc naive = dft(g, values, TransformMethod::naive);
  const DualFunc fast = dft(g, values, TransformMethod::factored);
  double scale = 0;
  for (auto v : values) scale += std::abs(v);
  for (ElementIndex i = 0; i < g.order(); ++i) EXPECT_LE(std::abs(naive[i] - fast[i]), 1e-9 * scale);
}

TEST(Spectrum, SubgroupIndicatorPicksAnnihilatorCharacters) {
  const GroupSpec g({2, 2});
  const GroupSet v = make_set(g, {{0, 0}, {1, 0}});
  const CharSet s = spectrum(indicator(v), 0.5);
  // V^perp = {(0,0), (0,1)}.
  EXPECT_EQ(s.indices(), (std::vector<ElementIndex>{0, 1}));
}

TEST(Spectrum, TrivialCharacterAlwaysIncludedForNonnegative) {
  const GroupSpec g({3, 5});
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    InstanceParams p;
    p.size = 1 + rng.below(14);
    const GroupSet a = generate_instance(InstanceKind::random, g, p, rng.next());
    EXPECT_TRUE(spectrum(indicator(a), 1.0).contains(0));
  }
}

TEST(Spectrum, FullGroupOnlyTrivial) {
  const CharSet s = spectrum(indicator(GroupSet::full(GroupSpec({2, 3}))), 0.5);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.contains(0));
}

TEST(Spectrum, ZeroFunctionAndBadThresholdAreDomainErrors) {
  const GroupSpec g({4});
  EXPECT_THROW(spectrum(RationalFunc(g), 0.5), DomainError);
  EXPECT_THROW(spectrum(point_mass(g, 0), 0.0), DomainError);
  EXPECT_THROW(spectrum(point_mass(g, 0), 1.5), DomainError);
}

TEST(Spectrum, GuardBandIsOverInclusive) {
  // |f^(gamma)| = 1 exactly on every character of a Dirac; asking for
  // threshold 1 must keep all of them despite rounding.
  const GroupSpec g({7, 3});
  EXPECT_EQ(spectrum(point_mass(g, 5), 1.0).size(), g.order());
}

TEST(Annihilator, TrivialAndFull) {
  const GroupSpec g({2, 4});
  EXPECT_EQ(annihilator(CharSet::trivial(g)), GroupSet::full(g));
  EXPECT_EQ(annihilator(CharSet::all(g)), GroupSet::singleton(g, 0));
}

TEST(Annihilator, DualOfLineInKleinFour) {
  const GroupSpec g({2, 2});
  const GroupSet v = make_set(g, {{0, 0}, {1, 0}});
  EXPECT_EQ(annihilator(dual_annihilator(v)), v);
}

TEST(Annihilator, MatchesCongruenceOracle) {
  const GroupSpec g({4, 6});
  const auto mod = oracle::moduli_of(g);
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    CharSet gamma(g);
    std::vector<oracle::Coords> chars;
    for (std::size_t i = 0, n = rng.below(4); i < n; ++i) {
      const auto c = static_cast<ElementIndex>(rng.below(g.order()));
      gamma.insert(c);
      chars.push_back(g.element(c).coords);
    }
    const GroupSet perp = annihilator(gamma);
    EXPECT_EQ(oracle::to_set(perp), oracle::annihilator(mod, chars));
    EXPECT_TRUE(is_subgroup(perp));
  }
}

TEST(Annihilator, UnionIntersects) {
  const GroupSpec g({3, 9});
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    CharSet a(g), b(g);
    a.insert(static_cast<ElementIndex>(rng.below(g.order())));
    b.insert(static_cast<ElementIndex>(rng.below(g.order())));
    b.insert(static_cast<ElementIndex>(rng.below(g.order())));
    EXPECT_EQ(annihilator(a | b), annihilator(a) & annihilator(b));
  }
}

TEST(FourierProperties, ParsevalAndConvolutionTheorem) {
  for (const auto& moduli : {std::vector<std::uint32_t>{2, 2, 2, 2}, {4, 8}, {3, 5}}) {
    const GroupSpec g(moduli);
    Rng rng(moduli.size() * 31 + moduli[0]);
    for (int t = 0; t < 10; ++t) {
      RationalFunc f(g), h(g);
      for (ElementIndex x = 0; x < g.order(); ++x) {
        f.set(x, testutil::q(static_cast<long>(rng.below(21)) - 10, static_cast<long>(1 + rng.below(6))));
        h.set(x, testutil::q(static_cast<long>(rng.below(21)) - 10, static_cast<long>(1 + rng.below(6))));
      }
      const DualFunc tf = dft(f);
      const DualFunc th = dft(h);
      double energy = 0;
      for (const auto& v : tf.values()) energy += std::norm(v);
      const double expected = l2_norm_squared(f).get_d() * static_cast<double>(g.order());
      EXPECT_LE(std::abs(energy - expected), 1e-9 * expected);
      const DualFunc tc = dft(convolve(f, h));
      for (ElementIndex gamma = 0; gamma < g.order(); ++gamma) {
        const Complex prod = tf[gamma] * th[gamma];
        EXPECT_LE(std::abs(tc[gamma] - prod), 1e-9 * std::max(1.0, std::abs(prod)));
      }
    }
  }
}

TEST(FourierProperties, SubgroupDualityForEveryThreshold) {
  const GroupSpec g({2, 4});
  for (std::uint64_t mask = 1; mask < (1u << g.order()); ++mask) {
    GroupSet s(g);
    for (ElementIndex i = 0; i < g.order(); ++i) {
      if (mask >> i & 1) s.insert(i);
    }
    if (!is_subgroup(s)) continue;
    for (double eps : {0.05, 0.5, 1.0}) EXPECT_EQ(annihilator(spectrum(indicator(s), eps)), s);
  }
}

}  // namespace
