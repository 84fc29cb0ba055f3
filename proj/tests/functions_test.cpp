// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "freiman/errors.hpp"
#include "freiman/functions.hpp"
#include "freiman/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace freiman;
using testutil::residues;

namespace {

RationalFunc random_func(const GroupSpec& g, Rng& rng, bool nonnegative) {
  RationalFunc f(g);
  for (ElementIndex x = 0; x < g.order(); ++x) {
    if (rng.below(3) == 0) continue;
    const Rational v = testutil::q(static_cast<long>(rng.below(11)) - (nonnegative ? 0 : 5), static_cast<long>(1 + rng.below(4)));
    f.set(x, v);
  }
  return f;
}

TEST(Indicator, EmptyAndFull) {
  const GroupSpec g({2, 3});
  EXPECT_TRUE(indicator(GroupSet(g)).is_zero());
  const RationalFunc one = indicator(GroupSet::full(g));
  for (auto v : one.values()) EXPECT_EQ(v, 1);
}

TEST(Indicator, MassIsSize) {
  const GroupSpec g({4, 4});
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    InstanceParams p;
    p.size = rng.below(16);
    const GroupSet a = generate_instance(InstanceKind::random, g, p, rng.next());
    EXPECT_EQ(l1_norm(indicator(a)), Rational(static_cast<unsigned long>(a.size())));
    EXPECT_EQ(l2_norm_squared(indicator(a)), Rational(static_cast<unsigned long>(a.size())));
  }
}

TEST(Translate, ShiftsPointMassBackwards) {
  const GroupSpec g({5});
  EXPECT_EQ(translate(indicator(residues(g, {3})), 2), indicator(residues(g, {1})));
}

TEST(Translate, IdentityAndInverse) {
  const GroupSpec g({3, 4});
  Rng rng(3);
  const RationalFunc f = random_func(g, rng, false);
  EXPECT_EQ(translate(f, 0), f);
  for (ElementIndex x = 0; x < g.order(); ++x) {
    EXPECT_EQ(translate(translate(f, x), g.negate(x)), f);
    EXPECT_EQ(l1_norm(translate(f, x)), l1_norm(f));
    EXPECT_EQ(l2_norm_squared(translate(f, x)), l2_norm_squared(f));
  }
}

TEST(Convolution, PointMassesAdd) {
  const GroupSpec g({3, 4});
  for (ElementIndex a = 0; a < g.order(); ++a) {
    for (ElementIndex b = 0; b < g.order(); b += 5) {
      EXPECT_EQ(convolve(point_mass(g, a), point_mass(g, b)), point_mass(g, g.add(a, b)));
    }
  }
}

TEST(Convolution, RepresentationCountInZ4) {
  const GroupSpec g({4});
  const RationalFunc one_a = indicator(residues(g, {0, 1}));
  EXPECT_EQ(convolve(one_a, one_a)[1], Rational(2));
}

TEST(Convolution, UnitAndOracle) {
  const GroupSpec g({2, 6});
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const RationalFunc f = random_func(g, rng, false);
    const RationalFunc h = random_func(g, rng, false);
    EXPECT_EQ(convolve(f, point_mass(g, 0)), f);
    const RationalFunc c = convolve(f, h);
    EXPECT_EQ(c, convolve(h, f));
    EXPECT_EQ(oracle::to_func(c), oracle::convolve(oracle::moduli_of(g), oracle::to_func(f), oracle::to_func(h)));
  }
}

TEST(Convolution, MassMultipliesForNonnegativeInputs) {
  const GroupSpec g({3, 3});
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const RationalFunc f = random_func(g, rng, true);
    const RationalFunc h = random_func(g, rng, true);
    EXPECT_EQ(l1_norm(convolve(f, h)), l1_norm(f) * l1_norm(h));
  }
}

TEST(TupleMeasureTest, EmptyTupleIsDirac) {
  const GroupSpec g({5});
  EXPECT_EQ(mu_tuple(g, {}).measure, point_mass(g, 0));
}

TEST(TupleMeasureTest, SingleGeneratorInZ2) {
  const GroupSpec g({2});
  const RationalFunc m = mu_tuple(g, std::vector<ElementIndex>{1}).measure;
  EXPECT_EQ(m[0], Rational(1, 2));
  EXPECT_EQ(m[1], Rational(1, 2));
}

TEST(TupleMeasureTest, BasisOfKleinFourIsUniform) {
  const GroupSpec g({2, 2});
  const std::vector<ElementIndex> tuple{g.index_of(GroupElement{{1, 0}}), g.index_of(GroupElement{{0, 1}})};
  const RationalFunc m = mu_tuple(g, tuple).measure;
  for (auto v : m.values()) EXPECT_EQ(v, Rational(1, 4));
}

TEST(TupleMeasureTest, ExponentTwoGivesUniformOnSpan) {
  const GroupSpec g = GroupSpec::power(2, 5);
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    std::vector<ElementIndex> tuple;
    for (std::size_t i = 0, l = rng.below(5); i < l; ++i) tuple.push_back(static_cast<ElementIndex>(rng.below(32)));
    const RationalFunc m = mu_tuple(g, tuple).measure;
    EXPECT_EQ(m, uniform_measure(subgroup_closure(g, tuple)));
  }
}

TEST(TupleMeasureTest, MassSupportAndRecursion) {
  const GroupSpec g({3, 4});
  const auto mod = oracle::moduli_of(g);
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    std::vector<ElementIndex> tuple;
    std::vector<oracle::Coords> coords;
    for (std::size_t i = 0, l = rng.below(5); i < l; ++i) {
      tuple.push_back(static_cast<ElementIndex>(rng.below(g.order())));
      coords.push_back(g.element(tuple.back()).coords);
    }
    const RationalFunc m = mu_tuple(g, tuple).measure;
    EXPECT_EQ(m.sum(), Rational(1));
    EXPECT_TRUE(m.support_set().is_subset_of(subgroup_closure(g, tuple)));
    EXPECT_EQ(oracle::to_func(m), oracle::mu(mod, coords));
    const auto x = static_cast<ElementIndex>(rng.below(g.order()));
    std::vector<ElementIndex> longer = tuple;
    longer.push_back(x);
    const RationalFunc step = Rational(1, 2) * (point_mass(g, 0) + point_mass(g, x));
    EXPECT_EQ(mu_tuple(g, longer).measure, convolve(m, step));
  }
}

TEST(Norms, IndicatorNormsAndInnerProduct) {
  const GroupSpec g({6});
  const GroupSet a = residues(g, {0, 1, 3});
  const GroupSet b = residues(g, {1, 3, 4, 5});
  EXPECT_EQ(l2_norm_squared(indicator(a)), Rational(3));
  EXPECT_EQ(inner_product(indicator(a), indicator(b)), Rational(2));
}

TEST(Norms, TranslationDefectInZ4) {
  const GroupSpec g({4});
  const RationalFunc f = indicator(residues(g, {0, 1}));
  EXPECT_EQ(l2_norm_squared(f - translate(f, 1)), Rational(2));
  const TranslationProbe probe(f);
  EXPECT_EQ(probe.l2_defect_squared(1), Rational(2));
  EXPECT_EQ(probe.l1_defect(1), Rational(2));
  EXPECT_EQ(probe.l1_defect(0), Rational(0));
}

TEST(FunctionProperties, DefectsAreSymmetricAndMatchDirectComputation) {
  const GroupSpec g({3, 4});
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const RationalFunc f = random_func(g, rng, false);
    const TranslationProbe probe(f);
    for (ElementIndex x = 0; x < g.order(); ++x) {
      const RationalFunc d = f - translate(f, x);
      ASSERT_EQ(probe.l1_defect(x), l1_norm(d));
      ASSERT_EQ(probe.l2_defect_squared(x), l2_norm_squared(d));
      ASSERT_EQ(probe.l1_defect(x), probe.l1_defect(g.negate(x)));
      ASSERT_EQ(probe.l2_defect_squared(x), probe.l2_defect_squared(g.negate(x)));
    }
  }
}

TEST(FunctionProperties, IteratedConvolutionCountsTuplesLandingInTarget) {
  const GroupSpec g({2, 5});
  const auto mod = oracle::moduli_of(g);
  Rng rng(9);
  for (int t = 0; t < 12; ++t) {
    InstanceParams p;
    p.size = 1 + rng.below(6);
    const GroupSet a = generate_instance(InstanceKind::random, g, p, rng.next());
    p.size = 1 + rng.below(3);
    GroupSet x = generate_instance(InstanceKind::random, g, p, rng.next());
    x.insert(0);
    for (unsigned k = 0; k <= 3; ++k) {
      const GroupSet target = sumset(k_fold_sum(x, k), a);
      const Rational lhs = inner_product(convolution_power(indicator(a), k + 1), indicator(target));
      EXPECT_EQ(lhs, oracle::tuple_count(mod, oracle::to_set(a), k, oracle::to_set(target)));
    }
  }
}

TEST(FunctionErrors, MismatchedGroupsAreStructural) {
  const RationalFunc f(GroupSpec({4}));
  const RationalFunc h(GroupSpec({2, 2}));
  EXPECT_THROW(convolve(f, h), StructuralError);
  EXPECT_THROW(inner_product(f, h), StructuralError);
  EXPECT_THROW(translate(f, 4), StructuralError);
}

}  // namespace
