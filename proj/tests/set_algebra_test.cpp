// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "freiman/errors.hpp"
#include "freiman/group_set.hpp"
#include "freiman/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace freiman;
using testutil::make_set;
using testutil::residues;

namespace {

TEST(Sumset, ThreePointsFillKleinFour) {
  const GroupSpec g({2, 2});
  const GroupSet a = make_set(g, {{0, 0}, {0, 1}, {1, 0}});
  EXPECT_EQ(sumset(a, a), GroupSet::full(g));
}

TEST(Sumset, IdentityIsNeutral) {
  const GroupSpec g({3, 4});
  const GroupSet a = make_set(g, {{1, 2}, {2, 3}, {0, 1}});
  EXPECT_EQ(sumset(a, GroupSet::singleton(g, 0)), a);
}

TEST(Sumset, SubgroupIsClosed) {
  const GroupSpec g({2, 4});
  const GroupSet v = make_set(g, {{0, 0}, {0, 2}});
  EXPECT_EQ(sumset(v, v), v);
}

TEST(Sumset, EmptyOperandGivesEmpty) {
  const GroupSpec g({5});
  EXPECT_TRUE(sumset(residues(g, {1, 2}), GroupSet(g)).empty());
}

TEST(Sumset, GroupMismatchIsStructural) {
  EXPECT_THROW(sumset(GroupSet(GroupSpec({5})), GroupSet(GroupSpec({6}))), StructuralError);
}

TEST(KFoldSum, IntervalGrowsInZ5) {
  const GroupSpec g({5});
  EXPECT_EQ(k_fold_sum(residues(g, {0, 1}), 3), residues(g, {0, 1, 2, 3}));
}

TEST(KFoldSum, ZeroFoldIsIdentity) {
  const GroupSpec g({5});
  EXPECT_EQ(k_fold_sum(residues(g, {2, 3}), 0), residues(g, {0}));
}

TEST(KFoldSum, SubgroupIsStable) {
  const GroupSpec g({6});
  const GroupSet v = residues(g, {0, 2, 4});
  for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(k_fold_sum(v, k), v);
}

TEST(Doubling, FullGroupIsOne) { EXPECT_EQ(doubling_constant(GroupSet::full(GroupSpec({3, 3}))), Rational(1)); }

TEST(Doubling, ThreeIntervalInZ7) { EXPECT_EQ(doubling_constant(residues(GroupSpec({7}), {0, 1, 2})), Rational(5, 3)); }

TEST(Doubling, SubgroupIsOne) { EXPECT_EQ(doubling_constant(residues(GroupSpec({8}), {0, 4})), Rational(1)); }

TEST(Doubling, EmptySetIsDomainError) { EXPECT_THROW(doubling_constant(GroupSet(GroupSpec({4}))), DomainError); }

TEST(Instances, IndependentIsBasisPlusIdentity) {
  const GroupSpec g({2, 2, 2});
  const GroupSet a = generate_instance(InstanceKind::independent, g, {}, 0);
  EXPECT_EQ(a, make_set(g, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(Instances, RandomIsSeedDeterministic) {
  const GroupSpec g({4, 4});
  InstanceParams p;
  p.size = 5;
  const GroupSet first = generate_instance(InstanceKind::random, g, p, 7);
  EXPECT_EQ(first.size(), 5u);
  EXPECT_EQ(first, generate_instance(InstanceKind::random, g, p, 7));
}

TEST(Instances, SubgroupFromGenerator) {
  const GroupSpec g({2, 4});
  InstanceParams p;
  p.generators = {g.index_of(GroupElement{{0, 1}})};
  const GroupSet v = generate_instance(InstanceKind::subgroup, g, p, 0);
  EXPECT_EQ(v.size(), 4u);
  EXPECT_TRUE(is_subgroup(v));
}

TEST(Instances, CosetUnionHasRequestedCosets) {
  const GroupSpec g({2, 2, 2, 2});
  InstanceParams p;
  p.size = 3;
  p.generators = {1, 2};
  const GroupSet a = generate_instance(InstanceKind::coset_union, g, p, 11);
  EXPECT_EQ(a.size(), 12u);
}

TEST(Instances, OversizeRequestIsDomainError) {
  InstanceParams p;
  p.size = 9;
  EXPECT_THROW(generate_instance(InstanceKind::random, GroupSpec({2, 4}), p, 1), DomainError);
  EXPECT_THROW(parse_instance_kind("blob"), DomainError);
}

TEST(SetAlgebraProperties, SumsetBoundsAndOracleExhaustive) {
  // Every pair of subsets drawn from a small group, |G| <= 32.
  for (const auto& moduli : {std::vector<std::uint32_t>{2, 4}, {5}, {2, 2, 2}}) {
    const GroupSpec g(moduli);
    const std::uint64_t n = g.order();
    for (std::uint64_t ma = 1; ma < (1u << n); ma += 3) {
      for (std::uint64_t mb = 1; mb < (1u << n); mb += 7) {
        GroupSet a(g), b(g);
        for (ElementIndex i = 0; i < n; ++i) {
          if (ma >> i & 1) a.insert(i);
          if (mb >> i & 1) b.insert(i);
        }
        const GroupSet s = sumset(a, b);
        ASSERT_EQ(oracle::to_set(s), oracle::sumset(moduli, oracle::to_set(a), oracle::to_set(b)));
        ASSERT_GE(s.size(), std::max(a.size(), b.size()));
        ASSERT_LE(s.size(), a.size() * b.size());
        ASSERT_EQ(s, sumset(b, a));
      }
    }
  }
}

TEST(SetAlgebraProperties, SumsetAssociatesOnRandomTriples) {
  const GroupSpec g({3, 3, 4});
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    InstanceParams p;
    p.size = 1 + rng.below(8);
    const GroupSet a = generate_instance(InstanceKind::random, g, p, rng.next());
    const GroupSet b = generate_instance(InstanceKind::random, g, p, rng.next());
    const GroupSet c = generate_instance(InstanceKind::random, g, p, rng.next());
    EXPECT_EQ(sumset(sumset(a, b), c), sumset(a, sumset(b, c)));
  }
}

TEST(SetAlgebraProperties, KFoldMonotoneWhenIdentityPresent) {
  const GroupSpec g({3, 5});
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    InstanceParams p;
    p.size = 1 + rng.below(4);
    GroupSet x = generate_instance(InstanceKind::random, g, p, rng.next());
    x.insert(0);
    for (unsigned k = 0; k < 4; ++k) {
      const GroupSet now = k_fold_sum(x, k);
      EXPECT_TRUE(now.is_subset_of(k_fold_sum(x, k + 1)));
      EXPECT_EQ(oracle::to_set(now), oracle::k_fold(oracle::moduli_of(g), oracle::to_set(x), k));
    }
  }
}

TEST(SetAlgebraProperties, DoublingOneExactlyOnCosets) {
  // Exhaustive over every non-empty subset of groups with |G| <= 16.
  for (const auto& moduli : {std::vector<std::uint32_t>{2, 2, 2, 2}, {4, 4}, {2, 6}, {12}}) {
    const GroupSpec g(moduli);
    const std::uint64_t n = g.order();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      GroupSet a(g);
      for (ElementIndex i = 0; i < n; ++i) {
        if (mask >> i & 1) a.insert(i);
      }
      const bool coset = is_subgroup(a.translate(g.negate(a.min())));
      ASSERT_EQ(doubling_constant(a) == 1, coset) << a.to_string();
    }
  }
}

}  // namespace
