// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "freiman/covering.hpp"
#include "freiman/errors.hpp"
#include "freiman/rng.hpp"
#include "freiman/subproduct.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace freiman;
using testutil::residues;

namespace {

const GroupSpec kZ7({7});

Chain one_level(const GroupSet& a, std::vector<Tuple> top, const Rational& nu) {
  Chain c{a, 1, {TupleSet::unit(), TupleSet(std::move(top))}, {nu}};
  return c;
}

/// All tuples of A^k, used as the independent membership reference.
std::vector<Tuple> power(const GroupSet& a, unsigned k) {
  std::vector<Tuple> out{{}};
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Tuple> next;
    for (const auto& t : out) {
      for (auto x : a.indices()) {
        Tuple u = t;
        u.push_back(x);
        next.push_back(u);
      }
    }
    out = std::move(next);
  }
  return out;
}

TEST(VerifyChain, FullProductPasses) {
  const GroupSet a = residues(kZ7, {0, 1, 3});
  const Chain c = product_chain(a, {a, a, a});
  EXPECT_TRUE(verify_chain(c).ok);
  for (const auto& nu : c.nu) EXPECT_EQ(nu, Rational(1));
  EXPECT_EQ(c.top().size(), 27u);
}

TEST(VerifyChain, HalfLevelAtHalfDensity) {
  const GroupSet a = residues(kZ7, {0, 1, 2, 3});
  EXPECT_TRUE(verify_chain(one_level(a, {{0}, {2}}, Rational(1, 2))).ok);
  const ChainVerdict bad = verify_chain(one_level(a, {{0}, {2}}, Rational(3, 4)));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.axiom, 3);
  EXPECT_EQ(bad.level, 1u);
  EXPECT_TRUE(bad.witness.empty());
}

TEST(VerifyChain, EmptyLevelFails) {
  const GroupSet a = residues(kZ7, {0, 1});
  EXPECT_FALSE(verify_chain(one_level(a, {}, Rational(1, 2))).ok);
}

TEST(VerifyChain, ForeignEntryBreaksPowersAxiom) {
  const GroupSet a = residues(kZ7, {0, 1});
  const ChainVerdict v = verify_chain(one_level(a, {{0}, {5}}, Rational(1, 2)));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.axiom, 2);
}

TEST(ProductChain, DensitiesAndCardinality) {
  const GroupSet a = residues(kZ7, {0, 1, 2, 4});
  const Chain c = product_chain(a, {residues(kZ7, {0}), residues(kZ7, {1, 2}), a});
  EXPECT_EQ(c.nu, (std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1)}));
  EXPECT_EQ(c.top().size(), 8u);
  EXPECT_TRUE(verify_chain(c).ok);
  EXPECT_TRUE(chain_size_bound_holds(c));
}

TEST(ProductChain, FactorOutsideBaseIsRejected) {
  const GroupSet a = residues(kZ7, {0, 1});
  EXPECT_THROW(product_chain(a, {residues(kZ7, {3})}), DomainError);
  EXPECT_THROW(product_chain(a, {GroupSet(kZ7)}), DomainError);
}

TEST(IntersectChains, SelfIntersectionKeepsLevels) {
  const GroupSet a = residues(kZ7, {0, 1, 2, 3});
  const Chain c = product_chain(a, {residues(kZ7, {0, 1, 2}), residues(kZ7, {1, 2, 3})});
  const Chain both = intersect_chains(c, c);
  EXPECT_EQ(both.levels, c.levels);
  EXPECT_EQ(both.nu, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_TRUE(verify_chain(both).ok);
}

TEST(IntersectChains, TwoLargeProductsVerifyAtSumOfLosses) {
  const GroupSpec g({2, 5});
  const GroupSet a = residues(g, {0, 1, 2, 3, 4, 5, 6, 7});
  const Chain c = product_chain(a, {residues(g, {0, 1, 2, 3, 4, 5, 6}), residues(g, {1, 2, 3, 4, 5, 6, 7})});
  const Chain d = product_chain(a, {residues(g, {1, 2, 3, 4, 5, 6, 7}), residues(g, {0, 2, 3, 4, 5, 6, 7})});
  const Chain both = intersect_chains(c, d);
  EXPECT_EQ(both.nu, (std::vector<Rational>{Rational(3, 4), Rational(3, 4)}));
  EXPECT_TRUE(verify_chain(both).ok);
  for (std::size_t i = 0; i < both.levels.size(); ++i) {
    for (const auto& t : both.levels[i]) {
      EXPECT_TRUE(c.levels[i].contains(t));
      EXPECT_TRUE(d.levels[i].contains(t));
    }
  }
}

TEST(IntersectChains, TooMuchLossIsRejected) {
  const GroupSet a = residues(kZ7, {0, 1, 2, 3});
  const Chain c = product_chain(a, {residues(kZ7, {0, 1})});
  EXPECT_THROW(intersect_chains(c, c), DomainError);
}

TEST(CoveringChain, EmptySIsFullPower) {
  const GroupSet a = residues(kZ7, {0, 1, 2});
  const Chain c = covering_chain(a, residues(kZ7, {0, 2}), Rational(1, 2), 1, {}, 2);
  EXPECT_EQ(c.top(), TupleSet(power(a, 2)));
}

TEST(CoveringChain, SubgroupGivesFullProduct) {
  const GroupSpec g({3, 3});
  const GroupSet v = residues(g, {0, 1, 2});
  const Chain c = covering_chain(v, GroupSet::singleton(g, 0), Rational(0), 2, {1, 2}, 2);
  EXPECT_EQ(c.top(), TupleSet(power(v, 2)));
  EXPECT_TRUE(verify_chain(c).ok);
}

TEST(CoveringChain, IntervalInZ7SingleStep) {
  const GroupSet a = residues(kZ7, {0, 1, 2});
  const GroupSet x = residues(kZ7, {0, 2});
  const Chain c = covering_chain(a, x, Rational(1, 2), 0, {1}, 1);
  EXPECT_EQ(c.top(), TupleSet({{0}, {1}, {2}}));
  EXPECT_EQ(c.nu, (std::vector<Rational>{Rational(1, 2)}));
  const TupleSet target = covering_target(a, x, 0, {1}, 1);
  EXPECT_TRUE(verify_chain(c, &target).ok);
}

TEST(CoveringChain, UncoveredInputIsDomainError) {
  const GroupSet a = residues(kZ7, {0, 1, 2});
  EXPECT_THROW(covering_chain(a, residues(kZ7, {0}), Rational(1, 3), 0, {1}, 1), DomainError);
  EXPECT_THROW(covering_chain(a, residues(kZ7, {0, 2}), Rational(1, 2), 5, {1}, 1), DomainError);
}

TEST(EnergyBound, SubgroupEqualityCase) {
  const GroupSpec g({2, 4});
  const GroupSet v = residues(g, {0, 2, 4, 6});
  for (unsigned k = 1; k <= 2; ++k) {
    const Chain c = product_chain(v, std::vector<GroupSet>(k, v));
    const EnergyBoundCheck e = energy_bound_check(v, GroupSet::singleton(g, 0), c, Rational(0), Rational(0));
    const Rational expected = pow(Rational(4), k + 1);
    EXPECT_EQ(e.lhs, expected);
    EXPECT_EQ(e.rhs, expected);
    EXPECT_TRUE(e.holds);
  }
}

TEST(EnergyBound, IntervalInZ7) {
  const GroupSet a = residues(kZ7, {0, 1, 2});
  const EnergyBoundCheck e =
      energy_bound_check(a, residues(kZ7, {0, 2}), product_chain(a, {a}), Rational(1, 2), Rational(0));
  EXPECT_EQ(e.lhs, Rational(15, 2));
  EXPECT_EQ(e.rhs, Rational(9, 8));
  EXPECT_TRUE(e.holds);
  EXPECT_FALSE(e.preconditions_hold);  // delta = 1/2 is outside [0, 1/2)
  const auto mod = oracle::moduli_of(kZ7);
  const auto set = oracle::to_set(a);
  EXPECT_EQ(oracle::energy(mod, set, {{0}}), Rational(3));
  EXPECT_EQ(oracle::energy(mod, set, {{1}}), Rational(5, 2));
  EXPECT_EQ(oracle::energy(mod, set, {{2}}), Rational(2));
}

TEST(SubproductProperties, ExhaustiveSmallChains) {
  const GroupSpec g({2, 2, 3});
  const auto mod = oracle::moduli_of(g);
  Rng rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    InstanceParams p;
    p.size = 1 + rng.below(4);
    const GroupSet a = generate_instance(InstanceKind::random, g, p, rng.next());
    const Rational delta(1, 4);
    GroupSet x = statistical_cover(a, a, delta).x;
    x.insert(0);
    for (unsigned k = 1; k <= 2; ++k) {
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<unsigned> s;
        for (unsigned i = 0; i < k; ++i) {
          if (mask >> i & 1) s.push_back(i + 1);
        }
        const oracle::ElemSet reach = oracle::sumset(mod, oracle::k_fold(mod, oracle::to_set(x), s.size()), oracle::to_set(a));
        for (auto base : a.indices()) {
          const Chain c = covering_chain(a, x, delta, base, s, k);
          ASSERT_TRUE(verify_chain(c).ok);
          ASSERT_TRUE(chain_size_bound_holds(c));
          // Independent membership of the top level.
          for (const auto& t : c.top()) {
            oracle::Coords sum = g.element(base).coords;
            for (auto pos : s) sum = oracle::add(mod, sum, g.element(t[pos - 1]).coords);
            ASSERT_TRUE(reach.count(sum));
          }
          if (s.size() == k) {
            const EnergyBoundCheck e = energy_bound_check(a, x, c, delta, delta);
            Rational lhs = 0;
            for (const auto& t : c.top()) {
              std::vector<oracle::Coords> tuple;
              for (auto y : t) tuple.push_back(g.element(y).coords);
              lhs += oracle::energy(mod, oracle::to_set(a), tuple);
            }
            ASSERT_EQ(e.lhs, lhs);
            ASSERT_TRUE(e.holds);
          }
        }
      }
    }
  }
}

}  // namespace
