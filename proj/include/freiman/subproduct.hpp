// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freiman/group_set.hpp"
#include "freiman/rational.hpp"

namespace freiman {

using Tuple = std::vector<ElementIndex>;

/// A finite set of equal-length tuples of group elements, kept sorted.
class TupleSet {
 public:
  TupleSet() = default;
  explicit TupleSet(std::vector<Tuple> tuples);

  /// {()}.
  static TupleSet unit();

  bool contains(const Tuple& t) const;
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  friend bool operator==(const TupleSet&, const TupleSet&) = default;

 private:
  std::vector<Tuple> tuples_;
};

/// Explicit certificate that a set of k-tuples over A contains a nu-large
/// generalised sub-product: levels A_0 = {()}, A_1, ..., A_k with every
/// prefix in A_{i-1} extending into A_i by at least nu_i |A| choices.
struct Chain {
  GroupSet base;
  unsigned k = 0;
  std::vector<TupleSet> levels;  // k + 1 entries
  std::vector<Rational> nu;      // k entries, each in (0, 1]

  const TupleSet& top() const { return levels.back(); }
};

/// Hard limits on explicit chain storage.
struct ChainLimits {
  unsigned max_k = 4;
  std::size_t max_tuples = 1'000'000;
};

struct ChainVerdict {
  bool ok = true;
  /// 0 = shape/density, 1 = start and end, 2 = powers, 3 = sub-martingale.
  int axiom = 0;
  unsigned level = 0;
  Tuple witness;
  std::string message;
};

/// Exact check of the three chain axioms. When `target` is given the top
/// level must also be contained in it.
ChainVerdict verify_chain(const Chain& chain, const TupleSet* target = nullptr);

/// |A_k| >= (prod nu_i) |A|^k.
bool chain_size_bound_holds(const Chain& chain);

/// A_1 x ... x A_k with nu_i = |A_i| / |A|. Each A_i must be a non-empty
/// subset of A.
Chain product_chain(const GroupSet& a, const std::vector<GroupSet>& factors, const ChainLimits& limits = {});

/// Levelwise intersection of two chains over the same base; densities
/// nu_i + nu'_i - 1. Throws DomainError when some nu_i + nu'_i <= 1.
Chain intersect_chains(const Chain& c, const Chain& c2);

/// {a in A^k : x + sum_{s in S} a_s in |S|X + A}.
TupleSet covering_target(const GroupSet& a, const GroupSet& x_set, ElementIndex x, const std::vector<unsigned>& s,
                         unsigned k);

/// The chain for the covering target built by recursion on max(S), with
/// densities 1 - delta on S and 1 elsewhere. S holds 1-based positions.
/// Throws DomainError unless A is (1-delta)-covered by X, 0 in X, x in A
/// and delta in [0, 1).
Chain covering_chain(const GroupSet& a, const GroupSet& x_set, const Rational& delta, ElementIndex x,
                     const std::vector<unsigned>& s, unsigned k, const ChainLimits& limits = {});

struct EnergyBoundCheck {
  /// sum over a in A_k of ||1_A * mu_a||_2^2.
  Rational lhs;
  /// (1-eta)^{2k} (1-delta)^{2k} |A|^{k+1} / |kX|.
  Rational rhs;
  bool holds = false;
  bool preconditions_hold = false;
  std::string precondition_note;
};

EnergyBoundCheck energy_bound_check(const GroupSet& a, const GroupSet& x_set, const Chain& chain,
                                    const Rational& delta, const Rational& eta);

}  // namespace freiman
