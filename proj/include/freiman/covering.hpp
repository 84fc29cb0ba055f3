// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "freiman/group_set.hpp"
#include "freiman/rational.hpp"

namespace freiman {

/// Output of the greedy statistical covering iteration.
///
/// X is a subset of A with |(x+B) cap (X+B)| >= (1 - delta)|B| for every x
/// in A. `trace` lists the elements in the order they were added, so the
/// prefix sets X_0, X_1, ... can be replayed.
struct CoverCertificate {
  GroupSet x;
  Rational delta;
  /// (x, |(x+B) cap (X+B)|) for every x in A, canonical order.
  std::vector<std::pair<ElementIndex, std::size_t>> per_x_coverage;
  std::vector<ElementIndex> trace;
  /// K = |A+B| / |B|.
  Rational doubling;
  /// delta^{-1}(K - 1) + 1.
  Rational size_bound;
  bool valid = false;
};

/// Greedy covering: start from min(A); while some x in A (first in
/// canonical order) has |(x+B) cap (X+B)| < (1-delta)|B|, add it.
/// Throws DomainError for empty inputs or delta outside (0, 1].
CoverCertificate statistical_cover(const GroupSet& a, const GroupSet& b, const Rational& delta);

/// Replays |X_i + B| > delta |B| i + |B| for every i >= 1 of the trace.
bool check_cover_growth(const GroupSet& b, const CoverCertificate& cert);

/// A maximal subset X of A whose translates x + B are pairwise disjoint,
/// chosen greedily in canonical order. A is contained in X + B - B and
/// |X| <= |A+B|/|B|; both are checked before returning.
GroupSet ruzsa_cover(const GroupSet& a, const GroupSet& b);

struct CoverVerdict {
  bool covered = false;
  /// min over x in A of |(x+A) cap (X+A)| / |A|.
  Rational min_fraction;
};

/// Is A (1-delta)-covered by X?
CoverVerdict verify_covered(const GroupSet& a, const GroupSet& x, const Rational& delta);

struct IteratedCoverCheck {
  /// <1_A^{*(k+1)}, 1_{kX+A}>.
  Rational lhs;
  /// (1-delta)^k |A|^{k+1}.
  Rational rhs;
  bool holds = false;
  bool covered = false;
  bool identity_in_x = false;
  bool preconditions_hold() const { return covered && identity_in_x; }
};

/// The k-fold iterated covering inequality. Preconditions are reported,
/// not enforced; the inequality is computed regardless.
IteratedCoverCheck verify_iterated_cover(const GroupSet& a, const GroupSet& x, const Rational& delta, unsigned k);

}  // namespace freiman
