// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "freiman/functions.hpp"
#include "freiman/group_set.hpp"
#include "freiman/rational.hpp"

namespace freiman {

/// {x in A : ||F - tau_x F||_2^2 < kappa ||F||_2^2} where F = h * mu_a.
/// Throws DomainError for zero h or kappa outside (0, 1].
GroupSet invariant_set(const RationalFunc& h, const GroupSet& a, std::span<const ElementIndex> tuple,
                       const Rational& kappa);

struct DecrementStep {
  ElementIndex x = 0;
  /// ||h * mu_a||_2^2 before and ||h * mu_{a,x}||_2^2 after appending x.
  Rational energy_before;
  Rational energy_after;
  /// ||F - tau_x F||_2^2 with F = h * mu_a.
  Rational defect;
  /// energy_after == energy_before - defect / 4.
  bool identity_holds = false;
  /// energy_after <= (1 - kappa/4) energy_before.
  bool decremented = false;
};

DecrementStep decrement_check(const RationalFunc& h, std::span<const ElementIndex> tuple, ElementIndex x,
                              const Rational& kappa);

struct ChangOutcome {
  enum class Tag { invariant, decrement };
  Tag tag = Tag::invariant;
  /// The path; its length is l for an invariant outcome and k_max otherwise.
  std::vector<ElementIndex> tuple;
  /// Energies ||h * mu_{a_1..a_i}||_2^2 for i = 0..|tuple|.
  std::vector<Rational> energies;
  std::vector<DecrementStep> steps;
  /// Passing elements at the final tuple (invariant outcomes only).
  GroupSet witnesses;
  /// Every recorded energy stayed at or above (sum h)^2 / |G|.
  bool floor_holds = true;

  bool is_invariant() const { return tag == Tag::invariant; }
};

/// Single-path iteration: stop when at least eta|A| elements pass the
/// kappa-test, otherwise append the first failing element of A.
/// Requires h >= 0 and non-zero, kappa in (0, 1], eta in [0, 1].
ChangOutcome chang_iterate(const RationalFunc& h, const GroupSet& a, const Rational& kappa, const Rational& eta,
                           unsigned k_max);

/// ceil(log(|G|/|A|) / log(1/(1 - kappa/4))); the greedy path on h = 1_A
/// reaches the invariant case within this many steps.
unsigned energy_floor_steps(std::uint64_t group_order, std::size_t set_size, const Rational& kappa);

}  // namespace freiman
