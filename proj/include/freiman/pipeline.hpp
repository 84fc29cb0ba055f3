// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freiman/chang.hpp"
#include "freiman/covering.hpp"
#include "freiman/errors.hpp"
#include "freiman/functions.hpp"
#include "freiman/group_set.hpp"
#include "freiman/rational.hpp"

namespace freiman {

enum class PetridisMode { exhaustive, singletons_and_A };

inline constexpr std::size_t kPetridisCap = 18;

struct PetridisResult {
  GroupSet z;
  /// |A + Z| / |Z|.
  Rational ratio;
  std::size_t ties_broken = 0;
  /// False when only the restricted family was searched.
  bool exhaustive = true;
};

/// Non-empty Z inside `universe` minimising |A+Z|/|Z|; ties go to smaller
/// |Z| and then to the lexicographically smaller member list. The universe
/// defaults to A. Exhaustive mode throws DomainError when the universe
/// exceeds `cap`.
PetridisResult petridis_subset(const GroupSet& a, PetridisMode mode = PetridisMode::exhaustive,
                               const GroupSet* universe = nullptr, std::size_t cap = kPetridisCap);

/// |A+Z+C| <= K |Z+C| with K = |A+Z|/|Z| for every C in the family.
bool petridis_verify(const GroupSet& a, const GroupSet& z, std::span<const GroupSet> family);

/// All singletons of the group plus `random_count` seeded random subsets.
std::vector<GroupSet> petridis_family(const GroupSpec& spec, std::uint64_t seed, std::size_t random_count = 100);

/// One named inequality re-verifiable from its recorded sides.
struct CheckRecord {
  std::string name;
  std::string anchor;
  /// "<=" or "==".
  std::string relation;
  Rational lhs;
  Rational rhs;
  bool holds = false;
  /// Failures of unconditional checks are hard errors.
  bool unconditional = true;
};

/// An unconditional check failed; carries every check recorded so far.
struct PipelineError : VerificationError {
  PipelineError(const std::string& what, std::vector<CheckRecord> trail);
  std::vector<CheckRecord> checks;
};

CheckRecord make_check(std::string name, std::string anchor, const Rational& lhs, const std::string& relation,
                       const Rational& rhs, bool unconditional = true);

/// How the Chang threshold follows from epsilon. `as_written` uses
/// epsilon/4, under which a witness x only satisfies
/// ||f - tau_x f||_1 <= sqrt(epsilon) ||f||_1. `corrected` uses
/// epsilon^2/4, which gives the epsilon bound by Cauchy-Schwarz.
enum class KappaRule { corrected, as_written };

struct AlmostInvariantOptions {
  /// delta = epsilon / cover_divisor.
  unsigned cover_divisor = 8;
  KappaRule kappa_rule = KappaRule::corrected;
};

struct AlmostInvariantResult {
  Rational epsilon;
  Rational delta;
  Rational kappa;
  /// Statistical cover of A at delta, with the identity added.
  GroupSet cover;
  unsigned step_cap = 0;
  ChangOutcome chang;
  GroupSet v;
  /// (1_A * mu_a)^2 and its square root 1_A * mu_a.
  RationalFunc f;
  RationalFunc smoothed;
  /// {x in A : ||f - tau_x f||_1 <= epsilon ||f||_1}.
  GroupSet good;
  /// Chang witnesses that landed in `good`.
  std::size_t witnesses_in_good = 0;
  std::vector<CheckRecord> checks;
};

/// Runs the greedy Chang path on 1_A with eta = delta and kappa from the
/// configured rule, then squares the smoothed indicator. Throws DomainError for
/// empty A or epsilon outside (0, 1], VerificationError when an exact
/// guarantee fails.
AlmostInvariantResult almost_invariant_pair(const GroupSet& a, const Rational& epsilon,
                                            const AlmostInvariantOptions& options = {});

struct ContainmentCheck {
  bool hypothesis_holds = false;
  /// First element of A violating the invariance hypothesis, if any.
  std::optional<ElementIndex> hypothesis_witness;
  /// r * epsilon, the spectrum threshold.
  Rational threshold;
  bool vacuous = false;
  std::size_t spectrum_size = 0;
  std::size_t annihilator_size = 0;
  /// Elements of A outside the annihilator.
  std::size_t escapees = 0;
  bool contained = false;
};

/// Is A inside Spec_{r eps}(g)^perp? The hypothesis
/// ||g - tau_a g||_1 <= eps ||g||_1 on A is checked exactly and reported
/// separately from the conclusion.
ContainmentCheck annihilator_containment_check(const RationalFunc& g, const GroupSet& a, const Rational& epsilon);

struct AnnihilatorBound {
  bool hypotheses_hold = false;
  std::string hypothesis_note;
  /// |A+A|/|A| unless supplied.
  Rational doubling;
  /// 1 / (4 K^{2 eps}).
  double threshold = 0.0;
  std::size_t spectrum_size = 0;
  std::size_t annihilator_size = 0;
  /// 4 K |A|.
  Rational bound;
  bool holds = false;
};

/// |Spec_{1/(4K^{2eps})}(g)^perp| against 4K|A|. When `invariant_under`
/// is given, h is first checked to be invariant under it and the
/// translation hypothesis is then tested on one element per coset of A'.
AnnihilatorBound spec_annihilator_bound(const GroupSet& a, const GroupSet& a_prime, const RationalFunc& h,
                                        const RationalFunc& g, const Rational& epsilon,
                                        const GroupSet* invariant_under = nullptr);

struct DriverOptions {
  PetridisMode petridis = PetridisMode::exhaustive;
  std::size_t petridis_cap = kPetridisCap;
  AlmostInvariantOptions stage;
  /// Parameter rationals are the floor of the real value at this
  /// denominator.
  std::uint64_t parameter_denominator = 1'000'000;
};

struct PipelineReport {
  GroupSet a;
  Rational doubling;
  std::uint64_t exponent = 0;

  PetridisResult petridis;
  AlmostInvariantResult stage1;
  AlmostInvariantResult stage2;

  /// Z + V + V' and the V'-average of f.
  GroupSet b;
  RationalFunc h;
  Rational b_doubling;

  AnnihilatorBound lemma_bound;
  /// Spectrum of g at 1/(4 sqrt e) and its annihilator.
  double final_threshold = 0.0;
  std::size_t final_spectrum_size = 0;
  GroupSet final_annihilator;
  ContainmentCheck containment;

  PetridisResult reselection;
  GroupSet v_final;
  /// |A + V'''| / |V'''|.
  std::size_t coset_count = 0;

  GroupSet closure;
  Rational closure_ratio;
  /// exp(K (log 2K)^2); reported for comparison only.
  double comparison_value = 0.0;

  std::vector<CheckRecord> checks;

  bool all_unconditional_hold() const;
};

/// Runs the end-to-end argument on A and records every intermediate set
/// and inequality. Throws VerificationError, carrying the failing check,
/// when an unconditional step fails.
PipelineReport theorem_driver(const GroupSet& a, const DriverOptions& options = {});

/// Averages f over the cosets of the subgroup V (f * mu_V).
RationalFunc coset_average(const RationalFunc& f, const GroupSet& v);

}  // namespace freiman
