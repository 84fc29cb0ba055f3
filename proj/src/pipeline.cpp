// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/pipeline.hpp"

#include <cmath>
#include <numbers>

#include "freiman/errors.hpp"
#include "freiman/fourier.hpp"
#include "freiman/rng.hpp"

namespace freiman {

namespace {

Rational size_q(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }

std::string join_failures(const std::vector<CheckRecord>& checks) {
  std::string out;
  for (const auto& c : checks) {
    if (c.unconditional && !c.holds) out += (out.empty() ? "" : ", ") + c.name;
  }
  return out;
}

// Appends the check; an unconditional failure aborts with the trail so far.
void record(std::vector<CheckRecord>& checks, CheckRecord check) {
  const bool fatal = check.unconditional && !check.holds;
  checks.push_back(std::move(check));
  if (fatal) throw PipelineError("unconditional check failed: " + join_failures(checks), checks);
}

// |A+Z|/|Z| < |A+Z'|/|Z'| with sizes cross-multiplied.
int compare_ratio(std::size_t sum1, std::size_t z1, std::size_t sum2, std::size_t z2) {
  const std::uint64_t lhs = static_cast<std::uint64_t>(sum1) * z2;
  const std::uint64_t rhs = static_cast<std::uint64_t>(sum2) * z1;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

struct PetridisSearch {
  const std::vector<ElementIndex>& members;
  const std::vector<boost::dynamic_bitset<>>& translates;
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best;
  std::size_t best_sum = 0;
  std::size_t ties = 0;

  // Visits member lists in lexicographic order, so on a full tie the
  // incumbent is already the lexicographically smaller one.
  void offer(std::size_t sum) {
    if (best.empty()) {
      best = chosen;
      best_sum = sum;
      return;
    }
    const int cmp = compare_ratio(sum, chosen.size(), best_sum, best.size());
    if (cmp == 0) ++ties;
    if (cmp < 0 || (cmp == 0 && chosen.size() < best.size())) {
      best = chosen;
      best_sum = sum;
    }
  }

  void descend(std::size_t from, const boost::dynamic_bitset<>& covered) {
    for (std::size_t i = from; i < members.size(); ++i) {
      boost::dynamic_bitset<> next = covered | translates[i];
      chosen.push_back(i);
      offer(next.count());
      descend(i + 1, next);
      chosen.pop_back();
    }
  }
};

// ||f - tau_x f||_1 <= eps ||f||_1, in the probe's integer scaling.
bool within_l1(const TranslationProbe& probe, ElementIndex x, const Rational& epsilon) {
  return probe.l1_defect_scaled(x) * epsilon.get_den() <= epsilon.get_num() * probe.l1_scaled();
}

}  // namespace

PipelineError::PipelineError(const std::string& what, std::vector<CheckRecord> trail)
    : VerificationError(what), checks(std::move(trail)) {}

PetridisResult petridis_subset(const GroupSet& a, PetridisMode mode, const GroupSet* universe, std::size_t cap) {
  if (a.empty()) throw DomainError("Petridis selection needs a non-empty A");
  const GroupSet& pool = universe != nullptr ? *universe : a;
  require_same_group(a.spec(), pool.spec(), "Petridis selection");
  if (pool.empty()) throw DomainError("Petridis selection needs a non-empty universe");

  const auto members = pool.indices();
  std::vector<boost::dynamic_bitset<>> translates;
  translates.reserve(members.size());
  for (auto z : members) translates.push_back(a.translate(z).bits());

  PetridisSearch search{members, translates, {}, {}, 0, 0};
  if (mode == PetridisMode::exhaustive) {
    if (members.size() > cap) {
      throw DomainError("exhaustive Petridis search is capped at " + std::to_string(cap) +
                        " elements; use the singletons_and_A mode");
    }
    search.descend(0, boost::dynamic_bitset<>(a.spec().order()));
  } else {
    for (std::size_t i = 0; i < members.size(); ++i) {
      search.chosen = {i};
      search.offer(translates[i].count());
    }
    search.chosen.clear();
    for (std::size_t i = 0; i < members.size(); ++i) search.chosen.push_back(i);
    search.offer(sumset(a, pool).size());
  }

  PetridisResult out{GroupSet(a.spec()), Rational(), search.ties, mode == PetridisMode::exhaustive};
  for (auto i : search.best) out.z.insert(members[i]);
  out.ratio = Rational(static_cast<unsigned long>(search.best_sum), static_cast<unsigned long>(search.best.size()));
  out.ratio.canonicalize();
  return out;
}

bool petridis_verify(const GroupSet& a, const GroupSet& z, std::span<const GroupSet> family) {
  require_same_group(a.spec(), z.spec(), "Petridis check");
  if (z.empty()) throw DomainError("Petridis check needs a non-empty Z");
  const GroupSet az = sumset(a, z);
  for (const auto& c : family) {
    if (c.empty()) continue;
    const std::size_t lhs = sumset(az, c).size() * z.size();
    const std::size_t rhs = az.size() * sumset(z, c).size();
    if (lhs > rhs) return false;
  }
  return true;
}

std::vector<GroupSet> petridis_family(const GroupSpec& spec, std::uint64_t seed, std::size_t random_count) {
  std::vector<GroupSet> family;
  for (std::uint64_t x = 0; x < spec.order(); ++x) family.push_back(GroupSet::singleton(spec, static_cast<ElementIndex>(x)));
  Rng rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    GroupSet c(spec);
    for (std::uint64_t x = 0; x < spec.order(); ++x) {
      if (rng.below(4) == 0) c.insert(static_cast<ElementIndex>(x));
    }
    if (c.empty()) c.insert(static_cast<ElementIndex>(rng.below(spec.order())));
    family.push_back(std::move(c));
  }
  return family;
}

CheckRecord make_check(std::string name, std::string anchor, const Rational& lhs, const std::string& relation,
                       const Rational& rhs, bool unconditional) {
  bool holds = false;
  if (relation == "<=") {
    holds = lhs <= rhs;
  } else if (relation == "==") {
    holds = lhs == rhs;
  } else {
    throw StructuralError("unknown relation " + relation);
  }
  return CheckRecord{std::move(name), std::move(anchor), relation, lhs, rhs, holds, unconditional};
}

RationalFunc coset_average(const RationalFunc& f, const GroupSet& v) {
  require_same_group(f.spec(), v.spec(), "coset average");
  if (!is_subgroup(v)) throw DomainError("coset average needs a subgroup");
  const GroupSpec& spec = f.spec();
  const auto members = v.indices();
  const Rational weight(1, static_cast<unsigned long>(members.size()));
  RationalFunc out(spec);
  boost::dynamic_bitset<> done(spec.order());
  for (std::uint64_t x = 0; x < spec.order(); ++x) {
    if (done.test(x)) continue;
    Rational total(0);
    for (auto m : members) total += f[spec.add(static_cast<ElementIndex>(x), m)];
    total *= weight;
    for (auto m : members) {
      const ElementIndex y = spec.add(static_cast<ElementIndex>(x), m);
      done.set(y);
      if (sgn(total) != 0) out.set(y, total);
    }
  }
  return out;
}

AlmostInvariantResult almost_invariant_pair(const GroupSet& a, const Rational& epsilon,
                                            const AlmostInvariantOptions& options) {
  if (a.empty()) throw DomainError("A must be non-empty");
  if (sgn(epsilon) <= 0 || epsilon > 1) throw DomainError("epsilon must lie in (0, 1]");
  if (options.cover_divisor == 0) throw DomainError("cover divisor must be positive");
  const GroupSpec& spec = a.spec();

  const Rational delta = epsilon / static_cast<unsigned long>(options.cover_divisor);
  const bool corrected = options.kappa_rule == KappaRule::corrected;
  const Rational kappa = corrected ? Rational(epsilon * epsilon / 4) : Rational(epsilon / 4);
  GroupSet cover = statistical_cover(a, a, delta).x;
  cover.insert(0);

  std::vector<CheckRecord> checks;
  const unsigned cap = energy_floor_steps(spec.order(), a.size(), kappa);
  const RationalFunc base = indicator(a);
  ChangOutcome chang = chang_iterate(base, a, kappa, delta, cap);
  record(checks, make_check("chang_reaches_invariant", "Chang iteration",
                            chang.is_invariant() ? Rational(0) : Rational(1), "<=", Rational(0)));
  record(checks, make_check("chang_steps_within_floor", "Chang iteration", size_q(chang.tuple.size()), "<=",
                            Rational(static_cast<unsigned long>(cap))));
  record(checks, make_check("chang_energy_floor", "Chang iteration", chang.floor_holds ? Rational(0) : Rational(1),
                            "<=", Rational(0)));
  record(checks, make_check("chang_witness_count", "Chang iteration", delta * static_cast<unsigned long>(a.size()),
                            "<=", size_q(chang.witnesses.size())));

  GroupSet v = subgroup_closure(spec, chang.tuple);
  RationalFunc smoothed = smooth(base, chang.tuple);
  RationalFunc f = smoothed.squared();

  const GroupSet reach = sumset(a, v);
  record(checks, make_check("support_in_A_plus_V", "almost-invariant function",
                            size_q((f.support_set() - reach).size()), "<=", Rational(0)));

  const TranslationProbe probe_f(f);
  GroupSet good(spec);
  a.for_each([&](ElementIndex x) {
    if (within_l1(probe_f, x, epsilon)) good.insert(x);
  });

  // ||F^2 - (tau_x F)^2||_1 <= ||F - tau_x F||_2 ||F + tau_x F||_2
  //                          <= 2 ||F - tau_x F||_2 ||F||_2.
  const TranslationProbe probe_root(smoothed);
  const Rational root_energy = l2_norm_squared(smoothed);
  std::size_t bound_failures = 0;
  std::size_t in_good = 0;
  chang.witnesses.for_each([&](ElementIndex x) {
    const Rational l1 = probe_f.l1_defect(x);
    if (l1 * l1 > 4 * probe_root.l2_defect_squared(x) * root_energy) ++bound_failures;
    if (good.contains(x)) ++in_good;
  });
  record(checks, make_check("witness_l1_cauchy_schwarz", "almost-invariant function", size_q(bound_failures), "<=",
                            Rational(0)));
  record(checks, make_check("witnesses_in_good", "almost-invariant function",
                            size_q(chang.witnesses.size() - in_good), "<=", Rational(0), corrected));

  return AlmostInvariantResult{
      .epsilon = epsilon,
      .delta = delta,
      .kappa = kappa,
      .cover = std::move(cover),
      .step_cap = cap,
      .chang = std::move(chang),
      .v = std::move(v),
      .f = std::move(f),
      .smoothed = std::move(smoothed),
      .good = std::move(good),
      .witnesses_in_good = in_good,
      .checks = std::move(checks),
  };
}

ContainmentCheck annihilator_containment_check(const RationalFunc& g, const GroupSet& a, const Rational& epsilon) {
  require_same_group(g.spec(), a.spec(), "annihilator containment");
  if (g.is_zero()) throw DomainError("g must not vanish identically");
  if (sgn(epsilon) <= 0 || epsilon > 1) throw DomainError("epsilon must lie in (0, 1]");
  const GroupSpec& spec = g.spec();

  ContainmentCheck out;
  const TranslationProbe probe(g);
  a.for_each([&](ElementIndex x) {
    if (!out.hypothesis_witness && !within_l1(probe, x, epsilon)) out.hypothesis_witness = x;
  });
  out.hypothesis_holds = !out.hypothesis_witness;

  out.threshold = epsilon * static_cast<unsigned long>(spec.exponent());
  out.vacuous = out.threshold > 1;
  const CharSet large = spectrum_at_threshold(dft(g), l1_norm(g).get_d(), out.threshold.get_d());
  const GroupSet perp = annihilator(large);
  out.spectrum_size = large.size();
  out.annihilator_size = perp.size();
  out.escapees = (a - perp).size();
  out.contained = out.escapees == 0;
  return out;
}

AnnihilatorBound spec_annihilator_bound(const GroupSet& a, const GroupSet& a_prime, const RationalFunc& h,
                                        const RationalFunc& g, const Rational& epsilon,
                                        const GroupSet* invariant_under) {
  require_same_group(a.spec(), a_prime.spec(), "annihilator bound");
  require_same_group(a.spec(), h.spec(), "annihilator bound");
  require_same_group(a.spec(), g.spec(), "annihilator bound");
  if (a.empty()) throw DomainError("A must be non-empty");
  if (g.is_zero()) throw DomainError("g must not vanish identically");
  const GroupSpec& spec = a.spec();

  AnnihilatorBound out;
  std::vector<std::string> notes;
  if (sgn(epsilon) <= 0 || epsilon > Rational(1, 2)) notes.push_back("epsilon outside (0, 1/2]");
  if (h.is_zero()) notes.push_back("h vanishes");
  if (!h.is_nonnegative()) notes.push_back("h takes negative values");
  if (!h.support_set().is_subset_of(a)) notes.push_back("h not supported on A");
  if (!g.is_nonnegative()) notes.push_back("g takes negative values");
  if (!g.support_set().is_subset_of(a_prime)) notes.push_back("g not supported on A'");

  if (!h.is_zero()) {
    const TranslationProbe probe(h);
    boost::dynamic_bitset<> settled(spec.order());
    std::vector<ElementIndex> shifts;
    if (invariant_under != nullptr) {
      require_same_group(spec, invariant_under->spec(), "annihilator bound");
      const auto members = invariant_under->indices();
      bool invariant = is_subgroup(*invariant_under);
      for (auto gen : greedy_generators(spec, members)) {
        if (!invariant) break;
        invariant = translate(h, gen) == h;
      }
      if (invariant) shifts = members;
      else notes.push_back("h not invariant under the supplied subgroup");
    }
    bool translation_ok = true;
    a_prime.for_each([&](ElementIndex x) {
      if (!translation_ok || settled.test(x)) return;
      if (!within_l1(probe, x, epsilon)) translation_ok = false;
      settled.set(x);
      for (auto s : shifts) settled.set(spec.add(x, s));
    });
    if (!translation_ok) notes.push_back("translation hypothesis fails on A'");
  }

  out.hypotheses_hold = notes.empty();
  for (const auto& n : notes) out.hypothesis_note += (out.hypothesis_note.empty() ? "" : "; ") + n;

  out.doubling = doubling_constant(a);
  out.threshold = 1.0 / (4.0 * std::pow(out.doubling.get_d(), 2.0 * epsilon.get_d()));
  const CharSet large = spectrum_at_threshold(dft(g), l1_norm(g).get_d(), out.threshold);
  out.spectrum_size = large.size();
  out.annihilator_size = annihilator(large).size();
  out.bound = 4 * out.doubling * static_cast<unsigned long>(a.size());
  out.holds = size_q(out.annihilator_size) <= out.bound;
  return out;
}

bool PipelineReport::all_unconditional_hold() const {
  for (const auto& c : checks) {
    if (c.unconditional && !c.holds) return false;
  }
  return true;
}

PipelineReport theorem_driver(const GroupSet& a, const DriverOptions& options) {
  if (a.empty()) throw DomainError("A must be non-empty");
  const GroupSpec& spec = a.spec();
  const std::uint64_t r = spec.exponent();
  std::vector<CheckRecord> checks;

  auto select = [&](const GroupSet* universe) {
    const std::size_t pool = universe != nullptr ? universe->size() : a.size();
    PetridisMode mode = options.petridis;
    if (mode == PetridisMode::exhaustive && pool > options.petridis_cap) mode = PetridisMode::singletons_and_A;
    return petridis_subset(a, mode, universe, options.petridis_cap);
  };
  auto stage = [&](const GroupSet& set, const Rational& parameter, const char* prefix) {
    try {
      AlmostInvariantResult result = almost_invariant_pair(set, parameter, options.stage);
      for (auto c : result.checks) {
        c.name = std::string(prefix) + c.name;
        checks.push_back(std::move(c));
      }
      return result;
    } catch (const PipelineError& e) {
      for (auto c : e.checks) {
        c.name = std::string(prefix) + c.name;
        checks.push_back(std::move(c));
      }
      throw PipelineError(std::string(prefix) + e.what(), checks);
    }
  };

  const Rational doubling = doubling_constant(a);
  const double k = doubling.get_d();

  PetridisResult petridis = select(nullptr);
  record(checks, make_check("petridis_ratio_at_most_K", "Petridis selection", petridis.ratio, "<=", doubling));

  const Rational epsilon = rational_floor(1.0 / (4.0 * std::log(2.0 * k)), options.parameter_denominator);
  AlmostInvariantResult stage1 = stage(petridis.z, epsilon, "stage1.");
  const GroupSet& z1 = stage1.good;
  record(checks, make_check("stage1_set_nonempty", "end-to-end argument", Rational(1), "<=", size_q(z1.size())));

  const Rational eta =
      rational_floor(1.0 / (4.0 * static_cast<double>(r) * std::sqrt(std::numbers::e)), options.parameter_denominator);
  AlmostInvariantResult stage2 = stage(z1, eta, "stage2.");
  const GroupSet& z2 = stage2.good;
  record(checks, make_check("stage2_set_nonempty", "end-to-end argument", Rational(1), "<=", size_q(z2.size())));

  // h = f * mu_{V'}.
  const GroupSet& v2 = stage2.v;
  RationalFunc h = coset_average(stage1.f, v2);
  std::size_t variant = 0;
  for (auto gen : greedy_generators(spec, v2.indices())) {
    if (!(translate(h, gen) == h)) ++variant;
  }
  record(checks, make_check("h_invariant_under_V2", "end-to-end argument", size_q(variant), "<=", Rational(0)));

  // Invariance makes ||h - tau_z h||_1 constant on cosets of V', and Z'
  // meets every coset of Z' + V'.
  const TranslationProbe probe_h(h);
  const Rational f_mass = l1_norm(stage1.f);
  Rational worst(0);
  z1.for_each([&](ElementIndex z) {
    const Rational d = probe_h.l1_defect(z);
    if (d > worst) worst = d;
  });
  record(checks, make_check("h_translation_bound", "end-to-end argument", worst, "<=", epsilon * f_mass));

  GroupSet b = sumset(sumset(petridis.z, stage1.v), v2);
  record(checks, make_check("h_support_in_B", "end-to-end argument", size_q((h.support_set() - b).size()), "<=",
                            Rational(0)));
  const Rational b_doubling = doubling_constant(b);
  record(checks, make_check("B_doubling_at_most_KZ", "Petridis selection", b_doubling, "<=", petridis.ratio,
                            petridis.exhaustive));

  const GroupSet a_prime = sumset(z1, v2);
  AnnihilatorBound lemma_bound = spec_annihilator_bound(b, a_prime, h, stage2.f, epsilon, &v2);
  record(checks, make_check("annihilator_bound_hypotheses", "spectrum annihilator size",
                            lemma_bound.hypotheses_hold ? Rational(0) : Rational(1), "<=", Rational(0)));
  record(checks, make_check("annihilator_bound", "spectrum annihilator size", size_q(lemma_bound.annihilator_size),
                            "<=", lemma_bound.bound, lemma_bound.hypotheses_hold));

  const double final_threshold = 1.0 / (4.0 * std::sqrt(std::numbers::e));
  const CharSet final_spectrum = spectrum_at_threshold(dft(stage2.f), l1_norm(stage2.f).get_d(), final_threshold);
  GroupSet final_perp = annihilator(final_spectrum);
  record(checks, make_check("annihilator_bound_at_fixed_threshold", "end-to-end argument", size_q(final_perp.size()),
                            "<=", 4 * doubling * static_cast<unsigned long>(b.size()), b_doubling <= doubling));

  ContainmentCheck containment = annihilator_containment_check(stage2.f, z2, eta);
  record(checks, make_check("containment_hypothesis", "annihilator containment",
                            containment.hypothesis_holds ? Rational(0) : Rational(1), "<=", Rational(0)));
  record(checks, make_check("containment", "annihilator containment", size_q(containment.escapees), "<=",
                            Rational(0), containment.hypothesis_holds));
  record(checks, make_check("stage2_set_in_fixed_annihilator", "end-to-end argument",
                            size_q((z2 - final_perp).size()), "<=", Rational(0)));

  PetridisResult reselection = select(&z2);
  GroupSet v_final = subgroup_closure(reselection.z);
  record(checks, make_check("V3_in_fixed_annihilator", "end-to-end argument", size_q((v_final - final_perp).size()),
                            "<=", Rational(0)));
  const std::size_t spread = sumset(a, v_final).size();
  if (spread % v_final.size() != 0) throw VerificationError("A + V''' is not a union of cosets");
  const std::size_t cosets = spread / v_final.size();
  record(checks, make_check("A_plus_V3_petridis", "Petridis selection", size_q(spread), "<=",
                            reselection.ratio * static_cast<unsigned long>(v_final.size()), reselection.exhaustive));

  GroupSet closure = subgroup_closure(a);
  Integer coset_bound;
  mpz_ui_pow_ui(coset_bound.get_mpz_t(), r, cosets);
  coset_bound *= static_cast<unsigned long>(v_final.size());
  record(checks, make_check("closure_bound", "end-to-end argument", size_q(closure.size()), "<=", Rational(coset_bound)));

  Rational closure_ratio(static_cast<unsigned long>(closure.size()), static_cast<unsigned long>(a.size()));
  closure_ratio.canonicalize();
  const double log2k = std::log(2.0 * k);

  return PipelineReport{
      .a = a,
      .doubling = doubling,
      .exponent = r,
      .petridis = std::move(petridis),
      .stage1 = std::move(stage1),
      .stage2 = std::move(stage2),
      .b = std::move(b),
      .h = std::move(h),
      .b_doubling = b_doubling,
      .lemma_bound = std::move(lemma_bound),
      .final_threshold = final_threshold,
      .final_spectrum_size = final_spectrum.size(),
      .final_annihilator = std::move(final_perp),
      .containment = containment,
      .reselection = std::move(reselection),
      .v_final = std::move(v_final),
      .coset_count = cosets,
      .closure = std::move(closure),
      .closure_ratio = closure_ratio,
      .comparison_value = std::exp(k * log2k * log2k),
      .checks = std::move(checks),
  };
}

}  // namespace freiman
