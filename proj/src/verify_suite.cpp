// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/verify_suite.hpp"

#include <algorithm>
#include <cmath>

#include "freiman/chang.hpp"
#include "freiman/covering.hpp"
#include "freiman/errors.hpp"
#include "freiman/fourier.hpp"
#include "freiman/pipeline.hpp"
#include "freiman/rng.hpp"
#include "freiman/subproduct.hpp"

namespace freiman {

namespace {

std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over the combined words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SuiteEntry make_entry(std::string name, std::string anchor) {
  SuiteEntry e;
  e.name = std::move(name);
  e.anchor = std::move(anchor);
  return e;
}

void tally(SuiteEntry& entry, bool ok, const std::string& detail) {
  ++entry.instances;
  if (ok) return;
  if (entry.failures == 0) entry.first_failure = detail;
  ++entry.failures;
}

struct Instance {
  std::string family;
  std::uint64_t seed;
  GroupSet set;
};

std::vector<Instance> families(const GroupSpec& spec, const SuiteOptions& options) {
  std::vector<Instance> out;
  const std::size_t cap = static_cast<std::size_t>(std::min<std::uint64_t>(options.max_set, spec.order()));
  const InstanceKind kinds[] = {InstanceKind::random, InstanceKind::subgroup, InstanceKind::coset_union,
                                InstanceKind::independent};
  for (std::size_t f = 0; f < std::size(kinds); ++f) {
    const std::size_t count = kinds[f] == InstanceKind::independent ? 1 : options.instances_per_family;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t seed = derive(options.seed, f, i);
      Rng rng(seed);
      InstanceParams params;
      params.size = kinds[f] == InstanceKind::random ? 1 + rng.below(cap) : 2;
      params.generator_count = 1 + rng.below(2);
      try {
        out.push_back({to_string(kinds[f]), seed, generate_instance(kinds[f], spec, params, seed)});
      } catch (const DomainError&) {
        // Subgroup of index 1: no second coset to take.
      }
    }
  }
  return out;
}

std::string describe(const Instance& inst) { return inst.family + " seed " + std::to_string(inst.seed); }

const Rational kDeltas[] = {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(3, 4)};

void covering_checks(const std::vector<Instance>& instances, const SuiteOptions& options,
                     std::vector<SuiteEntry>& out) {
  SuiteEntry stat = make_entry("statistical_cover", "statistical covering");
  SuiteEntry growth = make_entry("cover_growth", "statistical covering");
  SuiteEntry ruzsa = make_entry("ruzsa_cover", "Ruzsa covering");
  SuiteEntry iterated = make_entry("iterated_cover", "iterated covering inequality");
  for (const auto& inst : instances) {
    const GroupSet& a = inst.set;
    for (const auto& delta : kDeltas) {
      const CoverCertificate cert = statistical_cover(a, a, delta);
      const bool ok = cert.valid && verify_covered(a, cert.x, delta).covered &&
                      Rational(static_cast<unsigned long>(cert.x.size())) <= cert.size_bound;
      tally(stat, ok, describe(inst) + " delta " + delta.get_str());
      tally(growth, check_cover_growth(a, cert), describe(inst) + " delta " + delta.get_str());
      if (a.size() <= options.max_set) {
        GroupSet x = cert.x;
        x.insert(0);
        for (unsigned k = 1; k <= options.max_k; ++k) {
          tally(iterated, verify_iterated_cover(a, x, delta, k).holds,
                describe(inst) + " delta " + delta.get_str() + " k " + std::to_string(k));
        }
      }
    }
    bool ok = true;
    try {
      const GroupSet x = ruzsa_cover(a, a);
      GroupSet used(a.spec());
      x.for_each([&](ElementIndex e) {
        const GroupSet shifted = a.translate(e);
        if (shifted.intersects(used)) ok = false;
        used |= shifted;
      });
    } catch (const VerificationError&) {
      ok = false;
    }
    tally(ruzsa, ok, describe(inst));
  }
  out.push_back(stat);
  out.push_back(growth);
  out.push_back(ruzsa);
  out.push_back(iterated);
}

void chain_checks(const GroupSpec& spec, const SuiteOptions& options, std::vector<SuiteEntry>& out) {
  SuiteEntry axioms = make_entry("chain_axioms", "generalised sub-products");
  SuiteEntry size = make_entry("chain_size_bound", "generalised sub-products");
  SuiteEntry energy = make_entry("energy_bound", "energy lower bound");
  const unsigned max_k = std::min(options.max_k, 3u);
  Rng rng(derive(options.seed, 100, 0));
  for (std::size_t trial = 0; trial < options.instances_per_family; ++trial) {
    const std::size_t n = 1 + rng.below(std::min<std::uint64_t>(4, spec.order()));
    const GroupSet a = generate_instance(InstanceKind::random, spec, {n, {}, 1}, rng.next());
    const auto members = a.indices();
    const Rational delta = kDeltas[rng.below(2)];
    GroupSet x_set = statistical_cover(a, a, delta).x;
    x_set.insert(0);
    const std::string tag = "set " + a.to_string();

    for (unsigned k = 1; k <= max_k; ++k) {
      std::vector<GroupSet> factors;
      for (unsigned i = 0; i < k; ++i) {
        GroupSet f(spec);
        for (auto m : members) {
          if (rng.coin()) f.insert(m);
        }
        if (f.empty()) f.insert(members.front());
        factors.push_back(std::move(f));
      }
      const Chain product = product_chain(a, factors);
      tally(axioms, verify_chain(product).ok, tag + " product k " + std::to_string(k));
      tally(size, chain_size_bound_holds(product), tag + " product k " + std::to_string(k));

      const Chain full = product_chain(a, std::vector<GroupSet>(k, a));
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<unsigned> s;
        for (unsigned i = 0; i < k; ++i) {
          if (mask & (1u << i)) s.push_back(i + 1);
        }
        for (auto x : members) {
          const Chain c = covering_chain(a, x_set, delta, x, s, k);
          const TupleSet target = covering_target(a, x_set, x, s, k);
          const std::string where = tag + " k " + std::to_string(k) + " mask " + std::to_string(mask);
          tally(axioms, verify_chain(c, &target).ok, where);
          tally(size, chain_size_bound_holds(c), where);
          const Chain both = intersect_chains(c, full);
          tally(axioms, verify_chain(both).ok, where + " intersected");
          if (mask + 1 == (1u << k)) {
            tally(energy, energy_bound_check(a, x_set, c, delta, delta).holds, where);
          }
        }
      }
    }
  }
  out.push_back(axioms);
  out.push_back(size);
  out.push_back(energy);
}

void chang_checks(const std::vector<Instance>& instances, std::vector<SuiteEntry>& out) {
  SuiteEntry entry = make_entry("chang_identities", "Chang iteration");
  const Rational kappas[] = {Rational(1, 2), Rational(1)};
  const Rational eta(1, 4);
  for (const auto& inst : instances) {
    const GroupSet& a = inst.set;
    for (const auto& kappa : kappas) {
      const unsigned cap = energy_floor_steps(a.spec().order(), a.size(), kappa);
      const ChangOutcome run = chang_iterate(indicator(a), a, kappa, eta, cap);
      bool ok = run.is_invariant() && run.floor_holds && run.tuple.size() <= cap &&
                Rational(static_cast<unsigned long>(run.witnesses.size())) >= eta * static_cast<unsigned long>(a.size());
      for (const auto& step : run.steps) ok = ok && step.identity_holds && step.decremented;
      ok = ok && invariant_set(indicator(a), a, run.tuple, kappa) == run.witnesses;
      tally(entry, ok, describe(inst) + " kappa " + kappa.get_str());
    }
  }
  out.push_back(entry);
}

void fourier_checks(const GroupSpec& spec, const std::vector<Instance>& instances, std::vector<SuiteEntry>& out) {
  SuiteEntry parseval = make_entry("parseval", "Fourier transform");
  SuiteEntry duality = make_entry("annihilator_duality", "annihilator");
  SuiteEntry containment = make_entry("annihilator_containment", "annihilator containment");
  SuiteEntry bound = make_entry("spectrum_annihilator_bound", "spectrum annihilator size");
  const double n = static_cast<double>(spec.order());
  for (const auto& inst : instances) {
    const RationalFunc f = indicator(inst.set);
    const DualFunc t = dft(f);
    double energy = 0.0;
    for (const auto& c : t.values()) energy += std::norm(c);
    const double expected = n * l2_norm_squared(f).get_d();
    tally(parseval, std::abs(energy - expected) <= 1e-9 * expected, describe(inst));

    if (inst.family == "subgroup") {
      const GroupSet& v = inst.set;
      const GroupSet perp = annihilator(spectrum(f, 0.5));
      tally(duality, perp == v, describe(inst));
      const Rational eps(1, static_cast<unsigned long>(spec.exponent()));
      const ContainmentCheck c = annihilator_containment_check(f, v, eps);
      tally(containment, c.hypothesis_holds && c.contained, describe(inst));
      const AnnihilatorBound b = spec_annihilator_bound(v, v, f, f, Rational(1, 2));
      tally(bound, b.hypotheses_hold && b.holds, describe(inst));
    }
  }
  out.push_back(parseval);
  out.push_back(duality);
  out.push_back(containment);
  out.push_back(bound);
}

void pipeline_checks(const std::vector<Instance>& instances, const SuiteOptions& options,
                     std::vector<SuiteEntry>& out) {
  SuiteEntry petridis = make_entry("petridis", "Petridis selection");
  SuiteEntry driver = make_entry("theorem_driver", "end-to-end argument");
  SuiteEntry containment = make_entry("pipeline_containment", "annihilator containment");
  SuiteEntry bound = make_entry("pipeline_annihilator_bound", "spectrum annihilator size");
  for (const auto& inst : instances) {
    const GroupSet& a = inst.set;
    if (a.size() > options.max_set) continue;
    const PetridisResult p = petridis_subset(a);
    const auto family = petridis_family(a.spec(), inst.seed, 20);
    tally(petridis, p.ratio <= doubling_constant(a) && petridis_verify(a, p.z, family), describe(inst));

    try {
      const PipelineReport report = theorem_driver(a);
      tally(driver, report.all_unconditional_hold() && report.closure == subgroup_closure(a), describe(inst));
      tally(containment, report.containment.contained, describe(inst));
      tally(bound, report.lemma_bound.holds, describe(inst));
    } catch (const PipelineError& e) {
      tally(driver, false, describe(inst) + ": " + e.what());
    }
  }
  out.push_back(petridis);
  out.push_back(driver);
  out.push_back(containment);
  out.push_back(bound);
}

}  // namespace

std::vector<SuiteEntry> run_verify_suite(const GroupSpec& spec, const SuiteOptions& options) {
  const std::vector<Instance> instances = families(spec, options);
  std::vector<SuiteEntry> out;
  covering_checks(instances, options, out);
  chain_checks(spec, options, out);
  chang_checks(instances, out);
  fourier_checks(spec, instances, out);
  pipeline_checks(instances, options, out);
  return out;
}

}  // namespace freiman
