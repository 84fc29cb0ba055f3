// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/chang.hpp"

#include <array>
#include <cmath>

#include "freiman/errors.hpp"

namespace freiman {

namespace {

void require_kappa(const Rational& kappa) {
  if (sgn(kappa) <= 0 || kappa > 1) throw DomainError("kappa must lie in (0, 1]");
}

GroupSet passing(const RationalFunc& smoothed, const GroupSet& a, const Rational& kappa) {
  const TranslationProbe probe(smoothed);
  // defect_scaled < kappa * l2_scaled, cleared of kappa's denominator.
  const Integer bound = kappa.get_num() * probe.l2_scaled();
  GroupSet out(a.spec());
  a.for_each([&](ElementIndex x) {
    if (probe.l2_defect_scaled(x) * kappa.get_den() < bound) out.insert(x);
  });
  return out;
}

}  // namespace

GroupSet invariant_set(const RationalFunc& h, const GroupSet& a, std::span<const ElementIndex> tuple,
                       const Rational& kappa) {
  require_same_group(h.spec(), a.spec(), "invariant set");
  require_kappa(kappa);
  if (h.is_zero()) throw DomainError("h must not vanish identically");
  return passing(smooth(h, tuple), a, kappa);
}

DecrementStep decrement_check(const RationalFunc& h, std::span<const ElementIndex> tuple, ElementIndex x,
                              const Rational& kappa) {
  const RationalFunc before = smooth(h, tuple);
  const std::array<ElementIndex, 1> step{x};
  const RationalFunc after = smooth(before, step);
  DecrementStep out;
  out.x = x;
  out.energy_before = l2_norm_squared(before);
  out.energy_after = l2_norm_squared(after);
  out.defect = TranslationProbe(before).l2_defect_squared(x);
  out.identity_holds = out.energy_after == out.energy_before - out.defect / 4;
  out.decremented = out.energy_after <= (Rational(1) - kappa / 4) * out.energy_before;
  return out;
}

ChangOutcome chang_iterate(const RationalFunc& h, const GroupSet& a, const Rational& kappa, const Rational& eta,
                           unsigned k_max) {
  require_same_group(h.spec(), a.spec(), "Chang iteration");
  require_kappa(kappa);
  if (sgn(eta) < 0 || eta > 1) throw DomainError("eta must lie in [0, 1]");
  if (!h.is_nonnegative()) throw DomainError("h must be non-negative");
  if (h.is_zero()) throw DomainError("h must not vanish identically");
  if (a.empty()) throw DomainError("A must be non-empty");

  const GroupSpec& spec = h.spec();
  const Rational mass = h.sum();
  const Rational floor = mass * mass / static_cast<unsigned long>(spec.order());
  const Rational need = eta * static_cast<unsigned long>(a.size());
  const Rational shrink = Rational(1) - kappa / 4;

  ChangOutcome out{ChangOutcome::Tag::invariant, {}, {}, {}, GroupSet(spec), true};
  RationalFunc current = h;
  out.energies.push_back(l2_norm_squared(current));
  for (unsigned i = 0;; ++i) {
    if (out.energies.back() < floor) out.floor_holds = false;
    const GroupSet pass = passing(current, a, kappa);
    if (Rational(static_cast<unsigned long>(pass.size())) >= need) {
      out.tag = ChangOutcome::Tag::invariant;
      out.witnesses = pass;
      return out;
    }
    if (i == k_max) break;

    const GroupSet fail = a - pass;
    const ElementIndex x = fail.min();
    const TranslationProbe probe(current);
    const std::array<ElementIndex, 1> step{x};
    RationalFunc next = smooth(current, step);

    DecrementStep record;
    record.x = x;
    record.energy_before = out.energies.back();
    record.energy_after = l2_norm_squared(next);
    record.defect = probe.l2_defect_squared(x);
    record.identity_holds = record.energy_after == record.energy_before - record.defect / 4;
    record.decremented = record.energy_after <= shrink * record.energy_before;
    if (!record.identity_holds) throw VerificationError("Chang step: parallelogram identity failed");
    if (!record.decremented) throw VerificationError("Chang step: failing element did not decrement the energy");

    out.tuple.push_back(x);
    out.energies.push_back(record.energy_after);
    out.steps.push_back(std::move(record));
    current = std::move(next);
  }
  out.tag = ChangOutcome::Tag::decrement;
  return out;
}

unsigned energy_floor_steps(std::uint64_t group_order, std::size_t set_size, const Rational& kappa) {
  require_kappa(kappa);
  if (set_size == 0 || set_size > group_order) throw DomainError("set size must lie in [1, |G|]");
  const double ratio = std::log(static_cast<double>(group_order) / static_cast<double>(set_size));
  const double rate = -std::log1p(-kappa.get_d() / 4.0);
  return static_cast<unsigned>(std::ceil(ratio / rate));
}

}  // namespace freiman
