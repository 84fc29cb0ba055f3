// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/covering.hpp"

#include "freiman/errors.hpp"
#include "freiman/functions.hpp"

namespace freiman {

namespace {

void require_nonempty(const GroupSet& s, const char* name) {
  if (s.empty()) throw DomainError(std::string(name) + " must be non-empty");
}

// count < (1 - delta) * total, exactly.
bool below_coverage(std::size_t count, std::size_t total, const Rational& delta) {
  return Rational(static_cast<unsigned long>(count)) < (Rational(1) - delta) * static_cast<unsigned long>(total);
}

std::size_t overlap(const GroupSet& translate, const GroupSet& covered) {
  return (translate.bits() & covered.bits()).count();
}

}  // namespace

CoverCertificate statistical_cover(const GroupSet& a, const GroupSet& b, const Rational& delta) {
  require_same_group(a.spec(), b.spec(), "statistical cover");
  require_nonempty(a, "A");
  require_nonempty(b, "B");
  if (sgn(delta) <= 0 || delta > 1) throw DomainError("delta must lie in (0, 1]");

  const auto members = a.indices();
  std::vector<GroupSet> translates;
  translates.reserve(members.size());
  for (auto x : members) translates.push_back(b.translate(x));

  CoverCertificate cert{GroupSet(a.spec()), delta, {}, {}, {}, {}, false};
  const ElementIndex seed = members.front();
  cert.x.insert(seed);
  cert.trace.push_back(seed);
  GroupSet covered = translates.front();

  for (;;) {
    std::size_t violator = members.size();
    for (std::size_t t = 0; t < members.size(); ++t) {
      if (below_coverage(overlap(translates[t], covered), b.size(), delta)) {
        violator = t;
        break;
      }
    }
    if (violator == members.size()) break;
    cert.x.insert(members[violator]);
    cert.trace.push_back(members[violator]);
    covered |= translates[violator];
  }

  bool all_covered = true;
  for (std::size_t t = 0; t < members.size(); ++t) {
    const std::size_t count = overlap(translates[t], covered);
    cert.per_x_coverage.emplace_back(members[t], count);
    if (below_coverage(count, b.size(), delta)) all_covered = false;
  }
  cert.doubling = Rational(static_cast<unsigned long>(sumset(a, b).size()), static_cast<unsigned long>(b.size()));
  cert.doubling.canonicalize();
  cert.size_bound = (cert.doubling - 1) / delta + 1;
  cert.valid = all_covered && Rational(static_cast<unsigned long>(cert.x.size())) <= cert.size_bound;
  return cert;
}

bool check_cover_growth(const GroupSet& b, const CoverCertificate& cert) {
  GroupSet prefix(b.spec());
  for (std::size_t i = 0; i < cert.trace.size(); ++i) {
    prefix.insert(cert.trace[i]);
    if (i == 0) continue;
    const std::size_t grown = sumset(prefix, b).size();
    const Rational floor = cert.delta * static_cast<unsigned long>(b.size()) * static_cast<unsigned long>(i) +
                           static_cast<unsigned long>(b.size());
    if (!(Rational(static_cast<unsigned long>(grown)) > floor)) return false;
  }
  return true;
}

GroupSet ruzsa_cover(const GroupSet& a, const GroupSet& b) {
  require_same_group(a.spec(), b.spec(), "Ruzsa cover");
  require_nonempty(a, "A");
  require_nonempty(b, "B");

  GroupSet x(a.spec());
  GroupSet occupied(a.spec());
  a.for_each([&](ElementIndex candidate) {
    GroupSet shifted = b.translate(candidate);
    if (!shifted.intersects(occupied)) {
      x.insert(candidate);
      occupied |= shifted;
    }
  });

  const GroupSet reach = sumset(x, difference_set(b, b));
  if (!a.is_subset_of(reach)) throw VerificationError("Ruzsa cover: A is not contained in X + B - B");
  const std::size_t ab = sumset(a, b).size();
  if (x.size() * b.size() > ab) throw VerificationError("Ruzsa cover: |X| exceeds |A+B|/|B|");
  return x;
}

CoverVerdict verify_covered(const GroupSet& a, const GroupSet& x, const Rational& delta) {
  require_same_group(a.spec(), x.spec(), "covering check");
  require_nonempty(a, "A");
  const GroupSet covered = sumset(x, a);
  std::size_t min_count = a.size();
  a.for_each([&](ElementIndex y) {
    const std::size_t count = overlap(a.translate(y), covered);
    if (count < min_count) min_count = count;
  });
  CoverVerdict verdict;
  verdict.min_fraction = Rational(static_cast<unsigned long>(min_count), static_cast<unsigned long>(a.size()));
  verdict.min_fraction.canonicalize();
  verdict.covered = verdict.min_fraction >= Rational(1) - delta;
  return verdict;
}

IteratedCoverCheck verify_iterated_cover(const GroupSet& a, const GroupSet& x, const Rational& delta, unsigned k) {
  require_same_group(a.spec(), x.spec(), "iterated cover");
  require_nonempty(a, "A");
  IteratedCoverCheck check;
  check.covered = verify_covered(a, x, delta).covered;
  check.identity_in_x = x.contains(0);

  const RationalFunc power = convolution_power(indicator(a), k + 1);
  const GroupSet target = sumset(k_fold_sum(x, k), a);
  check.lhs = inner_product(power, indicator(target));
  check.rhs = pow(Rational(1) - delta, k) * pow(Rational(static_cast<unsigned long>(a.size())), k + 1);
  check.holds = check.lhs >= check.rhs;
  return check;
}

}  // namespace freiman
