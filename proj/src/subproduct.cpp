// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/subproduct.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "freiman/covering.hpp"
#include "freiman/errors.hpp"
#include "freiman/functions.hpp"

namespace freiman {

TupleSet::TupleSet(std::vector<Tuple> tuples) : tuples_(std::move(tuples)) {
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

TupleSet TupleSet::unit() { return TupleSet(std::vector<Tuple>{Tuple{}}); }

bool TupleSet::contains(const Tuple& t) const { return std::binary_search(tuples_.begin(), tuples_.end(), t); }

namespace {

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t[i]);
  }
  return out + ")";
}

ChainVerdict fail(int axiom, unsigned level, Tuple witness, std::string message) {
  return ChainVerdict{false, axiom, level, std::move(witness), std::move(message)};
}

void check_limits(const GroupSet& a, unsigned k, const ChainLimits& limits) {
  if (k > limits.max_k) throw DomainError("chain length " + std::to_string(k) + " exceeds the cap " + std::to_string(limits.max_k));
  double tuples = 1.0;
  for (unsigned i = 0; i < k; ++i) tuples *= static_cast<double>(a.size());
  if (tuples > static_cast<double>(limits.max_tuples)) {
    throw DomainError("|A|^k = " + std::to_string(static_cast<std::uint64_t>(tuples)) + " exceeds the tuple cap");
  }
}

// Every extension p || a with p in `prefixes`, a in A, kept when `keep`
// accepts it.
template <class Keep>
TupleSet extend(const TupleSet& prefixes, const std::vector<ElementIndex>& alphabet, Keep&& keep) {
  std::vector<Tuple> out;
  for (const auto& p : prefixes) {
    Tuple t = p;
    t.push_back(0);
    for (auto a : alphabet) {
      t.back() = a;
      if (keep(t)) out.push_back(t);
    }
  }
  return TupleSet(std::move(out));
}

Rational unit_density() { return Rational(1); }

}  // namespace

ChainVerdict verify_chain(const Chain& chain, const TupleSet* target) {
  const std::size_t n = chain.base.size();
  if (chain.levels.size() != chain.k + 1) return fail(0, 0, {}, "expected k + 1 levels");
  if (chain.nu.size() != chain.k) return fail(0, 0, {}, "expected k densities");
  for (unsigned i = 0; i < chain.k; ++i) {
    if (sgn(chain.nu[i]) <= 0 || chain.nu[i] > 1) return fail(0, i + 1, {}, "density outside (0, 1]");
  }

  if (!(chain.levels[0] == TupleSet::unit())) return fail(1, 0, {}, "level 0 must be {()}");
  if (target != nullptr) {
    for (const auto& t : chain.top()) {
      if (!target->contains(t)) return fail(1, chain.k, t, "top level not contained in the target set");
    }
  }

  for (unsigned i = 1; i <= chain.k; ++i) {
    for (const auto& t : chain.levels[i]) {
      if (t.size() != i) return fail(2, i, t, "tuple of wrong length");
      for (auto e : t) {
        if (!chain.base.contains(e)) return fail(2, i, t, "tuple entry outside A");
      }
    }
  }

  const auto alphabet = chain.base.indices();
  for (unsigned i = 1; i <= chain.k; ++i) {
    const Rational need = chain.nu[i - 1] * static_cast<unsigned long>(n);
    for (const auto& p : chain.levels[i - 1]) {
      Tuple t = p;
      t.push_back(0);
      std::size_t count = 0;
      for (auto a : alphabet) {
        t.back() = a;
        if (chain.levels[i].contains(t)) ++count;
      }
      if (Rational(static_cast<unsigned long>(count)) < need) {
        return fail(3, i, p,
                    "prefix " + tuple_text(p) + " extends in " + std::to_string(count) + " ways, needs " + need.get_str());
      }
    }
  }
  return ChainVerdict{};
}

bool chain_size_bound_holds(const Chain& chain) {
  Rational bound(1);
  for (const auto& v : chain.nu) bound *= v;
  bound *= pow(Rational(static_cast<unsigned long>(chain.base.size())), chain.k);
  return Rational(static_cast<unsigned long>(chain.top().size())) >= bound;
}

Chain product_chain(const GroupSet& a, const std::vector<GroupSet>& factors, const ChainLimits& limits) {
  const auto k = static_cast<unsigned>(factors.size());
  check_limits(a, k, limits);
  Chain chain{a, k, {TupleSet::unit()}, {}};
  for (unsigned i = 0; i < k; ++i) {
    const GroupSet& f = factors[i];
    require_same_group(a.spec(), f.spec(), "product chain");
    if (f.empty()) throw DomainError("product chain factor " + std::to_string(i + 1) + " is empty");
    if (!f.is_subset_of(a)) throw DomainError("product chain factor " + std::to_string(i + 1) + " is not a subset of A");
    const auto members = f.indices();
    chain.levels.push_back(extend(chain.levels.back(), members, [](const Tuple&) { return true; }));
    Rational nu(static_cast<unsigned long>(f.size()), static_cast<unsigned long>(a.size()));
    nu.canonicalize();
    chain.nu.push_back(nu);
  }
  return chain;
}

Chain intersect_chains(const Chain& c, const Chain& c2) {
  if (!(c.base == c2.base) || c.k != c2.k || c.levels.size() != c2.levels.size() || c.nu.size() != c2.nu.size()) {
    throw StructuralError("chains differ in base set or length");
  }
  Chain out{c.base, c.k, {}, {}};
  for (unsigned i = 0; i < c.k; ++i) {
    Rational nu = c.nu[i] + c2.nu[i] - 1;
    if (sgn(nu) <= 0) {
      throw DomainError("eta + eta' must stay below 1; level " + std::to_string(i + 1) + " has density " + nu.get_str());
    }
    out.nu.push_back(nu);
  }
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    std::vector<Tuple> both;
    std::set_intersection(c.levels[i].begin(), c.levels[i].end(), c2.levels[i].begin(), c2.levels[i].end(),
                          std::back_inserter(both));
    out.levels.emplace_back(std::move(both));
  }
  return out;
}

TupleSet covering_target(const GroupSet& a, const GroupSet& x_set, ElementIndex x, const std::vector<unsigned>& s,
                         unsigned k) {
  const GroupSpec& spec = a.spec();
  const GroupSet reach = sumset(k_fold_sum(x_set, static_cast<unsigned>(s.size())), a);
  TupleSet level = TupleSet::unit();
  const auto alphabet = a.indices();
  for (unsigned i = 1; i <= k; ++i) {
    if (i < k) {
      level = extend(level, alphabet, [](const Tuple&) { return true; });
      continue;
    }
    level = extend(level, alphabet, [&](const Tuple& t) {
      ElementIndex sum = x;
      for (auto pos : s) sum = spec.add(sum, t[pos - 1]);
      return reach.contains(sum);
    });
  }
  return level;
}

Chain covering_chain(const GroupSet& a, const GroupSet& x_set, const Rational& delta, ElementIndex x,
                     const std::vector<unsigned>& s, unsigned k, const ChainLimits& limits) {
  const GroupSpec& spec = a.spec();
  require_same_group(spec, x_set.spec(), "covering chain");
  check_limits(a, k, limits);
  if (sgn(delta) < 0 || delta >= 1) throw DomainError("delta must lie in [0, 1)");
  if (!x_set.contains(0)) throw DomainError("X must contain the identity");
  if (!a.contains(x)) throw DomainError("x must belong to A");
  if (!verify_covered(a, x_set, delta).covered) throw DomainError("A is not (1-delta)-covered by X");
  std::vector<unsigned> positions = s;
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  for (auto p : positions) {
    if (p < 1 || p > k) throw DomainError("S must be a subset of {1..k}");
  }

  const auto alphabet = a.indices();
  const GroupSet covered_by_x = sumset(x_set, a);
  std::vector<GroupSet> multiples{GroupSet::singleton(spec, 0)};  // mX for m = 0..|S|
  for (std::size_t m = 1; m <= positions.size(); ++m) multiples.push_back(sumset(multiples.back(), x_set));

  // S = {} : the full product A^i at every level.
  Chain chain{a, k, {TupleSet::unit()}, std::vector<Rational>(k, unit_density())};
  for (unsigned i = 1; i <= k; ++i) {
    chain.levels.push_back(extend(chain.levels.back(), alphabet, [](const Tuple&) { return true; }));
  }

  // Add the elements of S in increasing order; at each stage j is the
  // largest element so far and S' the earlier ones.
  for (std::size_t stage = 0; stage < positions.size(); ++stage) {
    const unsigned j = positions[stage];
    const std::vector<unsigned> earlier(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(stage));
    const GroupSet reach = sumset(multiples[stage + 1], a);   // |S| X + A
    const GroupSet& witness_pool = multiples[stage];          // |S'| X

    const TupleSet& prefixes = chain.levels[j - 1];
    std::vector<Tuple> level_j;
    for (const auto& p : prefixes) {
      ElementIndex partial = x;
      for (auto pos : earlier) partial = spec.add(partial, p[pos - 1]);

      // U(p) in |S'|X with partial - U in A; it exists because p extends
      // to a tuple of the previous stage's top level.
      std::optional<ElementIndex> u;
      witness_pool.for_each([&](ElementIndex cand) {
        if (!u && a.contains(spec.subtract(partial, cand))) u = cand;
      });
      if (!u) throw VerificationError("covering chain: no witness U for prefix " + tuple_text(p));
      const ElementIndex anchor = spec.subtract(partial, *u);

      Tuple t = p;
      t.push_back(0);
      for (auto e : alphabet) {
        t.back() = e;
        const bool member = reach.contains(spec.add(partial, e));
        if (covered_by_x.contains(spec.add(anchor, e)) && !member) {
          throw VerificationError("covering chain: U + X + A escapes |S|X + A");
        }
        if (member) level_j.push_back(t);
      }
    }
    chain.levels[j] = TupleSet(std::move(level_j));
    chain.nu[j - 1] = Rational(1) - delta;
    for (unsigned i = j + 1; i <= k; ++i) {
      chain.levels[i] = extend(chain.levels[i - 1], alphabet, [](const Tuple&) { return true; });
    }
  }
  return chain;
}

EnergyBoundCheck energy_bound_check(const GroupSet& a, const GroupSet& x_set, const Chain& chain,
                                    const Rational& delta, const Rational& eta) {
  require_same_group(a.spec(), x_set.spec(), "energy bound");
  EnergyBoundCheck check;
  const unsigned k = chain.k;

  std::vector<std::string> problems;
  const Rational half(1, 2);
  if (sgn(delta) < 0 || delta >= half) problems.push_back("delta outside [0, 1/2)");
  if (sgn(eta) < 0 || eta >= half) problems.push_back("eta outside [0, 1/2)");
  if (!x_set.contains(0)) problems.push_back("identity not in X");
  if (!(chain.base == a)) problems.push_back("chain base differs from A");
  if (!verify_covered(a, x_set, delta).covered) problems.push_back("A not (1-delta)-covered by X");
  const ChainVerdict verdict = verify_chain(chain);
  if (!verdict.ok) problems.push_back("chain fails verification: " + verdict.message);
  for (const auto& v : chain.nu) {
    if (v < Rational(1) - eta) {
      problems.push_back("chain density below 1 - eta");
      break;
    }
  }
  check.preconditions_hold = problems.empty();
  for (const auto& p : problems) check.precondition_note += (check.precondition_note.empty() ? "" : "; ") + p;

  // Tuples are sorted, so consecutive ones share prefixes; keep one
  // smoothed function per depth.
  const RationalFunc base = indicator(a);
  std::vector<RationalFunc> stack{base};
  Tuple current;
  Rational lhs(0);
  const Rational half_weight(1, 2);
  for (const auto& t : chain.top()) {
    std::size_t common = 0;
    while (common < current.size() && common < t.size() && current[common] == t[common]) ++common;
    stack.resize(common + 1, base);
    for (std::size_t d = common; d < t.size(); ++d) {
      const std::array<ElementIndex, 1> step{t[d]};
      stack.push_back(smooth(stack.back(), step));
    }
    current = t;
    lhs += l2_norm_squared(stack.back());
  }
  check.lhs = lhs;

  const std::size_t kx = k_fold_sum(x_set, k).size();
  check.rhs = pow(Rational(1) - eta, 2 * k) * pow(Rational(1) - delta, 2 * k) *
              pow(Rational(static_cast<unsigned long>(a.size())), k + 1) / static_cast<unsigned long>(kx);
  check.holds = check.lhs >= check.rhs;
  return check;
}

}  // namespace freiman
