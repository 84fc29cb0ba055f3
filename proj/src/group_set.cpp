// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/group_set.hpp"

#include <deque>

#include "freiman/errors.hpp"
#include "freiman/rng.hpp"

namespace freiman {

GroupSet::GroupSet(GroupSpec spec) : spec_(std::move(spec)), bits_(spec_.order()) {}

GroupSet GroupSet::from_indices(GroupSpec spec, std::span<const ElementIndex> members) {
  GroupSet s(std::move(spec));
  for (auto i : members) {
    if (i >= s.spec_.order()) throw StructuralError("element index out of range");
    s.insert(i);
  }
  return s;
}

GroupSet GroupSet::from_elements(GroupSpec spec, std::span<const GroupElement> members) {
  GroupSet s(std::move(spec));
  for (const auto& x : members) s.insert(s.spec_.index_of(x));
  return s;
}

GroupSet GroupSet::from_bits(GroupSpec spec, boost::dynamic_bitset<> bits) {
  if (bits.size() != spec.order()) throw StructuralError("bitset length differs from the group order");
  GroupSet s(std::move(spec));
  s.bits_ = std::move(bits);
  s.size_ = s.bits_.count();
  return s;
}

GroupSet GroupSet::full(GroupSpec spec) {
  GroupSet s(std::move(spec));
  s.bits_.set();
  s.size_ = s.bits_.size();
  return s;
}

GroupSet GroupSet::singleton(GroupSpec spec, ElementIndex x) {
  GroupSet s(std::move(spec));
  s.insert(x);
  return s;
}

bool GroupSet::contains(const GroupElement& x) const { return contains(spec_.index_of(x)); }

void GroupSet::insert(ElementIndex x) {
  if (!bits_.test(x)) {
    bits_.set(x);
    ++size_;
  }
}

void GroupSet::erase(ElementIndex x) {
  if (bits_.test(x)) {
    bits_.reset(x);
    --size_;
  }
}

ElementIndex GroupSet::min() const {
  if (empty()) throw DomainError("minimum of an empty set");
  return static_cast<ElementIndex>(bits_.find_first());
}

std::vector<ElementIndex> GroupSet::indices() const {
  std::vector<ElementIndex> out;
  out.reserve(size_);
  for_each([&](ElementIndex i) { out.push_back(i); });
  return out;
}

std::vector<GroupElement> GroupSet::elements() const {
  std::vector<GroupElement> out;
  out.reserve(size_);
  for_each([&](ElementIndex i) { out.push_back(spec_.element(i)); });
  return out;
}

bool GroupSet::is_subset_of(const GroupSet& other) const {
  require_same_group(spec_, other.spec_, "subset test");
  return bits_.is_subset_of(other.bits_);
}

bool GroupSet::intersects(const GroupSet& other) const {
  require_same_group(spec_, other.spec_, "intersection test");
  return bits_.intersects(other.bits_);
}

GroupSet GroupSet::translate(ElementIndex x) const {
  GroupSet out(spec_);
  for_each([&](ElementIndex i) { out.insert(spec_.add(x, i)); });
  return out;
}

GroupSet GroupSet::negated() const {
  GroupSet out(spec_);
  for_each([&](ElementIndex i) { out.insert(spec_.negate(i)); });
  return out;
}

GroupSet& GroupSet::operator|=(const GroupSet& other) {
  require_same_group(spec_, other.spec_, "union");
  bits_ |= other.bits_;
  size_ = bits_.count();
  return *this;
}

GroupSet& GroupSet::operator&=(const GroupSet& other) {
  require_same_group(spec_, other.spec_, "intersection");
  bits_ &= other.bits_;
  size_ = bits_.count();
  return *this;
}

GroupSet& GroupSet::operator-=(const GroupSet& other) {
  require_same_group(spec_, other.spec_, "difference");
  bits_ -= other.bits_;
  size_ = bits_.count();
  return *this;
}

std::string GroupSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](ElementIndex i) {
    if (!first) out += ',';
    first = false;
    out += '(';
    for (std::size_t j = 0; j < spec_.rank(); ++j) {
      if (j) out += ',';
      out += std::to_string(spec_.digit(i, j));
    }
    out += ')';
  });
  return out + "}";
}

namespace {

// Digits of every member, laid out row-major, so the inner sumset loop
// avoids integer division.
struct DigitTable {
  std::size_t rank;
  std::vector<std::uint32_t> digits;
  std::vector<ElementIndex> members;

  explicit DigitTable(const GroupSet& s) : rank(s.spec().rank()) {
    members = s.indices();
    digits.resize(members.size() * rank);
    for (std::size_t t = 0; t < members.size(); ++t) {
      for (std::size_t j = 0; j < rank; ++j) digits[t * rank + j] = s.spec().digit(members[t], j);
    }
  }
};

GroupSet sum_tables(const GroupSpec& spec, const DigitTable& a, const DigitTable& b) {
  const auto moduli = spec.moduli();
  const auto strides = spec.strides();
  const std::size_t rank = spec.rank();
  const std::uint64_t order = spec.order();
  boost::dynamic_bitset<> bits(order);
  std::size_t count = 0;
  for (std::size_t s = 0; s < a.members.size() && count < order; ++s) {
    const std::uint32_t* da = &a.digits[s * rank];
    for (std::size_t t = 0; t < b.members.size(); ++t) {
      const std::uint32_t* db = &b.digits[t * rank];
      std::uint64_t index = 0;
      for (std::size_t j = 0; j < rank; ++j) {
        std::uint32_t d = da[j] + db[j];
        if (d >= moduli[j]) d -= moduli[j];
        index += d * strides[j];
      }
      if (!bits.test(index)) {
        bits.set(index);
        ++count;
      }
    }
  }
  return GroupSet::from_bits(spec, std::move(bits));
}

}  // namespace

GroupSet sumset(const GroupSet& a, const GroupSet& b) {
  require_same_group(a.spec(), b.spec(), "sumset");
  if (a.empty() || b.empty()) return GroupSet(a.spec());
  return sum_tables(a.spec(), DigitTable(a), DigitTable(b));
}

GroupSet difference_set(const GroupSet& a, const GroupSet& b) { return sumset(a, b.negated()); }

GroupSet k_fold_sum(const GroupSet& x, unsigned k) {
  GroupSet out = GroupSet::singleton(x.spec(), 0);
  for (unsigned i = 0; i < k; ++i) out = sumset(out, x);
  return out;
}

Rational doubling_constant(const GroupSet& a) {
  if (a.empty()) throw DomainError("doubling constant of an empty set");
  Rational k(static_cast<unsigned long>(sumset(a, a).size()), static_cast<unsigned long>(a.size()));
  k.canonicalize();
  return k;
}

GroupSet subgroup_closure(const GroupSpec& spec, std::span<const ElementIndex> generators) {
  GroupSet out = GroupSet::singleton(spec, 0);
  std::vector<ElementIndex> gens;
  for (auto g : generators) {
    if (g >= spec.order()) throw StructuralError("generator index out of range");
    if (g != 0) gens.push_back(g);
  }
  std::deque<ElementIndex> frontier{0};
  while (!frontier.empty()) {
    const ElementIndex h = frontier.front();
    frontier.pop_front();
    for (auto g : gens) {
      const ElementIndex y = spec.add(h, g);
      if (!out.contains(y)) {
        out.insert(y);
        frontier.push_back(y);
      }
    }
  }
  return out;
}

GroupSet subgroup_closure(const GroupSet& s) {
  const auto gens = s.indices();
  return subgroup_closure(s.spec(), gens);
}

std::vector<ElementIndex> greedy_generators(const GroupSpec& spec, std::span<const ElementIndex> members) {
  std::vector<ElementIndex> generators;
  GroupSet generated = GroupSet::singleton(spec, 0);
  for (auto g : members) {
    if (generated.contains(g)) continue;
    generators.push_back(g);
    generated = subgroup_closure(spec, generators);
  }
  return generators;
}

bool is_subgroup(const GroupSet& s) {
  if (!s.contains(0)) return false;
  return sumset(s, s) == s;
}

InstanceKind parse_instance_kind(const std::string& name) {
  if (name == "random") return InstanceKind::random;
  if (name == "independent") return InstanceKind::independent;
  if (name == "subgroup") return InstanceKind::subgroup;
  if (name == "coset_union" || name == "coset-union") return InstanceKind::coset_union;
  throw DomainError("unknown instance kind '" + name + "'");
}

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::random: return "random";
    case InstanceKind::independent: return "independent";
    case InstanceKind::subgroup: return "subgroup";
    case InstanceKind::coset_union: return "coset_union";
  }
  return "unknown";
}

namespace {

GroupSet random_subset(const GroupSpec& spec, std::size_t size, Rng& rng) {
  const std::uint64_t n = spec.order();
  if (size > n) {
    throw DomainError("requested " + std::to_string(size) + " elements from a group of order " + std::to_string(n));
  }
  GroupSet out(spec);
  // Floyd's algorithm: exactly `size` draws.
  for (std::uint64_t j = n - size; j < n; ++j) {
    const auto t = static_cast<ElementIndex>(rng.below(j + 1));
    out.insert(out.contains(t) ? static_cast<ElementIndex>(j) : t);
  }
  return out;
}

GroupSet generated_subgroup(const GroupSpec& spec, const InstanceParams& params, Rng& rng) {
  if (!params.generators.empty()) return subgroup_closure(spec, params.generators);
  std::vector<ElementIndex> gens;
  for (std::size_t i = 0; i < params.generator_count; ++i) {
    gens.push_back(static_cast<ElementIndex>(rng.below(spec.order())));
  }
  return subgroup_closure(spec, gens);
}

}  // namespace

GroupSet generate_instance(InstanceKind kind, const GroupSpec& spec, const InstanceParams& params,
                           std::uint64_t seed) {
  Rng rng(seed);
  switch (kind) {
    case InstanceKind::random:
      return random_subset(spec, params.size, rng);
    case InstanceKind::independent: {
      GroupSet out = GroupSet::singleton(spec, 0);
      for (std::size_t j = 0; j < spec.rank(); ++j) out.insert(spec.basis(j));
      return out;
    }
    case InstanceKind::subgroup:
      return generated_subgroup(spec, params, rng);
    case InstanceKind::coset_union: {
      const GroupSet h = generated_subgroup(spec, params, rng);
      const std::uint64_t cosets = spec.order() / h.size();
      const std::size_t wanted = params.size == 0 ? 2 : params.size;
      if (wanted > cosets) {
        throw DomainError("requested " + std::to_string(wanted) + " cosets of a subgroup of index " +
                          std::to_string(cosets));
      }
      GroupSet out(spec);
      std::size_t taken = 0;
      while (taken < wanted) {
        const auto x = static_cast<ElementIndex>(rng.below(spec.order()));
        if (out.contains(x)) continue;
        out |= h.translate(x);
        ++taken;
      }
      return out;
    }
  }
  throw DomainError("unknown instance kind");
}

}  // namespace freiman
