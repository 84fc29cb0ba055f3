// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "freiman/group.hpp"
#include "freiman/rational.hpp"

namespace freiman {

/// A subset of a finite group, stored as a bitset over canonical indices.
class GroupSet {
 public:
  explicit GroupSet(GroupSpec spec);

  static GroupSet from_indices(GroupSpec spec, std::span<const ElementIndex> members);
  static GroupSet from_elements(GroupSpec spec, std::span<const GroupElement> members);
  static GroupSet from_bits(GroupSpec spec, boost::dynamic_bitset<> bits);
  static GroupSet full(GroupSpec spec);
  static GroupSet singleton(GroupSpec spec, ElementIndex x);

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(ElementIndex x) const { return x < bits_.size() && bits_.test(x); }
  bool contains(const GroupElement& x) const;
  void insert(ElementIndex x);
  void erase(ElementIndex x);

  /// Smallest member in canonical order. Throws DomainError when empty.
  ElementIndex min() const;

  std::vector<ElementIndex> indices() const;
  std::vector<GroupElement> elements() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
      fn(static_cast<ElementIndex>(i));
    }
  }

  bool is_subset_of(const GroupSet& other) const;
  bool intersects(const GroupSet& other) const;

  /// x + S.
  GroupSet translate(ElementIndex x) const;
  /// -S.
  GroupSet negated() const;

  GroupSet& operator|=(const GroupSet& other);
  GroupSet& operator&=(const GroupSet& other);
  GroupSet& operator-=(const GroupSet& other);
  friend GroupSet operator|(GroupSet a, const GroupSet& b) { return a |= b; }
  friend GroupSet operator&(GroupSet a, const GroupSet& b) { return a &= b; }
  friend GroupSet operator-(GroupSet a, const GroupSet& b) { return a -= b; }
  friend bool operator==(const GroupSet& a, const GroupSet& b) { return a.spec_ == b.spec_ && a.bits_ == b.bits_; }

  const boost::dynamic_bitset<>& bits() const { return bits_; }

  /// "{(0,1),(1,0)}".
  std::string to_string() const;

 private:
  GroupSpec spec_;
  boost::dynamic_bitset<> bits_;
  std::size_t size_ = 0;
};

/// {a + b : a in A, b in B}; empty when either operand is empty.
GroupSet sumset(const GroupSet& a, const GroupSet& b);
/// {a - b : a in A, b in B}.
GroupSet difference_set(const GroupSet& a, const GroupSet& b);
/// kX; 0X = {0}.
GroupSet k_fold_sum(const GroupSet& x, unsigned k);
/// |A+A| / |A|. Throws DomainError for empty A.
Rational doubling_constant(const GroupSet& a);

/// The subgroup generated by S (contains the identity even for empty S).
GroupSet subgroup_closure(const GroupSet& s);
GroupSet subgroup_closure(const GroupSpec& spec, std::span<const ElementIndex> generators);
bool is_subgroup(const GroupSet& s);
/// A subset of `members` generating the same subgroup, chosen greedily in
/// the given order.
std::vector<ElementIndex> greedy_generators(const GroupSpec& spec, std::span<const ElementIndex> members);

enum class InstanceKind { random, independent, subgroup, coset_union };

InstanceKind parse_instance_kind(const std::string& name);
std::string to_string(InstanceKind kind);

struct InstanceParams {
  /// random: number of elements. coset_union: number of distinct cosets.
  std::size_t size = 0;
  /// subgroup / coset_union: explicit generators of the subgroup. When
  /// empty, `generator_count` random generators are drawn.
  std::vector<ElementIndex> generators;
  std::size_t generator_count = 1;
};

/// Deterministic for a fixed seed on every platform.
GroupSet generate_instance(InstanceKind kind, const GroupSpec& spec, const InstanceParams& params,
                           std::uint64_t seed);

}  // namespace freiman
