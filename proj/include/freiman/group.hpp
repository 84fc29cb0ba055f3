// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace freiman {

/// Position of an element in the canonical (lexicographic, mixed-radix)
/// enumeration of its group. The same indexing is used for characters.
using ElementIndex = std::uint32_t;

/// An element of a product of cyclic groups, stored by coordinates.
struct GroupElement {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// A dual-group element. Coordinates live in the same ranges as group
/// elements, so characters share the canonical element indexing.
struct Character {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const Character&, const Character&) = default;
};

/// Z_{m_1} x ... x Z_{m_n}, every m_j >= 2.
///
/// Cheap to copy: the moduli and derived tables are shared and immutable.
/// Two specs compare equal when their moduli sequences are equal.
class GroupSpec {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;

  explicit GroupSpec(std::vector<std::uint32_t> moduli);

  /// Z_p^n, used by the `p^n` group grammar.
  static GroupSpec power(std::uint32_t p, std::size_t n);

  std::span<const std::uint32_t> moduli() const { return data_->moduli; }
  std::size_t rank() const { return data_->moduli.size(); }
  std::uint64_t order() const { return data_->order; }
  /// Least r >= 1 with r*x = 0 for every x: the lcm of the moduli.
  std::uint64_t exponent() const { return data_->exponent; }

  GroupElement identity() const;
  GroupElement element(ElementIndex i) const;
  /// Validates the coordinates; throws StructuralError when they do not
  /// belong to this group.
  ElementIndex index_of(const GroupElement& x) const;
  bool is_valid(const GroupElement& x) const;
  std::vector<GroupElement> elements() const;

  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement negate(const GroupElement& x) const;
  GroupElement subtract(const GroupElement& x, const GroupElement& y) const;
  GroupElement scale(std::int64_t k, const GroupElement& x) const;

  ElementIndex add(ElementIndex x, ElementIndex y) const;
  ElementIndex negate(ElementIndex x) const;
  ElementIndex subtract(ElementIndex x, ElementIndex y) const;
  ElementIndex scale(std::int64_t k, ElementIndex x) const;

  std::uint32_t digit(ElementIndex i, std::size_t j) const {
    return (i / data_->strides[j]) % data_->moduli[j];
  }
  std::span<const std::uint64_t> strides() const { return data_->strides; }

  /// Basis element e_j: coordinate j equal to 1, all others 0.
  ElementIndex basis(std::size_t j) const;

  /// Returns t in [0, exponent) with gamma(x) = exp(2 pi i t / exponent).
  /// Exact integer arithmetic.
  std::uint64_t character_phase(ElementIndex gamma, ElementIndex x) const;

  /// Per-coordinate phase weights w_j = exponent / m_j.
  std::span<const std::uint64_t> phase_weights() const { return data_->phase_weights; }

  /// "2x2x4".
  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.data_ == b.data_ || a.data_->moduli == b.data_->moduli;
  }

 private:
  struct Data {
    std::vector<std::uint32_t> moduli;
    std::vector<std::uint64_t> strides;
    std::vector<std::uint64_t> phase_weights;
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;
  };
  std::shared_ptr<const Data> data_;
};

/// Calls fn(y, x + y) for every y in canonical order, updating the index of
/// x + y incrementally instead of re-deriving it per element.
template <class Fn>
void for_each_translate(const GroupSpec& spec, ElementIndex x, Fn&& fn) {
  const std::size_t rank = spec.rank();
  const auto moduli = spec.moduli();
  const auto strides = spec.strides();
  std::vector<std::uint32_t> y_digits(rank, 0);
  std::vector<std::uint32_t> shifted(rank);
  std::uint64_t target = 0;
  for (std::size_t j = 0; j < rank; ++j) {
    shifted[j] = spec.digit(x, j);
    target += shifted[j] * strides[j];
  }
  const std::uint64_t order = spec.order();
  for (std::uint64_t y = 0;;) {
    fn(static_cast<ElementIndex>(y), static_cast<ElementIndex>(target));
    if (++y == order) break;
    for (std::size_t j = rank; j-- > 0;) {
      const std::uint32_t m = moduli[j];
      const std::uint32_t old_shift = shifted[j];
      const std::uint32_t next_shift = old_shift + 1 == m ? 0 : old_shift + 1;
      target = target - old_shift * strides[j] + next_shift * strides[j];
      shifted[j] = next_shift;
      if (++y_digits[j] < m) break;
      y_digits[j] = 0;
    }
  }
}

/// Throws StructuralError unless `a == b`.
void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* what);

std::complex<double> character_eval(const GroupSpec& spec, const Character& gamma, const GroupElement& x);
std::complex<double> character_eval(const GroupSpec& spec, ElementIndex gamma, ElementIndex x);

}  // namespace freiman
