// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "freiman/group.hpp"
#include "freiman/group_set.hpp"
#include "freiman/rational.hpp"

namespace freiman {

/// An exact rational-valued function on a finite group, stored densely in
/// canonical element order.
class RationalFunc {
 public:
  explicit RationalFunc(GroupSpec spec);
  RationalFunc(GroupSpec spec, std::vector<Rational> values);

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](ElementIndex x) const { return values_[x]; }
  const Rational& at(ElementIndex x) const;
  void set(ElementIndex x, Rational value);
  std::span<const Rational> values() const { return values_; }

  std::vector<ElementIndex> support() const;
  GroupSet support_set() const;
  bool is_zero() const;
  bool is_nonnegative() const;
  Rational sum() const;

  /// Pointwise square.
  RationalFunc squared() const;

  RationalFunc& operator+=(const RationalFunc& other);
  RationalFunc& operator-=(const RationalFunc& other);
  RationalFunc& operator*=(const Rational& c);
  friend RationalFunc operator+(RationalFunc a, const RationalFunc& b) { return a += b; }
  friend RationalFunc operator-(RationalFunc a, const RationalFunc& b) { return a -= b; }
  friend RationalFunc operator*(const Rational& c, RationalFunc f) { return f *= c; }
  friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
    return a.spec_ == b.spec_ && a.values_ == b.values_;
  }

 private:
  GroupSpec spec_;
  std::vector<Rational> values_;
};

/// 1_A.
RationalFunc indicator(const GroupSet& a);
/// delta_x, i.e. mu_{x}.
RationalFunc point_mass(const GroupSpec& spec, ElementIndex x);
/// mu_S: uniform probability measure on S. Throws DomainError for empty S.
RationalFunc uniform_measure(const GroupSet& s);

/// (tau_x f)(y) = f(x + y).
RationalFunc translate(const RationalFunc& f, ElementIndex x);

/// (f * g)(x) = sum_{y + z = x} f(y) g(z), exact. Loops over supports, so
/// sparse operands are cheap.
RationalFunc convolve(const RationalFunc& f, const RationalFunc& g);
/// f * ... * f (power >= 1 copies).
RationalFunc convolution_power(const RationalFunc& f, unsigned power);

/// The measure 2^{-l} (delta_0 + delta_{a_1}) * ... * (delta_0 + delta_{a_l})
/// together with its defining tuple.
struct TupleMeasure {
  std::vector<ElementIndex> tuple;
  RationalFunc measure;
};

TupleMeasure mu_tuple(const GroupSpec& spec, std::span<const ElementIndex> tuple);

/// f * mu_a, built by the recursion F <- (F + tau_{-a_i} F) / 2.
RationalFunc smooth(const RationalFunc& f, std::span<const ElementIndex> tuple);

Rational l1_norm(const RationalFunc& f);
Rational l2_norm_squared(const RationalFunc& f);
Rational inner_product(const RationalFunc& f, const RationalFunc& g);

/// ||f - tau_x f||_1 and ||f - tau_x f||_2^2 for many x, sharing one
/// common-denominator integer form of f.
class TranslationProbe {
 public:
  explicit TranslationProbe(const RationalFunc& f);

  Rational l1_defect(ElementIndex x) const;
  Rational l2_defect_squared(ElementIndex x) const;
  /// Integer numerators of the defects; the real values are these divided
  /// by denominator() and denominator()^2 respectively.
  Integer l1_defect_scaled(ElementIndex x) const;
  Integer l2_defect_scaled(ElementIndex x) const;

  const Integer& denominator() const { return denominator_; }
  /// ||f||_1 and ||f||_2^2 in the same scaling.
  const Integer& l1_scaled() const { return l1_; }
  const Integer& l2_scaled() const { return l2_; }

 private:
  GroupSpec spec_;
  std::vector<Integer> numerators_;
  Integer denominator_;
  Integer l1_;
  Integer l2_;
};

}  // namespace freiman
