// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/dynamic_bitset.hpp>

#include <complex>
#include <vector>

#include "freiman/functions.hpp"
#include "freiman/group.hpp"
#include "freiman/group_set.hpp"

namespace freiman {

using Complex = std::complex<double>;

/// Relative guard band of the spectrum threshold. Characters whose
/// coefficient lies within the band are included.
inline constexpr double kSpectrumGuard = 1e-9;

/// Orders above this use the per-coordinate transform under `automatic`.
inline constexpr std::uint64_t kNaiveTransformLimit = std::uint64_t{1} << 14;

/// A function on the dual group, indexed like the group itself.
class DualFunc {
 public:
  DualFunc(GroupSpec spec, std::vector<Complex> values);

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](ElementIndex gamma) const { return values_[gamma]; }
  const std::vector<Complex>& values() const { return values_; }

 private:
  GroupSpec spec_;
  std::vector<Complex> values_;
};

/// A set of characters.
class CharSet {
 public:
  explicit CharSet(GroupSpec spec);
  static CharSet all(GroupSpec spec);
  static CharSet trivial(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return bits_.count(); }
  bool contains(ElementIndex gamma) const { return gamma < bits_.size() && bits_.test(gamma); }
  void insert(ElementIndex gamma);
  std::vector<ElementIndex> indices() const;

  CharSet& operator|=(const CharSet& other);
  friend CharSet operator|(CharSet a, const CharSet& b) { return a |= b; }
  friend bool operator==(const CharSet& a, const CharSet& b) { return a.spec_ == b.spec_ && a.bits_ == b.bits_; }

 private:
  GroupSpec spec_;
  boost::dynamic_bitset<> bits_;
};

enum class TransformMethod { automatic, naive, factored };

/// f^(gamma) = sum_x f(x) conj(gamma(x)), in double precision.
DualFunc dft(const RationalFunc& f, TransformMethod method = TransformMethod::automatic);
DualFunc dft(const GroupSpec& spec, const std::vector<double>& values,
             TransformMethod method = TransformMethod::automatic);

/// Spec_eps(f) = {gamma : |f^(gamma)| >= eps ||f||_1}, eps in (0, 1].
/// Throws DomainError for the zero function or eps outside (0, 1].
CharSet spectrum(const RationalFunc& f, double epsilon);
CharSet spectrum(const DualFunc& transform, double l1_norm, double epsilon);

/// Same threshold rule without the eps <= 1 restriction; a threshold above
/// 1 may return an empty set.
CharSet spectrum_at_threshold(const DualFunc& transform, double l1_norm, double threshold);

/// {x : gamma(x) = 1 for all gamma in Gamma}. Decided by integer
/// congruences, never by floating point.
GroupSet annihilator(const CharSet& gamma);

/// {gamma : gamma(v) = 1 for all v in V}.
CharSet dual_annihilator(const GroupSet& v);

}  // namespace freiman
