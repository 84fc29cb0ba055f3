// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/functions.hpp"

#include <algorithm>

#include "freiman/errors.hpp"

namespace freiman {

RationalFunc::RationalFunc(GroupSpec spec) : spec_(std::move(spec)), values_(spec_.order()) {}

RationalFunc::RationalFunc(GroupSpec spec, std::vector<Rational> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
  if (values_.size() != spec_.order()) {
    throw StructuralError("function has " + std::to_string(values_.size()) + " values, group order is " +
                          std::to_string(spec_.order()));
  }
}

const Rational& RationalFunc::at(ElementIndex x) const {
  if (x >= values_.size()) throw StructuralError("function argument out of range");
  return values_[x];
}

void RationalFunc::set(ElementIndex x, Rational value) {
  if (x >= values_.size()) throw StructuralError("function argument out of range");
  values_[x] = std::move(value);
}

std::vector<ElementIndex> RationalFunc::support() const {
  std::vector<ElementIndex> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (sgn(values_[i]) != 0) out.push_back(static_cast<ElementIndex>(i));
  }
  return out;
}

GroupSet RationalFunc::support_set() const {
  const auto s = support();
  return GroupSet::from_indices(spec_, s);
}

bool RationalFunc::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

bool RationalFunc::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return sgn(v) >= 0; });
}

Rational RationalFunc::sum() const {
  Rational total(0);
  for (const auto& v : values_) total += v;
  return total;
}

RationalFunc RationalFunc::squared() const {
  RationalFunc out(spec_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (sgn(values_[i]) != 0) out.values_[i] = values_[i] * values_[i];
  }
  return out;
}

RationalFunc& RationalFunc::operator+=(const RationalFunc& other) {
  require_same_group(spec_, other.spec_, "function sum");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

RationalFunc& RationalFunc::operator-=(const RationalFunc& other) {
  require_same_group(spec_, other.spec_, "function difference");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

RationalFunc& RationalFunc::operator*=(const Rational& c) {
  for (auto& v : values_) v *= c;
  return *this;
}

RationalFunc indicator(const GroupSet& a) {
  RationalFunc f(a.spec());
  a.for_each([&](ElementIndex x) { f.set(x, Rational(1)); });
  return f;
}

RationalFunc point_mass(const GroupSpec& spec, ElementIndex x) {
  RationalFunc f(spec);
  f.set(x, Rational(1));
  return f;
}

RationalFunc uniform_measure(const GroupSet& s) {
  if (s.empty()) throw DomainError("uniform measure on an empty set");
  Rational w(1, static_cast<unsigned long>(s.size()));
  RationalFunc f(s.spec());
  s.for_each([&](ElementIndex x) { f.set(x, w); });
  return f;
}

RationalFunc translate(const RationalFunc& f, ElementIndex x) {
  if (x >= f.spec().order()) throw StructuralError("translation by an element outside the group");
  std::vector<Rational> out(f.size());
  for_each_translate(f.spec(), x, [&](ElementIndex y, ElementIndex xy) { out[y] = f[xy]; });
  return RationalFunc(f.spec(), std::move(out));
}

namespace {

// Values times a common denominator, all integers.
struct ScaledSupport {
  std::vector<ElementIndex> points;
  std::vector<Integer> numerators;
  Integer denominator{1};
  Integer max_abs{0};
};

ScaledSupport scale_support(const RationalFunc& f) {
  ScaledSupport s;
  s.points = f.support();
  for (auto p : s.points) mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(), f[p].get_den_mpz_t());
  s.numerators.reserve(s.points.size());
  for (auto p : s.points) {
    Integer n = f[p].get_num() * (s.denominator / f[p].get_den());
    if (abs(n) > s.max_abs) s.max_abs = abs(n);
    s.numerators.push_back(std::move(n));
  }
  return s;
}

std::vector<std::uint32_t> digit_rows(const GroupSpec& spec, const std::vector<ElementIndex>& points) {
  std::vector<std::uint32_t> rows(points.size() * spec.rank());
  for (std::size_t t = 0; t < points.size(); ++t) {
    for (std::size_t j = 0; j < spec.rank(); ++j) rows[t * spec.rank() + j] = spec.digit(points[t], j);
  }
  return rows;
}

template <class Acc, class Mul>
void accumulate_pairs(const GroupSpec& spec, const ScaledSupport& f, const ScaledSupport& g, std::vector<Acc>& acc,
                      Mul&& mul_add) {
  const std::size_t rank = spec.rank();
  const auto moduli = spec.moduli();
  const auto strides = spec.strides();
  const auto fd = digit_rows(spec, f.points);
  const auto gd = digit_rows(spec, g.points);
  for (std::size_t s = 0; s < f.points.size(); ++s) {
    for (std::size_t t = 0; t < g.points.size(); ++t) {
      std::uint64_t index = 0;
      for (std::size_t j = 0; j < rank; ++j) {
        std::uint32_t d = fd[s * rank + j] + gd[t * rank + j];
        if (d >= moduli[j]) d -= moduli[j];
        index += d * strides[j];
      }
      mul_add(acc[index], s, t);
    }
  }
}

}  // namespace

RationalFunc convolve(const RationalFunc& f, const RationalFunc& g) {
  require_same_group(f.spec(), g.spec(), "convolution");
  const GroupSpec& spec = f.spec();
  const ScaledSupport sf = scale_support(f);
  const ScaledSupport sg = scale_support(g);
  const Integer denominator = sf.denominator * sg.denominator;
  std::vector<Rational> out(spec.order());
  if (sf.points.empty() || sg.points.empty()) return RationalFunc(spec, std::move(out));

  // Exact either way; the 128-bit path applies when no partial sum can
  // exceed 2^120.
  const Integer worst = sf.max_abs * sg.max_abs * static_cast<unsigned long>(std::min(sf.points.size(), sg.points.size()));
  const bool narrow = mpz_sizeinbase(worst.get_mpz_t(), 2) <= 120 && mpz_sizeinbase(sf.max_abs.get_mpz_t(), 2) <= 62 &&
                      mpz_sizeinbase(sg.max_abs.get_mpz_t(), 2) <= 62;
  if (narrow) {
    std::vector<std::int64_t> fn(sf.numerators.size()), gn(sg.numerators.size());
    for (std::size_t i = 0; i < fn.size(); ++i) fn[i] = sf.numerators[i].get_si();
    for (std::size_t i = 0; i < gn.size(); ++i) gn[i] = sg.numerators[i].get_si();
    std::vector<__int128> acc(spec.order(), 0);
    accumulate_pairs(spec, sf, sg, acc, [&](__int128& a, std::size_t s, std::size_t t) {
      a += static_cast<__int128>(fn[s]) * gn[t];
    });
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      const bool negative = acc[i] < 0;
      unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-acc[i]) : static_cast<unsigned __int128>(acc[i]);
      Integer hi(static_cast<unsigned long>(mag >> 64));
      Integer lo(static_cast<unsigned long>(mag & ~std::uint64_t{0}));
      Integer num = (hi << 64) + lo;
      if (negative) num = -num;
      out[i] = Rational(num, denominator);
      out[i].canonicalize();
    }
  } else {
    std::vector<Integer> acc(spec.order());
    accumulate_pairs(spec, sf, sg, acc, [&](Integer& a, std::size_t s, std::size_t t) {
      mpz_addmul(a.get_mpz_t(), sf.numerators[s].get_mpz_t(), sg.numerators[t].get_mpz_t());
    });
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (sgn(acc[i]) == 0) continue;
      out[i] = Rational(acc[i], denominator);
      out[i].canonicalize();
    }
  }
  return RationalFunc(spec, std::move(out));
}

RationalFunc convolution_power(const RationalFunc& f, unsigned power) {
  if (power == 0) throw DomainError("convolution power needs at least one factor");
  RationalFunc out = f;
  for (unsigned i = 1; i < power; ++i) out = convolve(out, f);
  return out;
}

RationalFunc smooth(const RationalFunc& f, std::span<const ElementIndex> tuple) {
  RationalFunc out = f;
  const Rational half(1, 2);
  for (auto a : tuple) {
    if (a >= f.spec().order()) throw StructuralError("tuple element outside the group");
    // (F * delta_a)(x) = F(x - a) = (tau_{-a} F)(x).
    RationalFunc shifted = translate(out, f.spec().negate(a));
    out += shifted;
    out *= half;
  }
  return out;
}

TupleMeasure mu_tuple(const GroupSpec& spec, std::span<const ElementIndex> tuple) {
  return TupleMeasure{std::vector<ElementIndex>(tuple.begin(), tuple.end()), smooth(point_mass(spec, 0), tuple)};
}

Rational l1_norm(const RationalFunc& f) {
  Rational total(0);
  for (const auto& v : f.values()) total += abs(v);
  return total;
}

Rational l2_norm_squared(const RationalFunc& f) {
  Rational total(0);
  for (const auto& v : f.values()) {
    if (sgn(v) != 0) total += v * v;
  }
  return total;
}

Rational inner_product(const RationalFunc& f, const RationalFunc& g) {
  require_same_group(f.spec(), g.spec(), "inner product");
  Rational total(0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (sgn(f.values()[i]) != 0 && sgn(g.values()[i]) != 0) total += f.values()[i] * g.values()[i];
  }
  return total;
}

TranslationProbe::TranslationProbe(const RationalFunc& f) : spec_(f.spec()), numerators_(f.size()), denominator_(1) {
  for (const auto& v : f.values()) mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), v.get_den_mpz_t());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Rational& v = f.values()[i];
    if (sgn(v) == 0) continue;
    numerators_[i] = v.get_num() * (denominator_ / v.get_den());
    l1_ += abs(numerators_[i]);
    l2_ += numerators_[i] * numerators_[i];
  }
}

Integer TranslationProbe::l1_defect_scaled(ElementIndex x) const {
  Integer total(0), diff;
  for_each_translate(spec_, x, [&](ElementIndex y, ElementIndex xy) {
    mpz_sub(diff.get_mpz_t(), numerators_[y].get_mpz_t(), numerators_[xy].get_mpz_t());
    mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
    total += diff;
  });
  return total;
}

Integer TranslationProbe::l2_defect_scaled(ElementIndex x) const {
  Integer total(0), diff;
  for_each_translate(spec_, x, [&](ElementIndex y, ElementIndex xy) {
    mpz_sub(diff.get_mpz_t(), numerators_[y].get_mpz_t(), numerators_[xy].get_mpz_t());
    mpz_addmul(total.get_mpz_t(), diff.get_mpz_t(), diff.get_mpz_t());
  });
  return total;
}

Rational TranslationProbe::l1_defect(ElementIndex x) const {
  Rational q(l1_defect_scaled(x), denominator_);
  q.canonicalize();
  return q;
}

Rational TranslationProbe::l2_defect_squared(ElementIndex x) const {
  Rational q(l2_defect_scaled(x), denominator_ * denominator_);
  q.canonicalize();
  return q;
}

}  // namespace freiman
