// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/group.hpp"

#include <numbers>
#include <numeric>

#include "freiman/errors.hpp"

namespace freiman {

GroupSpec::GroupSpec(std::vector<std::uint32_t> moduli) {
  if (moduli.empty()) throw StructuralError("group needs at least one cyclic factor");
  auto data = std::make_shared<Data>();
  for (auto m : moduli) {
    if (m < 2) throw StructuralError("cyclic factor modulus must be >= 2, got " + std::to_string(m));
    if (data->order > kMaxOrder / m) throw DomainError("group order exceeds the supported maximum 2^24");
    data->order *= m;
    data->exponent = std::lcm(data->exponent, std::uint64_t{m});
  }
  data->strides.assign(moduli.size(), 1);
  for (std::size_t j = moduli.size() - 1; j > 0; --j) {
    data->strides[j - 1] = data->strides[j] * moduli[j];
  }
  for (auto m : moduli) data->phase_weights.push_back(data->exponent / m);
  data->moduli = std::move(moduli);
  data_ = std::move(data);
}

GroupSpec GroupSpec::power(std::uint32_t p, std::size_t n) {
  return GroupSpec(std::vector<std::uint32_t>(n, p));
}

GroupElement GroupSpec::identity() const {
  return GroupElement{std::vector<std::uint32_t>(rank(), 0)};
}

GroupElement GroupSpec::element(ElementIndex i) const {
  if (i >= order()) throw StructuralError("element index out of range");
  GroupElement x;
  x.coords.resize(rank());
  for (std::size_t j = 0; j < rank(); ++j) x.coords[j] = digit(i, j);
  return x;
}

bool GroupSpec::is_valid(const GroupElement& x) const {
  if (x.coords.size() != rank()) return false;
  for (std::size_t j = 0; j < rank(); ++j) {
    if (x.coords[j] >= data_->moduli[j]) return false;
  }
  return true;
}

ElementIndex GroupSpec::index_of(const GroupElement& x) const {
  if (x.coords.size() != rank()) {
    throw StructuralError("element has " + std::to_string(x.coords.size()) + " coordinates, group " +
                          to_string() + " has rank " + std::to_string(rank()));
  }
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    if (x.coords[j] >= data_->moduli[j]) {
      throw StructuralError("coordinate " + std::to_string(j) + " = " + std::to_string(x.coords[j]) +
                            " outside [0, " + std::to_string(data_->moduli[j]) + ")");
    }
    index += x.coords[j] * data_->strides[j];
  }
  return static_cast<ElementIndex>(index);
}

std::vector<GroupElement> GroupSpec::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order());
  for (std::uint64_t i = 0; i < order(); ++i) out.push_back(element(static_cast<ElementIndex>(i)));
  return out;
}

GroupElement GroupSpec::add(const GroupElement& x, const GroupElement& y) const {
  return element(add(index_of(x), index_of(y)));
}

GroupElement GroupSpec::negate(const GroupElement& x) const { return element(negate(index_of(x))); }

GroupElement GroupSpec::subtract(const GroupElement& x, const GroupElement& y) const {
  return element(subtract(index_of(x), index_of(y)));
}

GroupElement GroupSpec::scale(std::int64_t k, const GroupElement& x) const {
  return element(scale(k, index_of(x)));
}

ElementIndex GroupSpec::add(ElementIndex x, ElementIndex y) const {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::uint32_t m = data_->moduli[j];
    std::uint32_t d = digit(x, j) + digit(y, j);
    if (d >= m) d -= m;
    out += d * data_->strides[j];
  }
  return static_cast<ElementIndex>(out);
}

ElementIndex GroupSpec::negate(ElementIndex x) const {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::uint32_t d = digit(x, j);
    out += (d == 0 ? 0 : data_->moduli[j] - d) * data_->strides[j];
  }
  return static_cast<ElementIndex>(out);
}

ElementIndex GroupSpec::subtract(ElementIndex x, ElementIndex y) const { return add(x, negate(y)); }

ElementIndex GroupSpec::scale(std::int64_t k, ElementIndex x) const {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto m = static_cast<std::int64_t>(data_->moduli[j]);
    std::int64_t km = k % m;
    if (km < 0) km += m;
    const std::int64_t d = (km * static_cast<std::int64_t>(digit(x, j))) % m;
    out += static_cast<std::uint64_t>(d) * data_->strides[j];
  }
  return static_cast<ElementIndex>(out);
}

ElementIndex GroupSpec::basis(std::size_t j) const {
  if (j >= rank()) throw StructuralError("basis index out of range");
  return static_cast<ElementIndex>(data_->strides[j]);
}

std::uint64_t GroupSpec::character_phase(ElementIndex gamma, ElementIndex x) const {
  const std::uint64_t r = exponent();
  std::uint64_t phase = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::uint64_t term = (static_cast<std::uint64_t>(digit(gamma, j)) * digit(x, j)) % data_->moduli[j];
    phase = (phase + term * data_->phase_weights[j]) % r;
  }
  return phase;
}

std::string GroupSpec::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < rank(); ++j) {
    if (j) out += 'x';
    out += std::to_string(data_->moduli[j]);
  }
  return out;
}

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* what) {
  if (!(a == b)) {
    throw StructuralError(std::string(what) + ": group mismatch (" + a.to_string() + " vs " + b.to_string() + ")");
  }
}

std::complex<double> character_eval(const GroupSpec& spec, ElementIndex gamma, ElementIndex x) {
  const std::uint64_t phase = spec.character_phase(gamma, x);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(spec.exponent());
  return std::polar(1.0, angle);
}

std::complex<double> character_eval(const GroupSpec& spec, const Character& gamma, const GroupElement& x) {
  return character_eval(spec, spec.index_of(GroupElement{gamma.coords}), spec.index_of(x));
}

}  // namespace freiman
