// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/fourier.hpp"

#include <cmath>
#include <numbers>

#include "freiman/errors.hpp"

namespace freiman {

DualFunc::DualFunc(GroupSpec spec, std::vector<Complex> values) : spec_(std::move(spec)), values_(std::move(values)) {
  if (values_.size() != spec_.order()) throw StructuralError("dual function length differs from the group order");
}

CharSet::CharSet(GroupSpec spec) : spec_(std::move(spec)), bits_(spec_.order()) {}

CharSet CharSet::all(GroupSpec spec) {
  CharSet s(std::move(spec));
  s.bits_.set();
  return s;
}

CharSet CharSet::trivial(GroupSpec spec) {
  CharSet s(std::move(spec));
  s.bits_.set(0);
  return s;
}

void CharSet::insert(ElementIndex gamma) {
  if (gamma >= bits_.size()) throw StructuralError("character index out of range");
  bits_.set(gamma);
}

std::vector<ElementIndex> CharSet::indices() const {
  std::vector<ElementIndex> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
    out.push_back(static_cast<ElementIndex>(i));
  }
  return out;
}

CharSet& CharSet::operator|=(const CharSet& other) {
  require_same_group(spec_, other.spec_, "character set union");
  bits_ |= other.bits_;
  return *this;
}

namespace {

std::vector<Complex> root_table(std::uint64_t r) {
  std::vector<Complex> roots(r);
  for (std::uint64_t t = 0; t < r; ++t) {
    // conj(exp(2 pi i t / r))
    roots[t] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(r));
  }
  return roots;
}

// For each character, walks the elements in canonical order and keeps the
// phase sum_j c_j x_j (r / m_j) mod r up to date with an odometer.
std::vector<Complex> naive_transform(const GroupSpec& spec, const std::vector<double>& f) {
  const std::uint64_t n = spec.order();
  const std::uint64_t r = spec.exponent();
  const std::size_t rank = spec.rank();
  const auto moduli = spec.moduli();
  const auto weights = spec.phase_weights();
  const auto roots = root_table(r);

  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] != 0.0) nonzero.push_back(i);
  }

  std::vector<Complex> out(n);
  std::vector<std::uint64_t> step(rank);
  std::vector<std::uint32_t> digits(rank);
  std::vector<std::uint64_t> phases(n);
  for (std::uint64_t gamma = 0; gamma < n; ++gamma) {
    for (std::size_t j = 0; j < rank; ++j) {
      step[j] = (static_cast<std::uint64_t>(spec.digit(static_cast<ElementIndex>(gamma), j)) * weights[j]) % r;
    }
    std::fill(digits.begin(), digits.end(), 0);
    std::uint64_t phase = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
      phases[x] = phase;
      for (std::size_t j = rank; j-- > 0;) {
        phase += step[j];
        if (phase >= r) phase -= r;
        if (++digits[j] < moduli[j]) break;
        digits[j] = 0;
        // Wrapped: m_j * step_j = 0 mod r, so the phase is already back.
      }
    }
    Complex acc(0.0, 0.0);
    for (auto x : nonzero) acc += f[x] * roots[phases[x]];
    out[gamma] = acc;
  }
  return out;
}

// One cyclic DFT per axis. O(|G| * sum m_j).
std::vector<Complex> factored_transform(const GroupSpec& spec, const std::vector<double>& f) {
  const std::uint64_t n = spec.order();
  std::vector<Complex> data(f.begin(), f.end());
  std::vector<Complex> line;
  for (std::size_t j = 0; j < spec.rank(); ++j) {
    const std::uint32_t m = spec.moduli()[j];
    const std::uint64_t stride = spec.strides()[j];
    std::vector<Complex> roots(m);
    for (std::uint32_t t = 0; t < m; ++t) {
      roots[t] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(m));
    }
    line.assign(m, Complex{});
    const std::uint64_t block = stride * m;
    for (std::uint64_t base = 0; base < n; base += block) {
      for (std::uint64_t offset = 0; offset < stride; ++offset) {
        const std::uint64_t start = base + offset;
        for (std::uint32_t c = 0; c < m; ++c) {
          Complex acc(0.0, 0.0);
          for (std::uint32_t x = 0; x < m; ++x) {
            acc += data[start + x * stride] * roots[(static_cast<std::uint64_t>(c) * x) % m];
          }
          line[c] = acc;
        }
        for (std::uint32_t c = 0; c < m; ++c) data[start + c * stride] = line[c];
      }
    }
  }
  return data;
}

}  // namespace

DualFunc dft(const GroupSpec& spec, const std::vector<double>& values, TransformMethod method) {
  if (values.size() != spec.order()) throw StructuralError("function length differs from the group order");
  if (method == TransformMethod::automatic) {
    method = spec.order() > kNaiveTransformLimit ? TransformMethod::factored : TransformMethod::naive;
  }
  auto out = method == TransformMethod::naive ? naive_transform(spec, values) : factored_transform(spec, values);
  return DualFunc(spec, std::move(out));
}

DualFunc dft(const RationalFunc& f, TransformMethod method) {
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values[i] = f.values()[i].get_d();
  return dft(f.spec(), values, method);
}

CharSet spectrum_at_threshold(const DualFunc& transform, double l1_norm, double threshold) {
  CharSet out(transform.spec());
  const double bound = threshold * l1_norm;
  const double bound_sq = bound * bound * (1.0 - kSpectrumGuard);
  for (std::size_t g = 0; g < transform.size(); ++g) {
    if (std::norm(transform[static_cast<ElementIndex>(g)]) >= bound_sq) out.insert(static_cast<ElementIndex>(g));
  }
  return out;
}

CharSet spectrum(const DualFunc& transform, double l1_norm, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("spectrum threshold must lie in (0, 1]");
  if (!(l1_norm > 0.0)) throw DomainError("spectrum of the zero function is undefined");
  return spectrum_at_threshold(transform, l1_norm, epsilon);
}

CharSet spectrum(const RationalFunc& f, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("spectrum threshold must lie in (0, 1]");
  if (f.is_zero()) throw DomainError("spectrum of the zero function is undefined");
  return spectrum(dft(f), l1_norm(f).get_d(), epsilon);
}

GroupSet annihilator(const CharSet& gamma) {
  const GroupSpec& spec = gamma.spec();
  GroupSet out = GroupSet::full(spec);
  // Characters compose coordinatewise like elements, so generators of the
  // character group are found the same way.
  for (auto g : greedy_generators(spec, gamma.indices())) {
    for (std::uint64_t x = 0; x < spec.order(); ++x) {
      const auto xi = static_cast<ElementIndex>(x);
      if (out.contains(xi) && spec.character_phase(g, xi) != 0) out.erase(xi);
    }
  }
  return out;
}

CharSet dual_annihilator(const GroupSet& v) {
  const GroupSpec& spec = v.spec();
  CharSet out(spec);
  const auto generators = greedy_generators(spec, v.indices());
  for (std::uint64_t g = 0; g < spec.order(); ++g) {
    bool kills = true;
    for (auto x : generators) {
      if (spec.character_phase(static_cast<ElementIndex>(g), x) != 0) {
        kills = false;
        break;
      }
    }
    if (kills) out.insert(static_cast<ElementIndex>(g));
  }
  return out;
}

}  // namespace freiman
