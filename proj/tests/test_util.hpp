// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <vector>

#include "freiman/group_set.hpp"

namespace testutil {

/// Canonical n/d.
inline freiman::Rational q(long n, long d) {
  freiman::Rational r(n, d);
  r.canonicalize();
  return r;
}

inline freiman::GroupSpec cyclic(std::uint32_t n) { return freiman::GroupSpec({n}); }

inline freiman::GroupSet make_set(const freiman::GroupSpec& spec,
                                  std::initializer_list<std::vector<std::uint32_t>> elements) {
  freiman::GroupSet out(spec);
  for (const auto& c : elements) out.insert(spec.index_of(freiman::GroupElement{c}));
  return out;
}

/// Subset of a cyclic group from plain residues.
inline freiman::GroupSet residues(const freiman::GroupSpec& spec, std::initializer_list<std::uint32_t> values) {
  freiman::GroupSet out(spec);
  for (auto v : values) out.insert(v);
  return out;
}

}  // namespace testutil
