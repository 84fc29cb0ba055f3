// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freiman/group.hpp"

namespace freiman {

struct SuiteEntry {
  std::string name;
  std::string anchor;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t instances_per_family = 8;
  unsigned max_k = 3;
  /// Largest random set drawn for the inequality checks.
  std::size_t max_set = 10;
};

/// Runs every lemma-level property on seeded instance families in the
/// given group. Deterministic in (spec, options).
std::vector<SuiteEntry> run_verify_suite(const GroupSpec& spec, const SuiteOptions& options = {});

}  // namespace freiman
