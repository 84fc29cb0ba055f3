// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace freiman {

/// Operands built over different groups, or malformed structural input
/// (wrong coordinate count, out-of-range coordinate, shape mismatch).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value outside an operation's domain: empty set where a non-empty one
/// is required, parameter outside its interval, zero function, cap exceeded.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An unconditional invariant of an algorithm failed. Always a bug signal.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace freiman
