// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace freiman {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or a finite decimal such as "0.125" without going
/// through floating point. Throws DomainError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Largest n/denominator not exceeding x (x finite).
Rational rational_floor(double x, std::uint64_t denominator);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace freiman
