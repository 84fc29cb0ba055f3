// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "freiman/errors.hpp"

namespace freiman {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw DomainError("malformed integer '" + std::string(s) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+') {
      throw DomainError("malformed decimal '" + std::string(text) + "'");
    }
    Integer num = parse_integer(std::string(whole) + std::string(frac));
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(negative ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
  }

  return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_floor(double x, std::uint64_t denominator) {
  if (!std::isfinite(x)) throw DomainError("rational_floor of non-finite value");
  const double scaled = std::floor(x * static_cast<double>(denominator));
  Rational q(Integer(scaled), Integer(static_cast<unsigned long>(denominator)));
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

}  // namespace freiman
