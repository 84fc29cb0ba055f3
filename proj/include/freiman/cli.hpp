// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "freiman/group.hpp"
#include "freiman/group_set.hpp"

namespace freiman::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitVerification = 3;

/// Malformed input; carries a position when one is known (1-based, 0 when
/// unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// "2x2x4", "2^5", "3^2x4".
GroupSpec parse_group(std::string_view text);

struct SetFile {
  GroupSpec spec;
  GroupSet set;
};

/// {"group":[m1,...],"elements":[[x1,...],...]}. Rejects out-of-range
/// coordinates, wrong arity and duplicates with line/column positions.
SetFile parse_set_text(std::string_view text);
SetFile parse_set_file(const std::string& path);
std::string format_set_file(const GroupSet& set);

/// Runs one command line (without the program name). Report text goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freiman::cli
