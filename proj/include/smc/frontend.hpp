#pragma once

#include <string>
#include <string_view>

#include "smc/ir.hpp"
#include "smc/marks.hpp"
#include "smc/result.hpp"
#include "smc/scenario.hpp"

namespace smc {

struct SourceLoc {
  std::string file;
  int line = 1;    // 1-based
  int column = 1;  // 1-based

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

/// First syntax error of an input. `code` is E_PARSE except for the few
/// structural errors the parsers detect themselves (E_DUP_MARK).
struct ParseError {
  SourceLoc loc;
  std::string expected;
  std::string found;
  std::string code = "E_PARSE";

  /// `file:line:col: E_PARSE expected X, found Y`
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ParseError&, const ParseError&) = default;
};

[[nodiscard]] Result<Model, ParseError> parse_model(std::string_view text,
                                                    std::string_view file = "<model>");
[[nodiscard]] Result<MarkSet, ParseError> parse_marks(std::string_view text,
                                                      std::string_view file = "<marks>");
[[nodiscard]] Result<Scenario, ParseError> parse_scenario(std::string_view text,
                                                          std::string_view file = "<scenario>");

}  // namespace smc
