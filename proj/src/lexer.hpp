#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smc::detail {

enum class TokenKind : std::uint8_t { Ident, Int, Punct, Invalid, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::uint64_t value = 0;  // Int; saturates at UINT64_MAX
  int line = 1;
  int column = 1;
};

/// Splits DSL source into tokens. `//` comments and whitespace are skipped; the
/// result always ends with one End token. An unrecognised character becomes an
/// Invalid token so the parser reports it at its position.
[[nodiscard]] std::vector<Token> tokenize(std::string_view text);

/// Human-readable token description for error messages.
[[nodiscard]] std::string describe(const Token& t);

}  // namespace smc::detail
