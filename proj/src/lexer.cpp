#include "lexer.hpp"

#include <array>
#include <limits>

namespace smc::detail {
namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

constexpr std::array<std::string_view, 7> kTwoCharPuncts = {"->", "==", "!=", "<=", ">=", "&&",
                                                            "||"};
constexpr std::string_view kOneCharPuncts = "{}();:,.=<>+-*!$";

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (digit(c)) {
      std::size_t j = i;
      std::uint64_t v = 0;
      bool overflow = false;
      while (j < text.size() && digit(text[j])) {
        const auto d = static_cast<std::uint64_t>(text[j] - '0');
        if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) overflow = true;
        if (!overflow) v = v * 10 + d;
        ++j;
      }
      tok.kind = TokenKind::Int;
      tok.value = overflow ? std::numeric_limits<std::uint64_t>::max() : v;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else {
      std::string_view two = text.substr(i, 2);
      bool matched = false;
      for (auto p : kTwoCharPuncts) {
        if (two == p) {
          tok.kind = TokenKind::Punct;
          tok.text = std::string(p);
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        tok.text = std::string(1, c);
        tok.kind = kOneCharPuncts.find(c) != std::string_view::npos ? TokenKind::Punct
                                                                     : TokenKind::Invalid;
        advance(1);
      }
    }
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Ident: return "identifier '" + t.text + "'";
    case TokenKind::Int: return "integer " + t.text;
    case TokenKind::Punct: return "'" + t.text + "'";
    case TokenKind::Invalid: return "invalid character '" + t.text + "'";
  }
  return t.text;
}

}  // namespace smc::detail
