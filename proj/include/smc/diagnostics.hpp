#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smc {

enum class Severity : std::uint8_t { Error, Warning };

/// One reported problem. `code` is a stable identifier such as E_DUP_CLASS.
struct Diagnostic {
  std::string code;
  std::string path;
  std::string message;
  Severity severity = Severity::Error;

  /// `error CODE PATH: message`
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

[[nodiscard]] std::string_view severity_name(Severity s) noexcept;
[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diags) noexcept;

}  // namespace smc
