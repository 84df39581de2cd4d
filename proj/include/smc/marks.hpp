#pragma once

#include <string>
#include <vector>

#include "smc/ir.hpp"

namespace smc {

/// Well-known mark key selecting the hardware mapping for a class.
inline constexpr const char* kIsHardware = "isHardware";

/// An annotation kept outside the model and attached to an element by path.
struct Mark {
  std::string key;
  Literal value = Literal::boolean(true);
  ElementPath path;

  friend bool operator==(const Mark&, const Mark&) = default;
};

/// Ordered marks; (key, path) pairs are unique.
struct MarkSet {
  std::vector<Mark> marks;

  friend bool operator==(const MarkSet&, const MarkSet&) = default;
};

/// Canonical marks text; parses back to an equal MarkSet.
[[nodiscard]] std::string print_marks(const MarkSet& marks);

}  // namespace smc
