#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "smc/codegen.hpp"

namespace smc::detail {

[[nodiscard]] std::string upper(std::string_view s);
[[nodiscard]] std::string lower(std::string_view s);

/// `prefix` + `name`, with runs of '_' collapsed and a trailing '_' dropped so the
/// result is a legal VHDL basic identifier.
[[nodiscard]] std::string vhdl_ident(std::string_view prefix, std::string_view name);

/// Legal VHDL basic identifier: letter first, no "__", no trailing '_'.
[[nodiscard]] bool is_vhdl_ident(std::string_view s);

/// `INST_<UPPER>`
[[nodiscard]] std::string inst_macro(std::string_view instance);

/// Manifest entry for (class, signal), or nullptr when the signal stays in its domain.
[[nodiscard]] const ManifestSignal* find_boundary(const InterfaceManifest& m, std::string_view cls,
                                                  std::string_view signal);

/// Payload layout of any signal, using the same packing as the manifest.
[[nodiscard]] std::vector<PayloadField> layout(const SignalDef& sig);
[[nodiscard]] int total_bits(const SignalDef& sig);

/// Upper bound on sends executed by one transition.
[[nodiscard]] int count_sends(const std::vector<Stmt>& body);

[[nodiscard]] std::string hex64(std::uint64_t v);

}  // namespace smc::detail
