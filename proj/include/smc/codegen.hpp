#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smc/partition.hpp"
#include "smc/result.hpp"

namespace smc {

struct PayloadField {
  std::string name;
  int width_bits = 0;
  int bit_offset = 0;  // bit 0 = least significant bit of the payload vector

  friend bool operator==(const PayloadField&, const PayloadField&) = default;
};

struct ManifestSignal {
  std::uint32_t id = 0;
  std::string receiver_class;
  std::string signal;
  Direction direction = Direction::SwToHw;
  std::vector<PayloadField> payload;  // declaration order, ascending offsets
  int payload_total_bits = 0;

  /// `SIG_<RECEIVERCLASS>_<SIGNAL>`
  [[nodiscard]] std::string macro() const;

  friend bool operator==(const ManifestSignal&, const ManifestSignal&) = default;
};

/// The single description of every signal crossing the HW/SW boundary. Both
/// emitted halves take their boundary ids and layouts from it.
struct InterfaceManifest {
  std::uint64_t model_hash = 0;
  std::vector<ManifestSignal> signals;  // dense ids, sorted by (receiver_class, signal)

  friend bool operator==(const InterfaceManifest&, const InterfaceManifest&) = default;
};

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// `SIG_` + upper-cased class and signal names joined by `_`.
[[nodiscard]] std::string mangle_signal(std::string_view cls, std::string_view signal);

[[nodiscard]] InterfaceManifest build_manifest(const Model& model, const Partition& partition);

/// Canonical JSON: keys sorted, two-space indent, trailing newline.
[[nodiscard]] std::string manifest_to_json(const InterfaceManifest& manifest);
/// Parses manifest JSON; nullopt with `error` filled when malformed.
[[nodiscard]] std::optional<InterfaceManifest> manifest_from_json(std::string_view text,
                                                                  std::string* error = nullptr);

/// Identifiers the emitters would generate that collide (case-sensitively in C,
/// case-insensitively in VHDL) are E_NAME_CLASH; generated VHDL names that are
/// not legal identifiers are E_BAD_IDENT.
[[nodiscard]] std::vector<Diagnostic> check_name_clashes(const Model& model,
                                                         const Partition& partition,
                                                         const InterfaceManifest& manifest);

struct CSources {
  std::string source;
  std::string header;
};

/// Software half. `name` is the model name used for file names and the C prefix.
[[nodiscard]] CSources emit_c(const Model& model, const Partition& partition,
                              const InterfaceManifest& manifest, const std::string& name);

/// Hardware half.
[[nodiscard]] std::string emit_vhdl(const Model& model, const Partition& partition,
                                    const InterfaceManifest& manifest, const std::string& name);

struct EmitOutput {
  std::string c_source;
  std::string c_header;
  std::string vhdl_source;
  InterfaceManifest manifest;
  std::string manifest_json;
};

/// Builds the manifest and both halves, refusing on name clashes.
[[nodiscard]] Result<EmitOutput, std::vector<Diagnostic>> emit_all(const Model& model,
                                                                   const Partition& partition,
                                                                   const std::string& name);

struct InterfaceReport {
  bool pass = true;
  std::vector<std::string> divergences;
};

/// Re-extracts the SIG_ ids and payload widths from both texts by line scanning
/// and compares them with the manifest. Tolerates arbitrary surrounding text.
[[nodiscard]] InterfaceReport check_interfaces(std::string_view c_header,
                                               std::string_view vhdl_source,
                                               const InterfaceManifest& manifest);

/// `<name>_sw.c`, `<name>_sw.h`, `<name>_hw.vhd`, `<name>_interface.json`
struct OutputNames {
  std::string c_source;
  std::string c_header;
  std::string vhdl;
  std::string manifest;
};
[[nodiscard]] OutputNames output_names(const std::string& name);

/// A C and VHDL safe model name derived from a file stem.
[[nodiscard]] std::string sanitize_model_name(std::string_view stem);

}  // namespace smc
