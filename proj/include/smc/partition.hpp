#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smc/executor.hpp"
#include "smc/ir.hpp"
#include "smc/marks.hpp"
#include "smc/scenario.hpp"

namespace smc {

enum class Domain : std::uint8_t { SW, HW };

[[nodiscard]] std::string_view domain_name(Domain d) noexcept;

/// Class name -> implementation domain. Total over the model's classes.
struct Partition {
  std::map<std::string, Domain> domain;

  [[nodiscard]] Domain of(const std::string& class_name) const;

  /// Every class in `d`.
  static Partition uniform(const Model& model, Domain d);
  /// Bit i of `mask` (class order) selects HW for class i.
  static Partition from_mask(const Model& model, std::uint32_t mask);

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// The marks that reproduce `partition`: one `isHardware` mark per HW class.
[[nodiscard]] MarkSet marks_for(const Model& model, const Partition& partition);

struct PartitionResult {
  Partition partition;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return !has_errors(diagnostics); }
};

/// Classes default to SW; `isHardware` on a class path selects HW (or SW when
/// false). Unknown keys are warned about and ignored.
[[nodiscard]] PartitionResult derive_partition(const Model& model, const MarkSet& marks);

enum class Direction : std::uint8_t { SwToHw, HwToSw };

[[nodiscard]] std::string_view direction_name(Direction d) noexcept;

struct Route {
  std::string sender;
  std::string receiver;

  friend bool operator==(const Route&, const Route&) = default;
  friend auto operator<=>(const Route&, const Route&) = default;
};

struct BoundarySignal {
  std::string receiver_class;
  std::string signal;
  Direction direction = Direction::SwToHw;
  std::vector<Route> routes;  // sorted, unique

  friend bool operator==(const BoundarySignal&, const BoundarySignal&) = default;
};

/// Send routes whose endpoints lie in different domains, grouped by
/// (receiver class, signal) and sorted by those names.
[[nodiscard]] std::vector<BoundarySignal> boundary(const Model& model, const Partition& partition);

// ---------------------------------------------------------------------------
// Co-simulation

/// Where an event ran, and for envelopes that crossed the bus, when.
struct EventPlacement {
  Domain domain = Domain::SW;
  std::optional<std::uint64_t> bus_enqueue_step;
  std::optional<std::uint64_t> bus_deliver_step;

  friend bool operator==(const EventPlacement&, const EventPlacement&) = default;
};

struct PartitionedTrace {
  Trace merged;                          // same schema as an executor trace
  std::vector<EventPlacement> placement;  // parallel to merged.events
  std::size_t crossings = 0;             // envelopes carried by the bus
};

/// Runs a SW island and a HW island, each under the reference semantics, joined
/// by a single FIFO bus that delivers an envelope `latency` ticks after it was
/// sent. Each round lets the SW island take one step, then the HW island, then
/// advances the bus by one tick.
[[nodiscard]] PartitionedTrace cosim(const Model& model, const Partition& partition,
                                     const Scenario& scenario, const ExecConfig& config = {},
                                     std::uint64_t latency = 1);

/// JSON Lines in the executor format plus domain, bus_enqueue_step and
/// bus_deliver_step on every event.
[[nodiscard]] std::string to_jsonl(const Model& model, const PartitionedTrace& trace);

struct LevelResult {
  bool pass = true;
  bool required = true;
  std::string divergence;  // first divergence, empty when passing
};

struct EquivalenceReport {
  LevelResult l1;  // per-pair dispatch sequences identical
  LevelResult l2;  // causality in the partitioned trace
  LevelResult l3;  // final attribute valuations equal (required iff confluent)

  /// All required levels pass.
  [[nodiscard]] bool ok() const noexcept;
  /// `L1 pass L2 pass L3 pass`; a failing level that is not required reads `L3 fail (informative)`.
  [[nodiscard]] std::string summary() const;
};

[[nodiscard]] EquivalenceReport equivalence_check(const Trace& reference,
                                                  const PartitionedTrace& partitioned,
                                                  bool confluent);

}  // namespace smc
