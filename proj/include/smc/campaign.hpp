#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smc/codegen.hpp"
#include "smc/executor.hpp"
#include "smc/partition.hpp"

namespace smc {

/// Checks made on one random-scheduler run.
struct SeedOutcome {
  std::uint64_t seed = 0;
  bool causal = false;
  bool pair_fifo = false;
  bool expectations = false;
  /// Final valuation equals the global-FIFO reference run's.
  bool matches_reference = false;
  Outcome outcome = Outcome::Quiescent;
  std::uint64_t trace_hash = 0;  // fnv1a64 of the JSONL trace

  friend bool operator==(const SeedOutcome&, const SeedOutcome&) = default;
};

struct SeedCampaign {
  std::vector<SeedOutcome> runs;  // ascending seed

  [[nodiscard]] std::size_t count_failing(bool SeedOutcome::*check) const;
  friend bool operator==(const SeedCampaign&, const SeedCampaign&) = default;
};

/// Runs seeds [first, first + count) with the random scheduler.
[[nodiscard]] SeedCampaign seed_campaign(const Model& model, const Scenario& scenario,
                                         std::uint64_t first, std::uint64_t count,
                                         ExecMode mode = ExecMode::Strict);
/// Single-threaded reference of seed_campaign; results are identical.
[[nodiscard]] SeedCampaign seed_campaign_serial(const Model& model, const Scenario& scenario,
                                                std::uint64_t first, std::uint64_t count,
                                                ExecMode mode = ExecMode::Strict);

/// Co-simulation, equivalence and code generation results for one partition.
struct PartitionOutcome {
  std::uint32_t mask = 0;  // bit i set: class i is HW
  bool cosim_quiescent = false;
  EquivalenceReport equivalence;
  std::uint64_t crossings = 0;
  bool emitted = false;  // emit_all succeeded
  bool interfaces = false;  // check_interfaces passed on the emitted texts
  bool deterministic = false;  // a second emission is byte-identical
  std::uint64_t output_hash = 0;  // fnv1a64 over all four emitted texts

  friend bool operator==(const PartitionOutcome& a, const PartitionOutcome& b) {
    return a.mask == b.mask && a.cosim_quiescent == b.cosim_quiescent &&
           a.equivalence.summary() == b.equivalence.summary() && a.crossings == b.crossings &&
           a.emitted == b.emitted && a.interfaces == b.interfaces &&
           a.deterministic == b.deterministic && a.output_hash == b.output_hash;
  }
};

/// Every class-granularity partition of `model` (2^classes of them, classes <= 16).
[[nodiscard]] std::vector<PartitionOutcome> partition_sweep(const Model& model,
                                                            const Scenario& scenario,
                                                            const std::string& name);
/// Single-threaded reference of partition_sweep; results are identical.
[[nodiscard]] std::vector<PartitionOutcome> partition_sweep_serial(const Model& model,
                                                                   const Scenario& scenario,
                                                                   const std::string& name);

/// Number of OpenMP threads campaigns will use (1 without OpenMP).
[[nodiscard]] int campaign_threads() noexcept;

}  // namespace smc
