#include "smc/campaign.hpp"

#include <stdexcept>

#include "smc/trace_json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace smc {
namespace {

SeedOutcome one_seed(const Model& model, const Scenario& scenario,
                     const std::vector<std::vector<Value>>& reference, std::uint64_t seed,
                     ExecMode mode) {
  ExecConfig cfg = ExecConfig::random(seed);
  cfg.mode = mode;
  const Trace t = run(model, scenario, cfg);
  SeedOutcome o;
  o.seed = seed;
  o.causal = check_causality(t);
  o.pair_fifo = check_pair_fifo(t);
  o.expectations = t.expectations_pass();
  o.matches_reference = final_valuation(t) == reference;
  o.outcome = t.outcome;
  o.trace_hash = fnv1a64(to_jsonl(model, t));
  return o;
}

std::vector<std::vector<Value>> reference_valuation(const Model& model, const Scenario& scenario,
                                                    ExecMode mode) {
  ExecConfig cfg;
  cfg.mode = mode;
  return final_valuation(run(model, scenario, cfg));
}

PartitionOutcome one_partition(const Model& model, const Scenario& scenario, const Trace& reference,
                               std::uint32_t mask, const std::string& name) {
  PartitionOutcome o;
  o.mask = mask;
  const Partition p = Partition::from_mask(model, mask);
  const PartitionedTrace pt = cosim(model, p, scenario);
  o.cosim_quiescent = pt.merged.outcome == Outcome::Quiescent;
  o.equivalence = equivalence_check(reference, pt, scenario.confluent);
  o.crossings = pt.crossings;

  auto first = emit_all(model, p, name);
  if (!first.ok()) return o;
  o.emitted = true;
  const EmitOutput& out = first.value();
  o.interfaces = check_interfaces(out.c_header, out.vhdl_source, out.manifest).pass;
  const std::string all = out.c_source + out.c_header + out.vhdl_source + out.manifest_json;
  o.output_hash = fnv1a64(all);
  auto second = emit_all(model, p, name);
  o.deterministic = second.ok() && second.value().c_source + second.value().c_header +
                                           second.value().vhdl_source +
                                           second.value().manifest_json ==
                                       all;
  return o;
}

std::uint32_t partition_count(const Model& model) {
  if (model.classes.size() > 16) throw std::invalid_argument("partition sweep limited to 16 classes");
  return 1u << model.classes.size();
}

}  // namespace

std::size_t SeedCampaign::count_failing(bool SeedOutcome::*check) const {
  std::size_t n = 0;
  for (const auto& r : runs) n += (r.*check) ? 0 : 1;
  return n;
}

SeedCampaign seed_campaign(const Model& model, const Scenario& scenario, std::uint64_t first,
                           std::uint64_t count, ExecMode mode) {
  const auto reference = reference_valuation(model, scenario, mode);
  SeedCampaign c;
  c.runs.resize(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    c.runs[static_cast<std::size_t>(i)] =
        one_seed(model, scenario, reference, first + static_cast<std::uint64_t>(i), mode);
  }
  return c;
}

SeedCampaign seed_campaign_serial(const Model& model, const Scenario& scenario, std::uint64_t first,
                                  std::uint64_t count, ExecMode mode) {
  const auto reference = reference_valuation(model, scenario, mode);
  SeedCampaign c;
  c.runs.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    c.runs.push_back(one_seed(model, scenario, reference, first + i, mode));
  }
  return c;
}

std::vector<PartitionOutcome> partition_sweep(const Model& model, const Scenario& scenario,
                                              const std::string& name) {
  const std::uint32_t total = partition_count(model);
  const Trace reference = run(model, scenario);
  std::vector<PartitionOutcome> out(total);
  const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t m = 0; m < n; ++m) {
    out[static_cast<std::size_t>(m)] =
        one_partition(model, scenario, reference, static_cast<std::uint32_t>(m), name);
  }
  return out;
}

std::vector<PartitionOutcome> partition_sweep_serial(const Model& model, const Scenario& scenario,
                                                     const std::string& name) {
  const std::uint32_t total = partition_count(model);
  const Trace reference = run(model, scenario);
  std::vector<PartitionOutcome> out;
  out.reserve(total);
  for (std::uint32_t m = 0; m < total; ++m) {
    out.push_back(one_partition(model, scenario, reference, m, name));
  }
  return out;
}

int campaign_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace smc
