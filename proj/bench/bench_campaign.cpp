// Parallel vs serial seed campaigns and partition sweeps over a corpus model.
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <benchmark/benchmark.h>

#include "smc/campaign.hpp"
#include "smc/frontend.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Fixture {
  smc::Model model;
  smc::Scenario scenario;
};

const Fixture& race() {
  static const Fixture f = [] {
    auto m = smc::parse_model(slurp(SMC_CORPUS_DIR "/models/race.mdl"));
    auto s = smc::parse_scenario(slurp(SMC_CORPUS_DIR "/scenarios/race_repeat.scn"));
    if (!m.ok() || !s.ok()) throw std::runtime_error("corpus parse failed");
    return Fixture{std::move(m).value(), std::move(s).value()};
  }();
  return f;
}

void BM_SeedCampaignParallel(benchmark::State& state) {
  const auto& f = race();
  for (auto _ : state) {
    benchmark::DoNotOptimize(smc::seed_campaign(f.model, f.scenario, 0, state.range(0)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SeedCampaignSerial(benchmark::State& state) {
  const auto& f = race();
  for (auto _ : state) {
    benchmark::DoNotOptimize(smc::seed_campaign_serial(f.model, f.scenario, 0, state.range(0)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PartitionSweepParallel(benchmark::State& state) {
  const auto& f = race();
  for (auto _ : state) benchmark::DoNotOptimize(smc::partition_sweep(f.model, f.scenario, "race"));
}

void BM_PartitionSweepSerial(benchmark::State& state) {
  const auto& f = race();
  for (auto _ : state) benchmark::DoNotOptimize(smc::partition_sweep_serial(f.model, f.scenario, "race"));
}

}  // namespace

BENCHMARK(BM_SeedCampaignParallel)->Arg(1000);
BENCHMARK(BM_SeedCampaignSerial)->Arg(1000);
BENCHMARK(BM_PartitionSweepParallel);
BENCHMARK(BM_PartitionSweepSerial);

BENCHMARK_MAIN();
