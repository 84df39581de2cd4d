#include <doctest.h>

#include "smc/campaign.hpp"
#include "support.hpp"

using namespace smc;

TEST_CASE("parallel seed campaign matches the serial reference") {
  const Model m = smc::test::corpus_model("race");
  const Scenario s = smc::test::corpus_scenario("race_repeat");
  const SeedCampaign par = seed_campaign(m, s, 100, 200);
  const SeedCampaign ser = seed_campaign_serial(m, s, 100, 200);
  CHECK(par == ser);
  REQUIRE(par.runs.size() == 200);
  CHECK(par.runs.front().seed == 100);
  CHECK(par.runs.back().seed == 299);
  CHECK(par.count_failing(&SeedOutcome::causal) == 0);
  CHECK(par.count_failing(&SeedOutcome::pair_fifo) == 0);
  CHECK(par.count_failing(&SeedOutcome::expectations) == 0);
  // Race is order-sensitive: some seeds end with a different owner.
  CHECK(par.count_failing(&SeedOutcome::matches_reference) > 0);
}

TEST_CASE("confluent scenario: every seed reaches the reference valuation") {
  const Model m = smc::test::corpus_model("counter");
  const Scenario s = smc::test::corpus_scenario("counter_two_starts");
  const SeedCampaign c = seed_campaign(m, s, 0, 100);
  CHECK(c.count_failing(&SeedOutcome::matches_reference) == 0);
}

TEST_CASE("parallel partition sweep matches the serial reference") {
  const Model m = smc::test::corpus_model("counter");
  const Scenario s = smc::test::corpus_scenario("counter_start3");
  const auto par = partition_sweep(m, s, "counter");
  const auto ser = partition_sweep_serial(m, s, "counter");
  REQUIRE(par.size() == 8);
  CHECK(par == ser);
  for (const auto& o : par) {
    CAPTURE(o.mask);
    CHECK(o.cosim_quiescent);
    CHECK(o.equivalence.ok());
    CHECK(o.emitted);
    CHECK(o.interfaces);
    CHECK(o.deterministic);
  }
  CHECK(par[0].crossings == 0);
  CHECK(par[7].crossings == 0);
  CHECK(par[1].crossings > 0);
  CHECK(campaign_threads() >= 1);
}
