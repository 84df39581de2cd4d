#include <doctest.h>

#include "smc/partition.hpp"
#include "smc/trace_json.hpp"
#include "support.hpp"

using namespace smc;
using smc::test::marks_from;
using smc::test::model_from;
using smc::test::scenario_from;

namespace {

std::vector<std::string> codes(const PartitionResult& r) {
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.code);
  return out;
}

Partition pong_hw(const Model& m) {
  return derive_partition(m, marks_from("mark isHardware on Pong;")).partition;
}

}  // namespace

TEST_CASE("derive_partition") {
  const Model m = model_from(smc::test::kPingPong);
  SUBCASE("empty marks: all software") {
    const auto r = derive_partition(m, MarkSet{});
    CHECK(r.ok());
    CHECK(r.partition.of("Ping") == Domain::SW);
    CHECK(r.partition.of("Pong") == Domain::SW);
  }
  SUBCASE("isHardware on Pong") {
    const auto r = derive_partition(m, marks_from("mark isHardware on Pong;"));
    CHECK(r.ok());
    CHECK(r.diagnostics.empty());
    CHECK(r.partition.of("Ping") == Domain::SW);
    CHECK(r.partition.of("Pong") == Domain::HW);
  }
  SUBCASE("explicit false") {
    const auto r = derive_partition(m, marks_from("mark isHardware = false on Pong;"));
    CHECK(r.ok());
    CHECK(r.partition.of("Pong") == Domain::SW);
  }
  SUBCASE("unresolvable path") {
    const auto r = derive_partition(m, marks_from("mark isHardware on Nope;"));
    CHECK_FALSE(r.ok());
    CHECK(codes(r) == std::vector<std::string>{"E_MARK_PATH"});
    CHECK(r.diagnostics[0].path == "Nope");
  }
  SUBCASE("non-class element") {
    const auto r = derive_partition(m, marks_from("mark isHardware on Pong.Hit; mark isHardware on pong;"));
    CHECK(codes(r) == std::vector<std::string>{"E_MARK_GRANULARITY", "E_MARK_GRANULARITY"});
  }
  SUBCASE("non-boolean value") {
    const auto r = derive_partition(m, marks_from("mark isHardware = 3 on Pong;"));
    CHECK(codes(r) == std::vector<std::string>{"E_MARK_TYPE"});
  }
  SUBCASE("unknown key is only a warning") {
    const auto r = derive_partition(m, marks_from("mark fastPath on Pong;"));
    CHECK(r.ok());
    CHECK(codes(r) == std::vector<std::string>{"W_UNKNOWN_MARK"});
    CHECK(r.diagnostics[0].severity == Severity::Warning);
  }
}

TEST_CASE("boundary of PingPong") {
  const Model m = model_from(smc::test::kPingPong);
  const auto b = boundary(m, pong_hw(m));
  REQUIRE(b.size() == 1);
  CHECK(b[0].receiver_class == "Pong");
  CHECK(b[0].signal == "Hit");
  CHECK(b[0].direction == Direction::SwToHw);
  CHECK(b[0].routes == std::vector<Route>{{"ping", "pong"}});
  CHECK(boundary(m, Partition::uniform(m, Domain::SW)).empty());
  CHECK(boundary(m, Partition::uniform(m, Domain::HW)).empty());
}

TEST_CASE("boundary is sorted and groups routes") {
  const Model m = smc::test::corpus_model("race");
  // Arbiter HW: Left/Right -> Arbiter cross sw_to_hw, Arbiter -> Monitor crosses hw_to_sw.
  const auto b = boundary(m, derive_partition(m, marks_from("mark isHardware on Arbiter;")).partition);
  REQUIRE(b.size() == 2);
  CHECK(b[0].receiver_class == "Arbiter");
  CHECK(b[0].routes == std::vector<Route>{{"left", "arb"}, {"right", "arb"}});
  CHECK(b[0].direction == Direction::SwToHw);
  CHECK(b[1].receiver_class == "Monitor");
  CHECK(b[1].direction == Direction::HwToSw);
}

TEST_CASE("PingPong co-simulation with latency 1") {
  const Model m = model_from(smc::test::kPingPong);
  const Scenario s = scenario_from("confluent; at 0 send ping.Hit(); expect ping.hits == 1; expect pong.hits == 1;");
  const PartitionedTrace pt = cosim(m, pong_hw(m), s);
  CHECK(pt.merged.outcome == Outcome::Quiescent);
  CHECK(pt.merged.passed());
  REQUIRE(pt.merged.events.size() == 2);
  CHECK(pt.placement[0].domain == Domain::SW);
  CHECK_FALSE(pt.placement[0].bus_enqueue_step.has_value());
  CHECK(pt.placement[1].domain == Domain::HW);
  REQUIRE(pt.placement[1].bus_enqueue_step.has_value());
  REQUIRE(pt.placement[1].bus_deliver_step.has_value());
  CHECK(*pt.placement[1].bus_deliver_step >= *pt.placement[1].bus_enqueue_step + 1);
  CHECK(pt.crossings == 1);

  const EquivalenceReport rep = equivalence_check(run(m, s), pt, s.confluent);
  CHECK(rep.ok());
  CHECK(rep.summary() == "L1 pass L2 pass L3 pass");
}

TEST_CASE("latency 3 delays delivery but keeps the final state") {
  const Model m = model_from(smc::test::kPingPong);
  const Scenario s = scenario_from("at 0 send ping.Hit();");
  const PartitionedTrace pt = cosim(m, pong_hw(m), s, {}, 3);
  CHECK(pt.merged.outcome == Outcome::Quiescent);
  CHECK(final_valuation(pt.merged) == std::vector<std::vector<Value>>{{1}, {1}});
  REQUIRE(pt.placement[1].bus_deliver_step.has_value());
  CHECK(*pt.placement[1].bus_deliver_step >= *pt.placement[1].bus_enqueue_step + 3);
}

TEST_CASE("degenerate partitions reproduce the reference trace") {
  for (const auto& pair : smc::test::kCorpusPairs) {
    CAPTURE(pair.scenario);
    const Model m = smc::test::corpus_model(pair.model);
    const Scenario s = smc::test::corpus_scenario(pair.scenario);
    const Trace ref = run(m, s);
    for (Domain d : {Domain::SW, Domain::HW}) {
      const PartitionedTrace pt = cosim(m, Partition::uniform(m, d), s);
      CHECK(pt.merged.events == ref.events);
      CHECK(pt.crossings == 0);
      CHECK(equivalence_check(ref, pt, s.confluent).summary() == "L1 pass L2 pass L3 pass");
    }
  }
}

TEST_CASE("L1 detects a reordered pair") {
  const Model m = model_from(smc::test::kPingPong);
  const Scenario s = scenario_from("at 0 send ping.Hit(); at 0 send pong.Hit(); at 0 send pong.Hit();");
  const Trace ref = run(m, s);
  PartitionedTrace pt = cosim(m, Partition::uniform(m, Domain::SW), s);
  // Make the two env->pong dispatches carry different args so reordering is visible.
  std::vector<std::size_t> env_pong;
  for (std::size_t i = 0; i < pt.merged.events.size(); ++i) {
    const auto& e = pt.merged.events[i].envelope;
    if (e.sender == kEnvSender && e.receiver == "pong") env_pong.push_back(i);
  }
  REQUIRE(env_pong.size() == 2);
  Trace ref_tagged = ref;
  for (auto* t : {&ref_tagged, &pt.merged}) {
    int k = 0;
    for (auto& e : t->events) {
      if (e.envelope.sender == kEnvSender && e.envelope.receiver == "pong") e.envelope.args = {Value(k++)};
    }
  }
  std::swap(pt.merged.events[env_pong[0]], pt.merged.events[env_pong[1]]);
  const EquivalenceReport rep = equivalence_check(ref_tagged, pt, false);
  CHECK_FALSE(rep.l1.pass);
  CHECK(rep.l1.divergence.find("$env->pong") != std::string::npos);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("non-confluent L3 failure is informative only") {
  EquivalenceReport rep;
  rep.l3.pass = false;
  rep.l3.required = false;
  CHECK(rep.ok());
  CHECK(rep.summary() == "L1 pass L2 pass L3 fail (informative)");
  rep.l3.required = true;
  CHECK_FALSE(rep.ok());
}

TEST_CASE("partitioned trace serialization adds placement keys") {
  const Model m = model_from(smc::test::kPingPong);
  const PartitionedTrace pt = cosim(m, pong_hw(m), scenario_from("at 0 send ping.Hit();"));
  const std::string text = to_jsonl(m, pt);
  CHECK(text.find(R"("dropped":false,"domain":"SW","bus_enqueue_step":null,"bus_deliver_step":null})") !=
        std::string::npos);
  CHECK(text.find(R"("domain":"HW","bus_enqueue_step":0,"bus_deliver_step":1})") != std::string::npos);
  CHECK(text.find(R"("crossings":1})") != std::string::npos);
}

TEST_CASE("marks_for inverts derive_partition") {
  const Model m = smc::test::corpus_model("counter");
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    const Partition p = Partition::from_mask(m, mask);
    CHECK(derive_partition(m, marks_for(m, p)).partition == p);
  }
}
