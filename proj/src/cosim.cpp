#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <unordered_map>

#include "smc/partition.hpp"
#include "smc/trace_json.hpp"

namespace smc {
namespace {

struct BusItem {
  SignalEnvelope envelope;
  std::uint64_t enqueue_tick = 0;
};

struct BusHop {
  std::uint64_t enqueue_tick = 0;
  std::uint64_t deliver_tick = 0;
};

}  // namespace

PartitionedTrace cosim(const Model& model, const Partition& partition, const Scenario& scenario,
                       const ExecConfig& config, std::uint64_t latency) {
  PartitionedTrace out;
  Trace& trace = out.merged;
  const Interpreter interp(model);
  SystemState state = interp.initial_state();
  latency = std::max<std::uint64_t>(latency, 1);

  if (auto diags = check_scenario(model, scenario); !diags.empty()) {
    trace.final = std::move(state);
    trace.outcome = Outcome::RuntimeError;
    trace.error_code = "E_SCENARIO_REF";
    trace.detail = diags.front().path + ": " + diags.front().message;
    return out;
  }

  std::vector<Domain> domain_of;
  domain_of.reserve(model.instances.size());
  for (const auto& inst : model.instances) domain_of.push_back(partition.of(inst.class_name));

  InjectionFeed feed(scenario);
  Scheduler scheduler(config);
  std::deque<BusItem> bus;
  std::unordered_map<std::uint64_t, BusHop> hops;  // seq -> bus timing
  std::uint64_t tick = 0;

  auto queue_of = [&](const std::string& receiver) -> std::deque<SignalEnvelope>& {
    return state.pending[static_cast<std::size_t>(interp.instance_index(receiver))];
  };
  auto route_injection = [&](const Injection& inj) {
    std::vector<Value> args;
    args.reserve(inj.args.size());
    for (const auto& a : inj.args) args.push_back(literal_value(a));
    queue_of(inj.instance)
        .push_back(interp.make_envelope(state, kEnvSender, inj.instance, inj.signal, std::move(args)));
  };

  bool done = false;
  while (!done) {
    for (const Domain island : {Domain::SW, Domain::HW}) {
      feed.release_due(state.dispatch_count, route_injection);
      const int who = scheduler.select(state, [&](int i) {
        return domain_of[static_cast<std::size_t>(i)] == island;
      });
      if (who < 0) continue;
      if (state.dispatch_count >= config.max_steps) {
        trace.outcome = Outcome::StepLimit;
        trace.error_code = "E_STEP_LIMIT";
        trace.detail = "step limit " + std::to_string(config.max_steps) + " reached";
        done = true;
        break;
      }
      auto& queue = state.pending[static_cast<std::size_t>(who)];
      SignalEnvelope env = std::move(queue.front());
      queue.pop_front();

      DispatchResult r = interp.dispatch(state, env, config.mode);
      if (r.kind == DispatchResult::Kind::Unhandled) {
        trace.outcome = Outcome::RuntimeError;
        trace.error_code = "E_UNHANDLED";
        trace.detail = "step " + std::to_string(state.dispatch_count) + ": " + env.receiver +
                       " in state " + r.event.from_state + " has no transition on " + env.signal;
        done = true;
        break;
      }
      for (auto& sent : r.sends) {
        const auto to = static_cast<std::size_t>(interp.instance_index(sent.receiver));
        if (domain_of[to] == island) {
          state.pending[to].push_back(std::move(sent));
        } else {
          ++out.crossings;
          bus.push_back({std::move(sent), tick});
        }
      }
      EventPlacement place;
      place.domain = island;
      if (const auto it = hops.find(env.seq); it != hops.end()) {
        place.bus_enqueue_step = it->second.enqueue_tick;
        place.bus_deliver_step = it->second.deliver_tick;
        hops.erase(it);
      }
      trace.events.push_back(std::move(r.event));
      out.placement.push_back(place);
    }
    if (done) break;

    ++tick;
    while (!bus.empty() && bus.front().enqueue_tick + latency <= tick) {
      BusItem item = std::move(bus.front());
      bus.pop_front();
      hops[item.envelope.seq] = {item.enqueue_tick, tick};
      queue_of(item.envelope.receiver).push_back(std::move(item.envelope));
    }

    if (!state.has_pending() && bus.empty()) {
      feed.release_due(state.dispatch_count, route_injection);
      if (!state.has_pending() && !feed.release_next_batch(route_injection)) {
        trace.outcome = Outcome::Quiescent;
        done = true;
      }
    }
  }

  trace.final = std::move(state);
  check_expectations(model, scenario, trace);
  return out;
}

std::string to_jsonl(const Model& model, const PartitionedTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.merged.events.size(); ++i) {
    auto j = event_json(trace.merged.events[i]);
    const EventPlacement& p = trace.placement[i];
    j["domain"] = domain_name(p.domain);
    j["bus_enqueue_step"] =
        p.bus_enqueue_step ? nlohmann::ordered_json(*p.bus_enqueue_step) : nlohmann::ordered_json();
    j["bus_deliver_step"] =
        p.bus_deliver_step ? nlohmann::ordered_json(*p.bus_deliver_step) : nlohmann::ordered_json();
    out += j.dump();
    out += '\n';
  }
  auto summary = summary_json(model, trace.merged);
  summary["crossings"] = trace.crossings;
  out += summary.dump();
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence

namespace {

using PairKey = std::pair<std::string, std::string>;
using Dispatched = std::pair<std::string, std::vector<Value>>;

std::map<PairKey, std::vector<Dispatched>> per_pair(const Trace& t) {
  std::map<PairKey, std::vector<Dispatched>> out;
  for (const auto& ev : t.events) {
    out[{ev.envelope.sender, ev.envelope.receiver}].emplace_back(ev.envelope.signal,
                                                                 ev.envelope.args);
  }
  return out;
}

std::string show(const Dispatched& d) {
  std::string s = d.first + "(";
  for (std::size_t i = 0; i < d.second.size(); ++i) {
    if (i != 0) s += ", ";
    s += std::to_string(d.second[i]);
  }
  return s + ")";
}

std::string first_pair_divergence(const Trace& ref, const Trace& part) {
  const auto a = per_pair(ref);
  const auto b = per_pair(part);
  std::map<PairKey, int> keys;
  for (const auto& [k, v] : a) keys[k] = 0;
  for (const auto& [k, v] : b) keys[k] = 0;
  static const std::vector<Dispatched> kEmpty;
  for (const auto& [k, unused] : keys) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    const auto& sa = ia == a.end() ? kEmpty : ia->second;
    const auto& sb = ib == b.end() ? kEmpty : ib->second;
    const std::size_t n = std::min(sa.size(), sb.size());
    const std::string pair = k.first + "->" + k.second;
    for (std::size_t i = 0; i < n; ++i) {
      if (sa[i] != sb[i]) {
        return pair + " #" + std::to_string(i) + ": " + show(sa[i]) + " vs " + show(sb[i]);
      }
    }
    if (sa.size() != sb.size()) {
      return pair + ": " + std::to_string(sa.size()) + " dispatches vs " +
             std::to_string(sb.size());
    }
  }
  return {};
}

std::string first_valuation_divergence(const Trace& ref, const Trace& part) {
  const auto a = final_valuation(ref);
  const auto b = final_valuation(part);
  if (a.size() != b.size()) return "instance count differs";
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a[i].size() && k < b[i].size(); ++k) {
      if (a[i][k] != b[i][k]) {
        return "instance #" + std::to_string(i) + " attribute #" + std::to_string(k) + ": " +
               std::to_string(a[i][k]) + " vs " + std::to_string(b[i][k]);
      }
    }
  }
  return {};
}

}  // namespace

bool EquivalenceReport::ok() const noexcept {
  auto good = [](const LevelResult& l) { return l.pass || !l.required; };
  return good(l1) && good(l2) && good(l3);
}

std::string EquivalenceReport::summary() const {
  auto one = [](const char* name, const LevelResult& l) {
    std::string s = std::string(name) + (l.pass ? " pass" : " fail");
    if (!l.pass && !l.required) s += " (informative)";
    return s;
  };
  return one("L1", l1) + " " + one("L2", l2) + " " + one("L3", l3);
}

EquivalenceReport equivalence_check(const Trace& reference, const PartitionedTrace& partitioned,
                                    bool confluent) {
  EquivalenceReport r;
  r.l1.divergence = first_pair_divergence(reference, partitioned.merged);
  r.l1.pass = r.l1.divergence.empty();

  r.l2.pass = check_causality(partitioned.merged);
  if (!r.l2.pass) r.l2.divergence = "causality violated in partitioned trace";

  r.l3.required = confluent;
  r.l3.divergence = first_valuation_divergence(reference, partitioned.merged);
  r.l3.pass = r.l3.divergence.empty();
  return r;
}

}  // namespace smc
