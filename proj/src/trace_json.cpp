#include "smc/trace_json.hpp"

namespace smc {

using nlohmann::ordered_json;

ordered_json event_json(const TraceEvent& ev) {
  ordered_json j;
  j["step"] = ev.step;
  j["seq"] = ev.envelope.seq;
  j["sender"] = ev.envelope.sender;
  j["receiver"] = ev.envelope.receiver;
  j["signal"] = ev.envelope.signal;
  j["args"] = ev.envelope.args;
  j["from"] = ev.from_state;
  j["to"] = ev.to_state;
  ordered_json writes = ordered_json::array();
  for (const auto& w : ev.writes) writes.push_back(ordered_json::array({w.attr, w.value}));
  j["writes"] = std::move(writes);
  j["sent"] = ev.sent;
  j["dropped"] = ev.dropped;
  return j;
}

std::string outcome_text(const Trace& trace) {
  std::string out(outcome_name(trace.outcome));
  if (trace.outcome == Outcome::RuntimeError) out += "(" + trace.error_code + ": " + trace.detail + ")";
  return out;
}

ordered_json summary_json(const Model& model, const Trace& trace) {
  ordered_json j;
  j["outcome"] = outcome_text(trace);
  ordered_json final = ordered_json::object();
  for (std::size_t i = 0; i < model.instances.size() && i < trace.final.instances.size(); ++i) {
    const auto& decl = model.instances[i];
    const ClassDef* cls = model.find_class(decl.class_name);
    const InstanceState& st = trace.final.instances[i];
    ordered_json inst;
    inst["state"] = cls->machine.states[static_cast<std::size_t>(st.state)].name;
    ordered_json attrs = ordered_json::object();
    for (std::size_t a = 0; a < cls->attributes.size(); ++a) {
      attrs[cls->attributes[a].name] = st.attrs[a];
    }
    inst["attrs"] = std::move(attrs);
    final[decl.name] = std::move(inst);
  }
  j["final"] = std::move(final);
  ordered_json exps = ordered_json::array();
  for (const auto& e : trace.expectations) {
    ordered_json x;
    x["path"] = e.path;
    x["expected"] = e.expected;
    x["actual"] = e.actual;
    x["pass"] = e.pass;
    exps.push_back(std::move(x));
  }
  j["expectations"] = std::move(exps);
  return j;
}

std::string to_jsonl(const Model& model, const Trace& trace) {
  std::string out;
  for (const auto& ev : trace.events) {
    out += event_json(ev).dump();
    out += '\n';
  }
  out += summary_json(model, trace).dump();
  out += '\n';
  return out;
}

}  // namespace smc
