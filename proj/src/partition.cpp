#include <set>
#include <utility>

#include "smc/partition.hpp"

namespace smc {

std::string_view domain_name(Domain d) noexcept { return d == Domain::HW ? "HW" : "SW"; }

std::string_view direction_name(Direction d) noexcept {
  return d == Direction::SwToHw ? "sw_to_hw" : "hw_to_sw";
}

Domain Partition::of(const std::string& class_name) const {
  const auto it = domain.find(class_name);
  return it == domain.end() ? Domain::SW : it->second;
}

Partition Partition::uniform(const Model& model, Domain d) {
  Partition p;
  for (const auto& c : model.classes) p.domain[c.name] = d;
  return p;
}

Partition Partition::from_mask(const Model& model, std::uint32_t mask) {
  Partition p;
  for (std::size_t i = 0; i < model.classes.size(); ++i) {
    p.domain[model.classes[i].name] = ((mask >> i) & 1u) != 0 ? Domain::HW : Domain::SW;
  }
  return p;
}

MarkSet marks_for(const Model& model, const Partition& partition) {
  MarkSet set;
  for (const auto& c : model.classes) {
    if (partition.of(c.name) == Domain::HW) {
      set.marks.push_back({kIsHardware, Literal::boolean(true), ElementPath{{c.name}}});
    }
  }
  return set;
}

PartitionResult derive_partition(const Model& model, const MarkSet& marks) {
  PartitionResult out;
  out.partition = Partition::uniform(model, Domain::SW);
  for (const auto& m : marks.marks) {
    const std::string path = m.path.to_string();
    if (m.key != kIsHardware) {
      out.diagnostics.push_back({"W_UNKNOWN_MARK", path,
                                 "mark '" + m.key + "' has no mapping rule; ignored",
                                 Severity::Warning});
      continue;
    }
    const ResolvedElement r = resolve(model, m.path);
    if (!r.found()) {
      out.diagnostics.push_back(
          {"E_MARK_PATH", path,
           r.ambiguous ? "'" + path + "' names more than one element" : "'" + path + "' does not resolve",
           Severity::Error});
      continue;
    }
    if (r.kind != ElementKind::Class) {
      out.diagnostics.push_back({"E_MARK_GRANULARITY", path,
                                 "isHardware applies to classes, not to a " +
                                     std::string(element_kind_name(r.kind)),
                                 Severity::Error});
      continue;
    }
    if (!m.value.is_bool()) {
      out.diagnostics.push_back({"E_MARK_TYPE", path,
                                 "isHardware takes true or false, got " + m.value.to_string(),
                                 Severity::Error});
      continue;
    }
    out.partition.domain[model.classes[static_cast<std::size_t>(r.class_index)].name] =
        m.value.value != 0 ? Domain::HW : Domain::SW;
  }
  return out;
}

namespace {

void collect_sends(const std::vector<Stmt>& body, std::vector<const Stmt*>& out) {
  for (const auto& s : body) {
    if (s.kind == Stmt::Kind::Send) out.push_back(&s);
    if (s.kind == Stmt::Kind::If) {
      collect_sends(s.then_body, out);
      collect_sends(s.else_body, out);
    }
  }
}

}  // namespace

std::vector<BoundarySignal> boundary(const Model& model, const Partition& partition) {
  // A send statement in a class crosses when its target instance's class sits in
  // the other domain. The signal joins the interface even if the sending class
  // has no instances.
  std::map<std::pair<std::string, std::string>, std::set<Route>> groups;
  for (const auto& c : model.classes) {
    std::vector<const Stmt*> sends;
    for (const auto& st : c.machine.states) {
      for (const auto& t : st.transitions) collect_sends(t.actions, sends);
    }
    const Domain from = partition.of(c.name);
    for (const Stmt* s : sends) {
      const ClassDef* target = model.class_of(s->target);
      if (target == nullptr || partition.of(target->name) == from) continue;
      auto& routes = groups[{target->name, s->signal}];
      for (const auto& inst : model.instances) {
        if (inst.class_name == c.name) routes.insert({inst.name, s->target});
      }
    }
  }

  std::vector<BoundarySignal> out;
  out.reserve(groups.size());
  for (auto& [key, routes] : groups) {
    BoundarySignal b;
    b.receiver_class = key.first;
    b.signal = key.second;
    b.direction = partition.of(key.first) == Domain::HW ? Direction::SwToHw : Direction::HwToSw;
    b.routes.assign(routes.begin(), routes.end());
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace smc
