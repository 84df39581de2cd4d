#include "smc/executor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace smc {

bool SystemState::has_pending() const noexcept {
  return std::any_of(pending.begin(), pending.end(), [](const auto& q) { return !q.empty(); });
}

bool Trace::expectations_pass() const noexcept {
  return std::all_of(expectations.begin(), expectations.end(),
                     [](const ExpectationResult& r) { return r.pass; });
}

bool Trace::passed() const noexcept {
  return outcome == Outcome::Quiescent && expectations_pass();
}

std::string_view outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::Quiescent: return "quiescent";
    case Outcome::StepLimit: return "step-limit";
    case Outcome::RuntimeError: return "runtime-error";
  }
  return "runtime-error";
}

Value literal_value(const Literal& l) noexcept { return static_cast<Value>(l.value); }

// ---------------------------------------------------------------------------
// Interpreter

Interpreter::Interpreter(const Model& model) : model_(&model) {
  classes_.reserve(model.instances.size());
  for (const auto& inst : model.instances) classes_.push_back(model.find_class(inst.class_name));
}

SystemState Interpreter::initial_state() const {
  SystemState s;
  s.instances.reserve(classes_.size());
  for (const ClassDef* c : classes_) {
    InstanceState is;
    is.state = std::max(0, c->state_index(c->machine.initial));
    is.attrs.reserve(c->attributes.size());
    for (const auto& a : c->attributes) is.attrs.push_back(literal_value(a.initial) & mask(a.type));
    s.instances.push_back(std::move(is));
  }
  s.pending.resize(classes_.size());
  return s;
}

SignalEnvelope Interpreter::make_envelope(SystemState& state, std::string sender,
                                          std::string receiver, std::string signal,
                                          std::vector<Value> args) const {
  SignalEnvelope env;
  env.seq = state.next_seq++;
  env.sender = std::move(sender);
  env.receiver = std::move(receiver);
  env.signal = std::move(signal);
  env.args = std::move(args);
  return env;
}

Value Interpreter::eval(const Expr& e, const ActionScope& scope, const InstanceState& self,
                        const SignalEnvelope& env, ScalarType at) const {
  const Value m = mask(at);
  switch (e.kind) {
    case Expr::Kind::Literal:
      return static_cast<Value>(e.literal.value) & m;
    case Expr::Kind::Attr:
      return self.attrs[static_cast<std::size_t>(scope.cls->attribute_index(e.name))];
    case Expr::Kind::Param:
      return env.args[static_cast<std::size_t>(scope.signal->param_index(e.name))];
    case Expr::Kind::Unary: {
      if (e.unary == UnaryOp::Not) {
        return eval(e.operands[0], scope, self, env, ScalarType::Bool) == 0 ? 1u : 0u;
      }
      return (0u - eval(e.operands[0], scope, self, env, at)) & m;
    }
    case Expr::Kind::Binary: {
      const Expr& lhs = e.operands[0];
      const Expr& rhs = e.operands[1];
      if (e.binary == BinaryOp::And) {
        return (eval(lhs, scope, self, env, ScalarType::Bool) != 0 &&
                eval(rhs, scope, self, env, ScalarType::Bool) != 0)
                   ? 1u
                   : 0u;
      }
      if (e.binary == BinaryOp::Or) {
        return (eval(lhs, scope, self, env, ScalarType::Bool) != 0 ||
                eval(rhs, scope, self, env, ScalarType::Bool) != 0)
                   ? 1u
                   : 0u;
      }
      if (is_arithmetic(e.binary)) {
        const Value a = eval(lhs, scope, self, env, at);
        const Value b = eval(rhs, scope, self, env, at);
        switch (e.binary) {
          case BinaryOp::Add: return (a + b) & m;
          case BinaryOp::Sub: return (a - b) & m;
          default: return (a * b) & m;
        }
      }
      const ScalarType w = comparison_width(e, scope);
      const Value a = eval(lhs, scope, self, env, w);
      const Value b = eval(rhs, scope, self, env, w);
      switch (e.binary) {
        case BinaryOp::Eq: return a == b ? 1u : 0u;
        case BinaryOp::Ne: return a != b ? 1u : 0u;
        case BinaryOp::Lt: return a < b ? 1u : 0u;
        case BinaryOp::Le: return a <= b ? 1u : 0u;
        case BinaryOp::Gt: return a > b ? 1u : 0u;
        default: return a >= b ? 1u : 0u;
      }
    }
  }
  return 0;
}

void Interpreter::exec(const std::vector<Stmt>& body, const ActionScope& scope,
                       InstanceState& self, const SignalEnvelope& env, SystemState& state,
                       DispatchResult& out) const {
  for (const auto& s : body) {
    switch (s.kind) {
      case Stmt::Kind::Assign: {
        const int idx = scope.cls->attribute_index(s.target);
        const ScalarType t = scope.cls->attributes[static_cast<std::size_t>(idx)].type;
        const Value v = eval(s.expr, scope, self, env, t) & mask(t);
        self.attrs[static_cast<std::size_t>(idx)] = v;
        out.event.writes.push_back({s.target, v});
        break;
      }
      case Stmt::Kind::Send: {
        const ClassDef* target = model_->class_of(s.target);
        const SignalDef* sig = target->find_signal(s.signal);
        std::vector<Value> args;
        args.reserve(s.args.size());
        for (std::size_t i = 0; i < s.args.size(); ++i) {
          const ScalarType t = sig->params[i].type;
          args.push_back(eval(s.args[i], scope, self, env, t) & mask(t));
        }
        SignalEnvelope sent =
            make_envelope(state, env.receiver, s.target, s.signal, std::move(args));
        out.event.sent.push_back(sent.seq);
        out.sends.push_back(std::move(sent));
        break;
      }
      case Stmt::Kind::If:
        if (eval(s.expr, scope, self, env, ScalarType::Bool) != 0) {
          exec(s.then_body, scope, self, env, state, out);
        } else {
          exec(s.else_body, scope, self, env, state, out);
        }
        break;
    }
  }
}

DispatchResult Interpreter::dispatch(SystemState& state, const SignalEnvelope& env,
                                     ExecMode mode) const {
  DispatchResult out;
  const int idx = model_->instance_index(env.receiver);
  const ClassDef& cls = *classes_[static_cast<std::size_t>(idx)];
  InstanceState& self = state.instances[static_cast<std::size_t>(idx)];
  const StateDef& from = cls.machine.states[static_cast<std::size_t>(self.state)];

  out.event.step = state.dispatch_count;
  out.event.envelope = env;
  out.event.from_state = from.name;

  const TransitionDef* tr = from.find_transition(env.signal);
  if (tr == nullptr) {
    if (mode == ExecMode::Strict) {
      out.kind = DispatchResult::Kind::Unhandled;
      return out;
    }
    out.kind = DispatchResult::Kind::Dropped;
    out.event.to_state = from.name;
    out.event.dropped = true;
    ++state.dispatch_count;
    return out;
  }

  const ActionScope scope{&cls, cls.find_signal(env.signal)};
  exec(tr->actions, scope, self, env, state, out);
  self.state = cls.state_index(tr->target);
  out.event.to_state = tr->target;
  ++state.dispatch_count;
  return out;
}

// ---------------------------------------------------------------------------
// Feed and scheduler

InjectionFeed::InjectionFeed(const Scenario& scenario) {
  order_.reserve(scenario.injections.size());
  for (const auto& inj : scenario.injections) order_.push_back(&inj);
  std::stable_sort(order_.begin(), order_.end(),
                   [](const Injection* a, const Injection* b) { return a->step < b->step; });
}

Scheduler::Scheduler(const ExecConfig& config) : kind_(config.scheduler), rng_(config.seed) {}

// ---------------------------------------------------------------------------
// Runs

SystemState init(const Model& model) { return Interpreter(model).initial_state(); }

void check_expectations(const Model& model, const Scenario& scenario, Trace& trace) {
  trace.expectations.clear();
  for (const auto& e : scenario.expectations) {
    ExpectationResult r;
    r.path = e.instance + "." + e.attribute;
    r.expected = literal_value(e.expected);
    const int inst = model.instance_index(e.instance);
    const ClassDef* cls = model.class_of(e.instance);
    const int attr = cls == nullptr ? -1 : cls->attribute_index(e.attribute);
    if (inst >= 0 && attr >= 0 && static_cast<std::size_t>(inst) < trace.final.instances.size()) {
      r.actual = trace.final.instances[static_cast<std::size_t>(inst)]
                     .attrs[static_cast<std::size_t>(attr)];
      r.pass = r.actual == r.expected;
    }
    trace.expectations.push_back(std::move(r));
  }
}

Trace run(const Model& model, const Scenario& scenario, const ExecConfig& config) {
  Trace trace;
  const Interpreter interp(model);
  SystemState state = interp.initial_state();

  if (auto diags = check_scenario(model, scenario); !diags.empty()) {
    trace.final = std::move(state);
    trace.outcome = Outcome::RuntimeError;
    trace.error_code = "E_SCENARIO_REF";
    trace.detail = diags.front().path + ": " + diags.front().message;
    return trace;
  }

  InjectionFeed feed(scenario);
  Scheduler scheduler(config);
  auto route_injection = [&](const Injection& inj) {
    std::vector<Value> args;
    args.reserve(inj.args.size());
    for (const auto& a : inj.args) args.push_back(literal_value(a));
    SignalEnvelope env = interp.make_envelope(state, kEnvSender, inj.instance, inj.signal, std::move(args));
    state.pending[static_cast<std::size_t>(interp.instance_index(inj.instance))].push_back(
        std::move(env));
  };
  auto any = [](int) { return true; };

  while (true) {
    feed.release_due(state.dispatch_count, route_injection);
    if (!state.has_pending()) {
      if (feed.release_next_batch(route_injection)) continue;
      trace.outcome = Outcome::Quiescent;
      break;
    }
    if (state.dispatch_count >= config.max_steps) {
      trace.outcome = Outcome::StepLimit;
      trace.error_code = "E_STEP_LIMIT";
      trace.detail = "step limit " + std::to_string(config.max_steps) + " reached";
      break;
    }
    const int who = scheduler.select(state, any);
    auto& queue = state.pending[static_cast<std::size_t>(who)];
    SignalEnvelope env = std::move(queue.front());
    queue.pop_front();

    DispatchResult r = interp.dispatch(state, env, config.mode);
    if (r.kind == DispatchResult::Kind::Unhandled) {
      trace.outcome = Outcome::RuntimeError;
      trace.error_code = "E_UNHANDLED";
      trace.detail = "step " + std::to_string(state.dispatch_count) + ": " + env.receiver +
                     " in state " + r.event.from_state + " has no transition on " + env.signal;
      break;
    }
    for (auto& sent : r.sends) {
      state.pending[static_cast<std::size_t>(interp.instance_index(sent.receiver))].push_back(
          std::move(sent));
    }
    trace.events.push_back(std::move(r.event));
  }

  trace.final = std::move(state);
  check_expectations(model, scenario, trace);
  return trace;
}

// ---------------------------------------------------------------------------
// Trace checks

bool check_causality(const Trace& trace) {
  // seq -> (emitting step, emitting instance)
  std::map<std::uint64_t, std::pair<std::uint64_t, const std::string*>> emitted;
  std::set<std::uint64_t> dispatched;
  for (const auto& ev : trace.events) {
    const auto& env = ev.envelope;
    if (!dispatched.insert(env.seq).second) return false;
    if (env.sender != kEnvSender) {
      const auto it = emitted.find(env.seq);
      if (it == emitted.end()) return false;  // not sent by any earlier step
      if (it->second.first >= ev.step) return false;
      if (*it->second.second != env.sender) return false;
    }
    for (const auto s : ev.sent) {
      if (dispatched.count(s) != 0) return false;  // dispatched before being sent
      if (!emitted.emplace(s, std::make_pair(ev.step, &env.receiver)).second) return false;
    }
  }
  return true;
}

bool check_pair_fifo(const Trace& trace) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> last;
  for (const auto& ev : trace.events) {
    const auto key = std::make_pair(ev.envelope.sender, ev.envelope.receiver);
    const auto it = last.find(key);
    if (it != last.end() && ev.envelope.seq <= it->second) return false;
    last[key] = ev.envelope.seq;
  }
  return true;
}

std::vector<std::vector<Value>> final_valuation(const Trace& trace) {
  std::vector<std::vector<Value>> out;
  out.reserve(trace.final.instances.size());
  for (const auto& inst : trace.final.instances) out.push_back(inst.attrs);
  return out;
}

}  // namespace smc
