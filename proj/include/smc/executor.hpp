#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "smc/ir.hpp"
#include "smc/scenario.hpp"

namespace smc {

/// Sender name reserved for scenario injections.
inline constexpr const char* kEnvSender = "$env";

struct SignalEnvelope {
  std::uint64_t seq = 0;  // global send order, unique per run
  std::string sender;     // instance name or kEnvSender
  std::string receiver;
  std::string signal;
  std::vector<Value> args;

  friend bool operator==(const SignalEnvelope&, const SignalEnvelope&) = default;
};

struct InstanceState {
  int state = 0;              // index into the class's machine states
  std::vector<Value> attrs;   // declaration order

  friend bool operator==(const InstanceState&, const InstanceState&) = default;
};

struct SystemState {
  std::vector<InstanceState> instances;        // model instance order
  std::vector<std::deque<SignalEnvelope>> pending;  // one FIFO per receiver instance
  std::uint64_t next_seq = 0;
  std::uint64_t dispatch_count = 0;

  [[nodiscard]] bool has_pending() const noexcept;

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

enum class SchedulerKind : std::uint8_t { GlobalFifo, Random };
enum class ExecMode : std::uint8_t { Strict, Lenient };

struct ExecConfig {
  SchedulerKind scheduler = SchedulerKind::GlobalFifo;
  std::uint64_t seed = 0;  // Random only
  ExecMode mode = ExecMode::Strict;
  std::uint64_t max_steps = 10000;

  static ExecConfig random(std::uint64_t seed) {
    ExecConfig c;
    c.scheduler = SchedulerKind::Random;
    c.seed = seed;
    return c;
  }
};

struct AttrWrite {
  std::string attr;
  Value value = 0;

  friend bool operator==(const AttrWrite&, const AttrWrite&) = default;
};

/// One run-to-completion step.
struct TraceEvent {
  std::uint64_t step = 0;
  SignalEnvelope envelope;
  std::string from_state;
  std::string to_state;
  std::vector<AttrWrite> writes;
  std::vector<std::uint64_t> sent;  // seq numbers emitted during the step
  bool dropped = false;             // lenient mode, no transition

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

enum class Outcome : std::uint8_t { Quiescent, StepLimit, RuntimeError };

struct ExpectationResult {
  std::string path;  // instance.attribute
  Value expected = 0;
  Value actual = 0;
  bool pass = false;

  friend bool operator==(const ExpectationResult&, const ExpectationResult&) = default;
};

struct Trace {
  std::vector<TraceEvent> events;
  SystemState final;
  Outcome outcome = Outcome::Quiescent;
  /// Error code and message for RuntimeError (E_UNHANDLED, E_SCENARIO_REF), else empty.
  std::string error_code;
  std::string detail;
  std::vector<ExpectationResult> expectations;

  [[nodiscard]] bool expectations_pass() const noexcept;
  /// Quiescent with every expectation met.
  [[nodiscard]] bool passed() const noexcept;

  friend bool operator==(const Trace&, const Trace&) = default;
};

[[nodiscard]] std::string_view outcome_name(Outcome o) noexcept;

// ---------------------------------------------------------------------------
// Interpreter core, shared by `run` and the partitioned co-simulation.

/// Result of dispatching one envelope.
struct DispatchResult {
  enum class Kind : std::uint8_t { Handled, Dropped, Unhandled };
  Kind kind = Kind::Handled;
  TraceEvent event;
  /// Envelopes emitted by the step's actions, seq already assigned, not yet routed.
  std::vector<SignalEnvelope> sends;
};

/// Executes actions of a validated model against a SystemState. Holds lookup
/// tables only; all mutable state lives in the SystemState passed in.
class Interpreter {
 public:
  explicit Interpreter(const Model& model);

  [[nodiscard]] const Model& model() const noexcept { return *model_; }
  [[nodiscard]] SystemState initial_state() const;

  [[nodiscard]] int instance_index(std::string_view name) const { return model_->instance_index(name); }
  [[nodiscard]] const ClassDef& class_of(int instance) const {
    return *classes_[static_cast<std::size_t>(instance)];
  }

  /// Creates an envelope with the next seq number.
  SignalEnvelope make_envelope(SystemState& state, std::string sender, std::string receiver,
                               std::string signal, std::vector<Value> args) const;

  /// Runs one RTC step for `env` on its receiver. Increments dispatch_count
  /// unless the signal is unhandled in strict mode.
  DispatchResult dispatch(SystemState& state, const SignalEnvelope& env, ExecMode mode) const;

  /// Evaluates at a numeric width, wrapping modulo 2^width.
  [[nodiscard]] Value eval(const Expr& e, const ActionScope& scope, const InstanceState& self,
                           const SignalEnvelope& env, ScalarType at) const;

 private:
  void exec(const std::vector<Stmt>& body, const ActionScope& scope, InstanceState& self,
            const SignalEnvelope& env, SystemState& state, DispatchResult& out) const;

  const Model* model_;
  std::vector<const ClassDef*> classes_;  // per instance
};

/// Converts a scenario literal to its runtime value.
[[nodiscard]] Value literal_value(const Literal& l) noexcept;

/// Injections grouped by step; feeds `$env` envelopes into a run.
class InjectionFeed {
 public:
  explicit InjectionFeed(const Scenario& scenario);

  /// Enqueues every injection with at-step <= `step`, in file order.
  template <class Route>
  void release_due(std::uint64_t step, Route&& route) {
    while (next_ < order_.size() && order_[next_]->step <= step) route(*order_[next_++]);
  }

  /// At quiescence: enqueues the next batch (all injections at the smallest remaining step).
  template <class Route>
  bool release_next_batch(Route&& route) {
    if (next_ >= order_.size()) return false;
    release_due(order_[next_]->step, route);
    return true;
  }

  [[nodiscard]] bool exhausted() const noexcept { return next_ >= order_.size(); }

 private:
  std::vector<const Injection*> order_;
  std::size_t next_ = 0;
};

/// Picks the next receiver among candidate instances with nonempty queues.
class Scheduler {
 public:
  explicit Scheduler(const ExecConfig& config);

  /// Instance index whose queue front is dispatched next, or -1 when no
  /// candidate has pending envelopes. `candidate(i)` filters instances.
  template <class Pred>
  int select(const SystemState& state, Pred&& candidate) {
    if (kind_ == SchedulerKind::GlobalFifo) {
      int best = -1;
      for (std::size_t i = 0; i < state.pending.size(); ++i) {
        if (state.pending[i].empty() || !candidate(static_cast<int>(i))) continue;
        if (best < 0 ||
            state.pending[i].front().seq < state.pending[static_cast<std::size_t>(best)].front().seq) {
          best = static_cast<int>(i);
        }
      }
      return best;
    }
    ready_.clear();
    for (std::size_t i = 0; i < state.pending.size(); ++i) {
      if (!state.pending[i].empty() && candidate(static_cast<int>(i))) {
        ready_.push_back(static_cast<int>(i));
      }
    }
    if (ready_.empty()) return -1;
    return ready_[static_cast<std::size_t>(rng_() % ready_.size())];
  }

 private:
  SchedulerKind kind_;
  std::mt19937_64 rng_;
  std::vector<int> ready_;
};

[[nodiscard]] SystemState init(const Model& model);

/// Executes a validated model against a scenario under run-to-completion semantics.
[[nodiscard]] Trace run(const Model& model, const Scenario& scenario, const ExecConfig& config = {});

/// Fills `trace.expectations` from the final state.
void check_expectations(const Model& model, const Scenario& scenario, Trace& trace);

/// Every dispatched seq was emitted by a strictly earlier step (or injected by
/// the environment), by the instance named as its sender, and dispatched once.
[[nodiscard]] bool check_causality(const Trace& trace);

/// For every (sender, receiver) pair, envelopes are dispatched in ascending seq.
[[nodiscard]] bool check_pair_fifo(const Trace& trace);

/// Final attribute valuation, instance order then attribute order.
[[nodiscard]] std::vector<std::vector<Value>> final_valuation(const Trace& trace);

}  // namespace smc
