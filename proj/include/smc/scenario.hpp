#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smc/ir.hpp"

namespace smc {

/// An external signal enqueued from `$env` before dispatch step `step`.
struct Injection {
  std::uint64_t step = 0;
  std::string instance;
  std::string signal;
  std::vector<Literal> args;

  friend bool operator==(const Injection&, const Injection&) = default;
};

/// `expect instance.attr == value;`
struct Expectation {
  std::string instance;
  std::string attribute;
  Literal expected;

  friend bool operator==(const Expectation&, const Expectation&) = default;
};

/// A formal test case run against a model.
struct Scenario {
  std::vector<Injection> injections;    // file order
  std::vector<Expectation> expectations;
  /// Final valuation claimed independent of legal scheduling order.
  bool confluent = false;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

[[nodiscard]] std::string print_scenario(const Scenario& scenario);

/// Resolves every instance, signal, attribute and literal the scenario names.
/// Problems are reported as E_SCENARIO_REF.
[[nodiscard]] std::vector<Diagnostic> check_scenario(const Model& model, const Scenario& scenario);

}  // namespace smc
