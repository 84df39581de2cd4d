#pragma once

#include <string>

#include <json.hpp>

#include "smc/executor.hpp"

namespace smc {

/// Trace event object with keys step, seq, sender, receiver, signal, args, from,
/// to, writes, sent, dropped, in that order. Booleans are written as 0/1 in
/// args and writes so every value is a decimal integer.
[[nodiscard]] nlohmann::ordered_json event_json(const TraceEvent& ev);

/// Closing object with keys outcome, final, expectations.
[[nodiscard]] nlohmann::ordered_json summary_json(const Model& model, const Trace& trace);

/// `quiescent`, `step-limit`, or `runtime-error(CODE: detail)`.
[[nodiscard]] std::string outcome_text(const Trace& trace);

/// JSON Lines: one line per event, then the summary line.
[[nodiscard]] std::string to_jsonl(const Model& model, const Trace& trace);

}  // namespace smc
