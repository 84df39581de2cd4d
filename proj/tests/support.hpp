#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "smc/frontend.hpp"

namespace smc::test {

inline std::string corpus(const std::string& rel) { return std::string(SMC_CORPUS_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Model model_from(const std::string& text) {
  auto r = parse_model(text);
  if (!r.ok()) throw std::runtime_error(r.error().to_string());
  return std::move(r).value();
}

inline Model corpus_model(const std::string& name) {
  return model_from(slurp(corpus("models/" + name + ".mdl")));
}

inline Scenario scenario_from(const std::string& text) {
  auto r = parse_scenario(text);
  if (!r.ok()) throw std::runtime_error(r.error().to_string());
  return std::move(r).value();
}

inline Scenario corpus_scenario(const std::string& name) {
  return scenario_from(slurp(corpus("scenarios/" + name + ".scn")));
}

inline MarkSet marks_from(const std::string& text) {
  auto r = parse_marks(text);
  if (!r.ok()) throw std::runtime_error(r.error().to_string());
  return std::move(r).value();
}

inline const std::string kPingPong = R"(
class Ping { attr hits: u32 = 0; signal Hit();
  statemachine { initial Waiting;
    state Waiting { on Hit -> Waiting { hits = hits + 1; send pong.Hit(); } } } }
class Pong { attr hits: u32 = 0; signal Hit();
  statemachine { initial Waiting;
    state Waiting { on Hit -> Waiting { hits = hits + 1; } } } }
instance ping: Ping;
instance pong: Pong;
)";

/// Corpus models paired with their scenarios.
struct CorpusPair {
  const char* model;
  const char* scenario;
};

inline constexpr CorpusPair kCorpusPairs[] = {
    {"pingpong", "pingpong"},         {"pingpong", "pingpong_burst"},
    {"counter", "counter_start3"},    {"counter", "counter_two_starts"},
    {"race", "race_both"},            {"race", "race_repeat"},
    {"widths", "widths_wrap"},        {"widths", "widths_negate"},
    {"chain", "chain_single"},        {"chain", "chain_twice"},
};

inline constexpr const char* kCorpusModels[] = {"pingpong", "counter", "race", "widths", "chain"};

}  // namespace smc::test
