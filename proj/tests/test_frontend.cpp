#include <doctest.h>

#include <algorithm>
#include <random>

#include "../src/lexer.hpp"
#include "smc/frontend.hpp"
#include "support.hpp"

using namespace smc;
using smc::test::corpus;
using smc::test::slurp;

TEST_CASE("empty model input") {
  auto r = parse_model("");
  REQUIRE(r.ok());
  CHECK(r.value().classes.empty());
  CHECK(r.value().instances.empty());
}

TEST_CASE("PingPong parses into the expected structure") {
  auto r = parse_model(smc::test::kPingPong);
  REQUIRE(r.ok());
  const Model& m = r.value();
  REQUIRE(m.classes.size() == 2);
  CHECK(m.classes[0].name == "Ping");
  CHECK(m.classes[1].name == "Pong");
  REQUIRE(m.instances.size() == 2);
  CHECK(m.instances[0].name == "ping");
  CHECK(m.instances[1].name == "pong");
  const auto& waiting = m.classes[0].machine.states.at(0);
  REQUIRE(waiting.transitions.size() == 1);
  CHECK(waiting.transitions[0].actions.size() == 2);
  CHECK(waiting.transitions[0].actions[0].kind == Stmt::Kind::Assign);
  CHECK(waiting.transitions[0].actions[1].kind == Stmt::Kind::Send);
}

TEST_CASE("corpus pingpong file equals the inline PingPong text") {
  CHECK(smc::test::corpus_model("pingpong") == smc::test::model_from(smc::test::kPingPong));
}

TEST_CASE("'class {' expects an identifier on line 1") {
  auto r = parse_model("class {", "m.mdl");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().loc.line == 1);
  CHECK(r.error().loc.column == 7);
  CHECK(r.error().expected == "identifier");
  CHECK(r.error().found == "'{'");
  CHECK(r.error().code == "E_PARSE");
  CHECK(r.error().to_string() == "m.mdl:1:7: E_PARSE expected identifier, found '{'");
}

TEST_CASE("parse errors point at the offending token") {
  auto r = parse_model("class C {\n  attr x: u9;\n}");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().loc.line == 2);
  CHECK(r.error().loc.column == 11);

  auto eof = parse_model("class C { statemachine { initial A; state A {");
  REQUIRE_FALSE(eof.ok());
  CHECK(eof.error().found == "end of input");
}

TEST_CASE("keywords are reserved in the model DSL") {
  CHECK_FALSE(parse_model("class send { statemachine { initial A; state A {} } }").ok());
  CHECK_FALSE(parse_model("class C { attr true: bool; statemachine { initial A; state A {} } }").ok());
}

TEST_CASE("a class needs exactly one state machine") {
  CHECK_FALSE(parse_model("class C { attr a: u8; }").ok());
  CHECK_FALSE(parse_model("class C { statemachine { initial A; state A {} }"
                          " statemachine { initial A; state A {} } }")
                  .ok());
}

TEST_CASE("comments and defaults") {
  auto r = parse_model("// leading\nclass C { attr f: bool; attr n: u16 = 7; // trailing\n"
                       "statemachine { initial A; state A {} } }");
  REQUIRE(r.ok());
  CHECK(r.value().classes[0].attributes[0].initial == Literal::boolean(false));
  CHECK(r.value().classes[0].attributes[1].initial == Literal::integer(7));
}

TEST_CASE("operator precedence follows the grammar") {
  auto r = parse_model(
      "class C { attr a: u8; attr f: bool; signal S(); statemachine { initial A; state A {"
      " on S -> A { f = a + 1 * 2 == 3 || !f && a < 2; } } } }");
  REQUIRE(r.ok());
  const Expr& e = r.value().classes[0].machine.states[0].transitions[0].actions[0].expr;
  REQUIRE(e.kind == Expr::Kind::Binary);
  CHECK(e.binary == BinaryOp::Or);
  CHECK(e.operands[0].binary == BinaryOp::Eq);
  CHECK(e.operands[0].operands[0].binary == BinaryOp::Add);
  CHECK(e.operands[0].operands[0].operands[1].binary == BinaryOp::Mul);
  CHECK(e.operands[1].binary == BinaryOp::And);
  CHECK(e.operands[1].operands[0].kind == Expr::Kind::Unary);
  CHECK(print_expr(e) == "a + 1 * 2 == 3 || !f && a < 2");
}

TEST_CASE("marks DSL") {
  SUBCASE("single mark defaults to true") {
    auto r = parse_marks("mark isHardware on Pong;");
    REQUIRE(r.ok());
    REQUIRE(r.value().marks.size() == 1);
    CHECK(r.value().marks[0].key == "isHardware");
    CHECK(r.value().marks[0].value == Literal::boolean(true));
    CHECK(r.value().marks[0].path.to_string() == "Pong");
  }
  SUBCASE("empty input") {
    auto r = parse_marks("");
    REQUIRE(r.ok());
    CHECK(r.value().marks.empty());
  }
  SUBCASE("duplicate mark") {
    auto r = parse_marks("mark isHardware on Pong; mark isHardware on Pong;");
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().code == "E_DUP_MARK");
    CHECK(r.error().loc.column == 26);
  }
  SUBCASE("explicit values and dotted paths") {
    auto r = parse_marks("mark isHardware = false on Pong;\nmark budget = 12 on Pong.Hit;\n");
    REQUIRE(r.ok());
    CHECK(r.value().marks[0].value == Literal::boolean(false));
    CHECK(r.value().marks[1].value == Literal::integer(12));
    CHECK(r.value().marks[1].path.segments == std::vector<std::string>{"Pong", "Hit"});
    CHECK(print_marks(r.value()) == "mark isHardware = false on Pong;\nmark budget = 12 on Pong.Hit;\n");
  }
  SUBCASE("marks keywords are contextual") {
    auto r = parse_marks("mark on on mark;");
    REQUIRE(r.ok());
    CHECK(r.value().marks[0].key == "on");
  }
}

TEST_CASE("scenario DSL") {
  SUBCASE("injection") {
    auto r = parse_scenario("at 0 send ping.Hit();");
    REQUIRE(r.ok());
    REQUIRE(r.value().injections.size() == 1);
    CHECK(r.value().injections[0].step == 0);
    CHECK(r.value().injections[0].instance == "ping");
    CHECK(r.value().injections[0].signal == "Hit");
    CHECK_FALSE(r.value().confluent);
  }
  SUBCASE("expectation") {
    auto r = parse_scenario("expect pong.hits == 1;");
    REQUIRE(r.ok());
    REQUIRE(r.value().expectations.size() == 1);
    CHECK(r.value().expectations[0].expected == Literal::integer(1));
  }
  SUBCASE("negative step") {
    auto r = parse_scenario("at -1 send ping.Hit();");
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().loc.column == 4);
    CHECK(r.error().expected == "nonnegative integer");
  }
  SUBCASE("arguments and confluent flag") {
    auto r = parse_scenario("confluent;\nat 3 send s.Fire(true, 10, 4294967295);\n");
    REQUIRE(r.ok());
    CHECK(r.value().confluent);
    CHECK(r.value().injections[0].args ==
          std::vector<Literal>{Literal::boolean(true), Literal::integer(10),
                               Literal::integer(4294967295u)});
    CHECK(print_scenario(r.value()) == "confluent;\nat 3 send s.Fire(true, 10, 4294967295);\n");
  }
}

TEST_CASE("round trip over the corpus") {
  for (const char* name : smc::test::kCorpusModels) {
    CAPTURE(name);
    const Model m = smc::test::corpus_model(name);
    CHECK(validate(m).ok());
    const std::string printed = pretty_print(m);
    auto again = parse_model(printed);
    REQUIRE(again.ok());
    CHECK(again.value() == m);
    CHECK(pretty_print(again.value()) == printed);
  }
  for (const auto& pair : smc::test::kCorpusPairs) {
    const Scenario s = smc::test::corpus_scenario(pair.scenario);
    CHECK(smc::test::scenario_from(print_scenario(s)) == s);
  }
}

namespace {

struct Corruption {
  std::size_t offset;  // byte offset of the corrupted token
  std::size_t bound;   // byte offset of the first ';' at or after the token
};

std::size_t offset_of(const std::string& text, int line, int column) {
  std::size_t off = 0;
  for (int l = 1; l < line; ++l) off = text.find('\n', off) + 1;
  return off + static_cast<std::size_t>(column - 1);
}

}  // namespace

TEST_CASE("location fidelity under single-token corruption") {
  const std::string replacements[] = {"", "@", ";", "{", "}", "(", "class", "42"};
  std::mt19937_64 rng(7);
  int corrupted = 0;
  int rejected = 0;
  for (const char* name : smc::test::kCorpusModels) {
    const std::string text = slurp(corpus(std::string("models/") + name + ".mdl"));
    const auto tokens = detail::tokenize(text);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      const auto& tok = tokens[i];
      const std::size_t start = offset_of(text, tok.line, tok.column);
      const std::string& rep = replacements[rng() % std::size(replacements)];
      std::string bad = text;
      bad.replace(start, tok.text.size(), rep);
      ++corrupted;
      auto r = parse_model(bad);
      if (r.ok()) continue;  // the corruption still forms a valid program
      ++rejected;
      const std::size_t semi = bad.find(';', start + rep.size());
      const std::size_t bound = semi == std::string::npos ? bad.size() : semi;
      const std::size_t at = offset_of(bad, r.error().loc.line, r.error().loc.column);
      CAPTURE(name);
      CAPTURE(tok.text);
      CAPTURE(rep);
      CAPTURE(r.error().to_string());
      CHECK(at <= bound);
    }
  }
  CHECK(corrupted > 500);
  CHECK(rejected > corrupted / 2);
}
