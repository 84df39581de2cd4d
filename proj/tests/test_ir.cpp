#include <doctest.h>

#include <algorithm>

#include "smc/ir.hpp"
#include "support.hpp"

using namespace smc;
using smc::test::model_from;

namespace {

std::vector<std::string> codes(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.code);
  return out;
}

/// A one-class model whose single transition runs `body`.
Model with_body(const std::string& decls, const std::string& body) {
  return model_from("class C { " + decls + " signal S(p: u8, q: bool);"
                    " statemachine { initial A; state A { on S -> A { " + body + " } } } }"
                    " instance c: C;");
}

}  // namespace

TEST_CASE("scalar widths and masks") {
  CHECK(width(ScalarType::Bool) == 1);
  CHECK(width(ScalarType::U8) == 8);
  CHECK(width(ScalarType::U16) == 16);
  CHECK(width(ScalarType::U32) == 32);
  CHECK(mask(ScalarType::U8) == 0xFFu);
  CHECK(mask(ScalarType::U32) == 0xFFFFFFFFu);
  CHECK(Literal::integer(255).fits(ScalarType::U8));
  CHECK_FALSE(Literal::integer(256).fits(ScalarType::U8));
  CHECK_FALSE(Literal::boolean(true).fits(ScalarType::U8));
  CHECK(Literal::boolean(false).fits(ScalarType::Bool));
}

TEST_CASE("PingPong validates without diagnostics") {
  const auto r = validate(model_from(smc::test::kPingPong));
  CHECK(r.ok());
  CHECK(r.diagnostics.empty());
}

TEST_CASE("duplicate class is one E_DUP_CLASS at the class path") {
  const auto r = validate(model_from(
      "class Ping { statemachine { initial A; state A {} } }"
      "class Ping { statemachine { initial A; state A {} } }"));
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].code == "E_DUP_CLASS");
  CHECK(r.diagnostics[0].path == "Ping");
  CHECK(r.diagnostics[0].severity == Severity::Error);
}

TEST_CASE("undeclared transition signal is E_UNKNOWN_SIGNAL") {
  const auto r = validate(model_from(
      "class C { statemachine { initial Waiting; state Waiting { on Foo -> Waiting {} } } }"));
  CHECK(codes(r) == std::vector<std::string>{"E_UNKNOWN_SIGNAL"});
}

TEST_CASE("each invariant has its diagnostic code") {
  SUBCASE("unknown target state") {
    const auto r = validate(model_from(
        "class C { signal S(); statemachine { initial A; state A { on S -> B {} } } }"));
    CHECK(codes(r) == std::vector<std::string>{"E_UNKNOWN_STATE"});
  }
  SUBCASE("unknown initial state") {
    const auto r = validate(model_from("class C { statemachine { initial B; state A {} } }"));
    CHECK(codes(r) == std::vector<std::string>{"E_UNKNOWN_STATE"});
  }
  SUBCASE("duplicate transition") {
    const auto r = validate(model_from(
        "class C { signal S(); statemachine { initial A; state A { on S -> A {} on S -> A {} } } }"));
    CHECK(codes(r) == std::vector<std::string>{"E_DUP_TRANSITION"});
  }
  SUBCASE("bad default") {
    const auto r = validate(model_from("class C { attr a: u8 = 256; statemachine { initial A; state A {} } }"));
    CHECK(codes(r) == std::vector<std::string>{"E_BAD_DEFAULT"});
  }
  SUBCASE("bool default on integer attribute") {
    const auto r = validate(model_from("class C { attr a: u8 = true; statemachine { initial A; state A {} } }"));
    CHECK(codes(r) == std::vector<std::string>{"E_BAD_DEFAULT"});
  }
  SUBCASE("unknown attribute") {
    CHECK(codes(validate(with_body("", "x = 1;"))) == std::vector<std::string>{"E_UNKNOWN_ATTR"});
  }
  SUBCASE("unknown parameter") {
    CHECK(codes(validate(with_body("attr a: u8;", "a = $nope;"))) ==
          std::vector<std::string>{"E_UNKNOWN_PARAM"});
  }
  SUBCASE("unknown instance") {
    CHECK(codes(validate(with_body("", "send nobody.S(1, true);"))) ==
          std::vector<std::string>{"E_UNKNOWN_INSTANCE"});
  }
  SUBCASE("unknown signal on send target") {
    CHECK(codes(validate(with_body("", "send c.Nope();"))) ==
          std::vector<std::string>{"E_UNKNOWN_SIGNAL"});
  }
  SUBCASE("arity") {
    CHECK(codes(validate(with_body("", "send c.S(1);"))) == std::vector<std::string>{"E_ARITY"});
  }
  SUBCASE("type mismatch in assignment") {
    CHECK(codes(validate(with_body("attr a: u8;", "a = $q;"))) ==
          std::vector<std::string>{"E_TYPE_MISMATCH"});
  }
  SUBCASE("mixed widths in arithmetic") {
    CHECK(codes(validate(with_body("attr a: u8; attr b: u16;", "a = a + b;"))) ==
          std::vector<std::string>{"E_TYPE_MISMATCH"});
  }
  SUBCASE("non-bool condition") {
    CHECK(codes(validate(with_body("attr a: u8;", "if (a) { a = 1; }"))) ==
          std::vector<std::string>{"E_TYPE_MISMATCH"});
  }
  SUBCASE("logical operator on integers") {
    CHECK(codes(validate(with_body("attr a: bool;", "a = $p && $q;"))) ==
          std::vector<std::string>{"E_TYPE_MISMATCH"});
  }
  SUBCASE("literal too wide for its context") {
    CHECK(codes(validate(with_body("attr a: u8;", "a = a + 300;"))) ==
          std::vector<std::string>{"E_TYPE_MISMATCH"});
  }
  SUBCASE("argument type mismatch") {
    CHECK(codes(validate(with_body("", "send c.S(true, 1);"))) ==
          std::vector<std::string>{"E_TYPE_MISMATCH", "E_TYPE_MISMATCH"});
  }
  SUBCASE("well-typed body") {
    CHECK(validate(with_body("attr a: u8; attr f: bool;",
                             "a = -(a * 2) + $p; f = !f || a >= 3 && $q; send c.S(a, f == $q);"))
              .diagnostics.empty());
  }
  SUBCASE("instance of unknown class") {
    CHECK(codes(validate(model_from("instance x: Missing;"))) ==
          std::vector<std::string>{"E_UNKNOWN_CLASS"});
  }
}

TEST_CASE("diagnostics come in document order and validate is pure") {
  const Model m = model_from(
      "class A { signal S(); statemachine { initial X; state X { on T -> Y {} } } }"
      "class B { attr v: u8 = 999; statemachine { initial Z; state Z {} } }"
      "instance a: A; instance a: B;");
  const auto r1 = validate(m);
  const auto r2 = validate(m);
  CHECK(r1 == r2);
  CHECK(codes(r1) == std::vector<std::string>{"E_UNKNOWN_SIGNAL", "E_UNKNOWN_STATE",
                                              "E_BAD_DEFAULT", "E_DUP_INSTANCE"});
}

TEST_CASE("resolve finds unique elements") {
  const Model m = model_from(smc::test::kPingPong);
  const auto pong = resolve(m, ElementPath::parse("Pong"));
  CHECK(pong.kind == ElementKind::Class);
  CHECK(pong.class_index == 1);
  const auto hit = resolve(m, ElementPath::parse("Pong.Hit"));
  CHECK(hit.kind == ElementKind::Signal);
  CHECK(hit.class_index == 1);
  CHECK(hit.member_index == 0);
  CHECK(resolve(m, ElementPath::parse("Ping.hits")).kind == ElementKind::Attribute);
  CHECK(resolve(m, ElementPath::parse("Ping.Waiting")).kind == ElementKind::State);
  CHECK(resolve(m, ElementPath::parse("pong")).kind == ElementKind::Instance);
  CHECK_FALSE(resolve(m, ElementPath::parse("Nope")).found());
  CHECK_FALSE(resolve(m, ElementPath::parse("Pong.Nope")).found());
  CHECK_FALSE(resolve(m, ElementPath::parse("Pong.Hit.x")).found());
}

TEST_CASE("resolve refuses ambiguous member names") {
  const Model m = model_from(
      "class C { attr Go: u8; signal Go(); statemachine { initial A; state A {} } }");
  const auto r = resolve(m, ElementPath::parse("C.Go"));
  CHECK_FALSE(r.found());
  CHECK(r.ambiguous);
}

TEST_CASE("integer literals take their context width") {
  const Model m = with_body("attr a: u8; attr w: u32;", "a = 1;");
  const ClassDef& c = m.classes[0];
  const ActionScope scope{&c, &c.signals[0]};
  const Expr lit = Expr::lit(Literal::integer(7));
  CHECK(infer_type(lit, scope) == TypeTag::IntLit);
  CHECK(infer_type(Expr::make_binary(BinaryOp::Add, Expr::attr("a"), lit), scope) == TypeTag::U8);
  CHECK(infer_type(Expr::make_binary(BinaryOp::Lt, lit, Expr::attr("w")), scope) == TypeTag::Bool);
  CHECK(comparison_width(Expr::make_binary(BinaryOp::Lt, lit, Expr::attr("w")), scope) ==
        ScalarType::U32);
  CHECK(comparison_width(Expr::make_binary(BinaryOp::Eq, lit, lit), scope) == ScalarType::U32);
  CHECK(infer_type(Expr::make_binary(BinaryOp::Add, Expr::attr("a"), Expr::attr("w")), scope) ==
        TypeTag::Error);
}

TEST_CASE("pretty_print is canonical") {
  const Model m = with_body("attr a: u8;", "a = (a + 1) * 2 - (a - (3 - $p));");
  const std::string text = pretty_print(m);
  CHECK(text.find("a = (a + 1) * 2 - (a - (3 - $p));") != std::string::npos);
  CHECK(text.find("attr a: u8 = 0;") != std::string::npos);
  CHECK(pretty_print(model_from(text)) == text);
}
