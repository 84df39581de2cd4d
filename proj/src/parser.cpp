#include <array>
#include <set>
#include <utility>

#include "lexer.hpp"
#include "smc/frontend.hpp"

namespace smc {

std::string ParseError::to_string() const {
  return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
         code + " expected " + expected + ", found " + found;
}

namespace {

using detail::Token;
using detail::TokenKind;

constexpr std::array<std::string_view, 17> kModelKeywords = {
    "class", "attr", "signal", "statemachine", "initial", "state", "on", "send", "if",
    "else",  "instance", "bool", "u8", "u16", "u32", "true", "false"};

bool is_model_keyword(std::string_view s) {
  for (auto k : kModelKeywords) {
    if (k == s) return true;
  }
  return false;
}

/// Thrown inside the parsers and turned into a ParseError at the entry points.
struct Failure {
  ParseError error;
};

class Cursor {
 public:
  Cursor(std::string_view text, std::string_view file)
      : tokens_(detail::tokenize(text)), file_(file) {}

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  [[nodiscard]] bool at_end() const { return peek().kind == TokenKind::End; }

  [[nodiscard]] bool is_punct(std::string_view p) const {
    return peek().kind == TokenKind::Punct && peek().text == p;
  }
  [[nodiscard]] bool is_word(std::string_view w) const {
    return peek().kind == TokenKind::Ident && peek().text == w;
  }

  Token next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::string expected) const { fail_at(peek(), std::move(expected)); }

  [[noreturn]] void fail_at(const Token& t, std::string expected, std::string code = "E_PARSE") const {
    throw Failure{ParseError{SourceLoc{file_, t.line, t.column}, std::move(expected),
                             detail::describe(t), std::move(code)}};
  }

  void punct(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    next();
  }

  void word(std::string_view w) {
    if (!is_word(w)) fail("'" + std::string(w) + "'");
    next();
  }

  /// Any identifier; keywords are rejected when `reserve_keywords` is set.
  std::string ident(bool reserve_keywords) {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident || (reserve_keywords && is_model_keyword(t.text))) {
      fail("identifier");
    }
    return next().text;
  }

  std::uint64_t integer() {
    if (peek().kind != TokenKind::Int) fail("nonnegative integer");
    return next().value;
  }

  /// INT | true | false
  Literal literal() {
    if (peek().kind == TokenKind::Int) return Literal::integer(next().value);
    if (is_word("true")) {
      next();
      return Literal::boolean(true);
    }
    if (is_word("false")) {
      next();
      return Literal::boolean(false);
    }
    fail("literal");
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string file_;
};

// ---------------------------------------------------------------------------
// Model DSL

class ModelParser {
 public:
  ModelParser(std::string_view text, std::string_view file) : cur_(text, file) {}

  Model parse() {
    Model m;
    while (!cur_.at_end()) {
      if (cur_.is_word("class")) {
        m.classes.push_back(class_def());
      } else if (cur_.is_word("instance")) {
        m.instances.push_back(instance_decl());
      } else {
        cur_.fail("'class' or 'instance'");
      }
    }
    return m;
  }

 private:
  std::string ident() { return cur_.ident(true); }

  ScalarType type() {
    if (cur_.peek().kind == TokenKind::Ident) {
      if (auto t = parse_type_name(cur_.peek().text)) {
        cur_.next();
        return *t;
      }
    }
    cur_.fail("type (bool, u8, u16, u32)");
  }

  ClassDef class_def() {
    cur_.word("class");
    ClassDef c;
    c.name = ident();
    cur_.punct("{");
    bool have_machine = false;
    while (!cur_.is_punct("}")) {
      if (cur_.is_word("attr")) {
        c.attributes.push_back(attr_def());
      } else if (cur_.is_word("signal")) {
        c.signals.push_back(signal_def());
      } else if (cur_.is_word("statemachine")) {
        if (have_machine) cur_.fail("'}' (a class has exactly one statemachine)");
        c.machine = sm_def();
        have_machine = true;
      } else {
        cur_.fail("'attr', 'signal', 'statemachine' or '}'");
      }
    }
    if (!have_machine) cur_.fail("'statemachine' (every class needs one)");
    cur_.punct("}");
    return c;
  }

  AttributeDef attr_def() {
    cur_.word("attr");
    AttributeDef a;
    a.name = ident();
    cur_.punct(":");
    a.type = type();
    if (cur_.is_punct("=")) {
      cur_.next();
      a.initial = cur_.literal();
    } else {
      a.initial = a.type == ScalarType::Bool ? Literal::boolean(false) : Literal::integer(0);
    }
    cur_.punct(";");
    return a;
  }

  SignalDef signal_def() {
    cur_.word("signal");
    SignalDef s;
    s.name = ident();
    cur_.punct("(");
    if (!cur_.is_punct(")")) {
      while (true) {
        ParamDef p;
        p.name = ident();
        cur_.punct(":");
        p.type = type();
        s.params.push_back(std::move(p));
        if (!cur_.is_punct(",")) break;
        cur_.next();
      }
    }
    cur_.punct(")");
    cur_.punct(";");
    return s;
  }

  StateMachineDef sm_def() {
    cur_.word("statemachine");
    cur_.punct("{");
    StateMachineDef sm;
    cur_.word("initial");
    sm.initial = ident();
    cur_.punct(";");
    while (cur_.is_word("state")) sm.states.push_back(state_def());
    cur_.punct("}");
    return sm;
  }

  StateDef state_def() {
    cur_.word("state");
    StateDef st;
    st.name = ident();
    cur_.punct("{");
    while (cur_.is_word("on")) st.transitions.push_back(transition());
    cur_.punct("}");
    return st;
  }

  TransitionDef transition() {
    cur_.word("on");
    TransitionDef t;
    t.signal = ident();
    cur_.punct("->");
    t.target = ident();
    t.actions = block();
    return t;
  }

  std::vector<Stmt> block() {
    cur_.punct("{");
    std::vector<Stmt> body;
    while (!cur_.is_punct("}")) body.push_back(stmt());
    cur_.next();
    return body;
  }

  Stmt stmt() {
    if (cur_.is_word("send")) {
      cur_.next();
      std::string inst = ident();
      cur_.punct(".");
      std::string sig = ident();
      cur_.punct("(");
      std::vector<Expr> args;
      if (!cur_.is_punct(")")) {
        while (true) {
          args.push_back(expr());
          if (!cur_.is_punct(",")) break;
          cur_.next();
        }
      }
      cur_.punct(")");
      cur_.punct(";");
      return Stmt::send(std::move(inst), std::move(sig), std::move(args));
    }
    if (cur_.is_word("if")) {
      cur_.next();
      cur_.punct("(");
      Expr cond = expr();
      cur_.punct(")");
      std::vector<Stmt> then_body = block();
      if (cur_.is_word("else")) {
        cur_.next();
        return Stmt::if_else(std::move(cond), std::move(then_body), block());
      }
      return Stmt::if_else(std::move(cond), std::move(then_body));
    }
    if (cur_.peek().kind != TokenKind::Ident || is_model_keyword(cur_.peek().text)) {
      cur_.fail("statement ('send', 'if' or assignment)");
    }
    std::string attr = ident();
    cur_.punct("=");
    Expr value = expr();
    cur_.punct(";");
    return Stmt::assign(std::move(attr), std::move(value));
  }

  // Precedence climbing over the binary levels 1 (||) .. 6 (*).
  static std::optional<BinaryOp> binary_at(const Token& t, int level) {
    if (t.kind != TokenKind::Punct) return std::nullopt;
    const std::string& s = t.text;
    switch (level) {
      case 1: if (s == "||") return BinaryOp::Or; break;
      case 2: if (s == "&&") return BinaryOp::And; break;
      case 3:
        if (s == "==") return BinaryOp::Eq;
        if (s == "!=") return BinaryOp::Ne;
        break;
      case 4:
        if (s == "<") return BinaryOp::Lt;
        if (s == "<=") return BinaryOp::Le;
        if (s == ">") return BinaryOp::Gt;
        if (s == ">=") return BinaryOp::Ge;
        break;
      case 5:
        if (s == "+") return BinaryOp::Add;
        if (s == "-") return BinaryOp::Sub;
        break;
      case 6: if (s == "*") return BinaryOp::Mul; break;
      default: break;
    }
    return std::nullopt;
  }

  Expr expr(int level = 1) {
    if (level > 6) return unary();
    Expr lhs = expr(level + 1);
    while (auto op = binary_at(cur_.peek(), level)) {
      cur_.next();
      Expr rhs = expr(level + 1);
      lhs = Expr::make_binary(*op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr unary() {
    if (cur_.is_punct("!")) {
      cur_.next();
      return Expr::make_unary(UnaryOp::Not, unary());
    }
    if (cur_.is_punct("-")) {
      cur_.next();
      return Expr::make_unary(UnaryOp::Neg, unary());
    }
    return primary();
  }

  Expr primary() {
    const Token& t = cur_.peek();
    if (t.kind == TokenKind::Int) return Expr::lit(Literal::integer(cur_.next().value));
    if (cur_.is_word("true") || cur_.is_word("false")) return Expr::lit(cur_.literal());
    if (cur_.is_punct("$")) {
      cur_.next();
      return Expr::param(ident());
    }
    if (cur_.is_punct("(")) {
      cur_.next();
      Expr inner = expr();
      cur_.punct(")");
      return inner;
    }
    if (t.kind == TokenKind::Ident && !is_model_keyword(t.text)) return Expr::attr(cur_.next().text);
    cur_.fail("expression");
  }

  InstanceDecl instance_decl() {
    cur_.word("instance");
    InstanceDecl d;
    d.name = ident();
    cur_.punct(":");
    d.class_name = ident();
    cur_.punct(";");
    return d;
  }

  Cursor cur_;
};

template <class F>
auto guarded(F&& f) -> Result<decltype(f()), ParseError> {
  try {
    return f();
  } catch (const Failure& failure) {
    return failure.error;
  }
}

}  // namespace

Result<Model, ParseError> parse_model(std::string_view text, std::string_view file) {
  return guarded([&] { return ModelParser(text, file).parse(); });
}

// ---------------------------------------------------------------------------
// Marks DSL

Result<MarkSet, ParseError> parse_marks(std::string_view text, std::string_view file) {
  return guarded([&] {
    Cursor cur(text, file);
    MarkSet set;
    std::set<std::pair<std::string, std::string>> seen;
    while (!cur.at_end()) {
      const Token start = cur.peek();
      cur.word("mark");
      Mark m;
      m.key = cur.ident(false);
      if (cur.is_punct("=")) {
        cur.next();
        m.value = cur.literal();
      }
      cur.word("on");
      m.path.segments.push_back(cur.ident(false));
      while (cur.is_punct(".")) {
        cur.next();
        m.path.segments.push_back(cur.ident(false));
      }
      cur.punct(";");
      if (!seen.emplace(m.key, m.path.to_string()).second) {
        cur.fail_at(start, "unique (key, path) pair, '" + m.key + "' on '" + m.path.to_string() +
                               "' is already marked",
                    "E_DUP_MARK");
      }
      set.marks.push_back(std::move(m));
    }
    return set;
  });
}

std::string print_marks(const MarkSet& marks) {
  std::string out;
  for (const auto& m : marks.marks) {
    out += "mark " + m.key;
    if (!(m.value == Literal::boolean(true))) out += " = " + m.value.to_string();
    out += " on " + m.path.to_string() + ";\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenario DSL

Result<Scenario, ParseError> parse_scenario(std::string_view text, std::string_view file) {
  return guarded([&] {
    Cursor cur(text, file);
    Scenario sc;
    while (!cur.at_end()) {
      if (cur.is_word("at")) {
        cur.next();
        Injection inj;
        inj.step = cur.integer();
        cur.word("send");
        inj.instance = cur.ident(false);
        cur.punct(".");
        inj.signal = cur.ident(false);
        cur.punct("(");
        if (!cur.is_punct(")")) {
          while (true) {
            inj.args.push_back(cur.literal());
            if (!cur.is_punct(",")) break;
            cur.next();
          }
        }
        cur.punct(")");
        cur.punct(";");
        sc.injections.push_back(std::move(inj));
      } else if (cur.is_word("expect")) {
        cur.next();
        Expectation e;
        e.instance = cur.ident(false);
        cur.punct(".");
        e.attribute = cur.ident(false);
        cur.punct("==");
        e.expected = cur.literal();
        cur.punct(";");
        sc.expectations.push_back(std::move(e));
      } else if (cur.is_word("confluent")) {
        cur.next();
        cur.punct(";");
        sc.confluent = true;
      } else {
        cur.fail("'at', 'expect' or 'confluent'");
      }
    }
    return sc;
  });
}

std::string print_scenario(const Scenario& scenario) {
  std::string out;
  if (scenario.confluent) out += "confluent;\n";
  for (const auto& inj : scenario.injections) {
    out += "at " + std::to_string(inj.step) + " send " + inj.instance + "." + inj.signal + "(";
    for (std::size_t i = 0; i < inj.args.size(); ++i) {
      if (i != 0) out += ", ";
      out += inj.args[i].to_string();
    }
    out += ");\n";
  }
  for (const auto& e : scenario.expectations) {
    out += "expect " + e.instance + "." + e.attribute + " == " + e.expected.to_string() + ";\n";
  }
  return out;
}

std::vector<Diagnostic> check_scenario(const Model& model, const Scenario& scenario) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string path, std::string message) {
    out.push_back({"E_SCENARIO_REF", std::move(path), std::move(message), Severity::Error});
  };
  for (const auto& inj : scenario.injections) {
    const ClassDef* cls = model.class_of(inj.instance);
    if (cls == nullptr) {
      report(inj.instance, "no instance named '" + inj.instance + "'");
      continue;
    }
    const SignalDef* sig = cls->find_signal(inj.signal);
    if (sig == nullptr) {
      report(cls->name + "." + inj.signal,
             "class '" + cls->name + "' declares no signal '" + inj.signal + "'");
      continue;
    }
    if (sig->params.size() != inj.args.size()) {
      report(cls->name + "." + inj.signal, "signal '" + inj.signal + "' takes " +
                                               std::to_string(sig->params.size()) +
                                               " argument(s), " + std::to_string(inj.args.size()) +
                                               " given");
      continue;
    }
    for (std::size_t i = 0; i < inj.args.size(); ++i) {
      if (!inj.args[i].fits(sig->params[i].type)) {
        report(cls->name + "." + inj.signal,
               "argument " + inj.args[i].to_string() + " is not a " +
                   std::string(type_name(sig->params[i].type)));
      }
    }
  }
  for (const auto& e : scenario.expectations) {
    const ClassDef* cls = model.class_of(e.instance);
    if (cls == nullptr) {
      report(e.instance, "no instance named '" + e.instance + "'");
      continue;
    }
    const AttributeDef* attr = cls->find_attribute(e.attribute);
    if (attr == nullptr) {
      report(cls->name + "." + e.attribute,
             "class '" + cls->name + "' has no attribute '" + e.attribute + "'");
      continue;
    }
    if (!e.expected.fits(attr->type)) {
      report(cls->name + "." + e.attribute,
             "expected value " + e.expected.to_string() + " is not a " +
                 std::string(type_name(attr->type)));
    }
  }
  return out;
}

}  // namespace smc
