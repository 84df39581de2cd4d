#include <string>

#include "smc/ir.hpp"

namespace smc {
namespace {

constexpr int kUnaryPrecedence = 7;

int expr_precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary: return precedence(e.binary);
    case Expr::Kind::Unary: return kUnaryPrecedence;
    default: return kUnaryPrecedence + 1;
  }
}

void print_into(std::string& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      out += e.literal.to_string();
      return;
    case Expr::Kind::Attr:
      out += e.name;
      return;
    case Expr::Kind::Param:
      out += '$';
      out += e.name;
      return;
    case Expr::Kind::Unary: {
      out += op_text(e.unary);
      const bool paren = expr_precedence(e.operands[0]) < kUnaryPrecedence;
      if (paren) out += '(';
      print_into(out, e.operands[0]);
      if (paren) out += ')';
      return;
    }
    case Expr::Kind::Binary: {
      // Left-associative: a right operand of equal strength needs parentheses.
      const int p = precedence(e.binary);
      const bool lp = expr_precedence(e.operands[0]) < p;
      const bool rp = expr_precedence(e.operands[1]) <= p;
      if (lp) out += '(';
      print_into(out, e.operands[0]);
      if (lp) out += ')';
      out += ' ';
      out += op_text(e.binary);
      out += ' ';
      if (rp) out += '(';
      print_into(out, e.operands[1]);
      if (rp) out += ')';
      return;
    }
  }
}

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

void print_block(std::string& out, const std::vector<Stmt>& body, int depth);

void print_stmt(std::string& out, const Stmt& s, int depth) {
  indent(out, depth);
  switch (s.kind) {
    case Stmt::Kind::Assign:
      out += s.target + " = " + print_expr(s.expr) + ";\n";
      return;
    case Stmt::Kind::Send:
      out += "send " + s.target + "." + s.signal + "(";
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        if (i != 0) out += ", ";
        print_into(out, s.args[i]);
      }
      out += ");\n";
      return;
    case Stmt::Kind::If:
      out += "if (" + print_expr(s.expr) + ") {\n";
      print_block(out, s.then_body, depth + 1);
      indent(out, depth);
      if (s.has_else) {
        out += "} else {\n";
        print_block(out, s.else_body, depth + 1);
        indent(out, depth);
      }
      out += "}\n";
      return;
  }
}

void print_block(std::string& out, const std::vector<Stmt>& body, int depth) {
  for (const auto& s : body) print_stmt(out, s, depth);
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_into(out, e);
  return out;
}

std::string pretty_print(const Model& model) {
  std::string out;
  for (const auto& c : model.classes) {
    out += "class " + c.name + " {\n";
    for (const auto& a : c.attributes) {
      out += "  attr " + a.name + ": " + std::string(type_name(a.type)) + " = " +
             a.initial.to_string() + ";\n";
    }
    for (const auto& s : c.signals) {
      out += "  signal " + s.name + "(";
      for (std::size_t i = 0; i < s.params.size(); ++i) {
        if (i != 0) out += ", ";
        out += s.params[i].name + ": " + std::string(type_name(s.params[i].type));
      }
      out += ");\n";
    }
    out += "  statemachine {\n";
    out += "    initial " + c.machine.initial + ";\n";
    for (const auto& st : c.machine.states) {
      out += "    state " + st.name + " {\n";
      for (const auto& t : st.transitions) {
        out += "      on " + t.signal + " -> " + t.target + " {\n";
        print_block(out, t.actions, 4);
        out += "      }\n";
      }
      out += "    }\n";
    }
    out += "  }\n}\n\n";
  }
  for (const auto& inst : model.instances) {
    out += "instance " + inst.name + ": " + inst.class_name + ";\n";
  }
  return out;
}

}  // namespace smc
