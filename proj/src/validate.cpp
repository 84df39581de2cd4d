#include <set>
#include <string>

#include "smc/ir.hpp"

namespace smc {
namespace {

class Validator {
 public:
  explicit Validator(const Model& model) : model_(model) {}

  ValidationReport run() {
    for (std::size_t i = 0; i < model_.classes.size(); ++i) check_class(i);
    check_instances();
    return std::move(report_);
  }

 private:
  void error(std::string code, std::string path, std::string message) {
    report_.diagnostics.push_back(
        {std::move(code), std::move(path), std::move(message), Severity::Error});
  }

  void warning(std::string code, std::string path, std::string message) {
    report_.diagnostics.push_back(
        {std::move(code), std::move(path), std::move(message), Severity::Warning});
  }

  void check_class(std::size_t index) {
    const ClassDef& c = model_.classes[index];
    for (std::size_t j = 0; j < index; ++j) {
      if (model_.classes[j].name == c.name) {
        error("E_DUP_CLASS", c.name, "class '" + c.name + "' is already declared");
        break;
      }
    }
    if (model_.find_instance(c.name) != nullptr) {
      warning("W_AMBIGUOUS_PATH", c.name,
              "'" + c.name + "' names both a class and an instance; paths to it cannot resolve");
    }

    std::set<std::string> members;
    std::set<std::string> seen;
    for (const auto& a : c.attributes) {
      const std::string path = c.name + "." + a.name;
      if (!seen.insert(a.name).second) {
        error("E_DUP_ATTR", path, "attribute '" + a.name + "' is already declared");
        continue;
      }
      note_member(c, a.name, members);
      if (!a.initial.fits(a.type)) {
        error("E_BAD_DEFAULT", path,
              "default " + a.initial.to_string() + " is not a " + std::string(type_name(a.type)));
      }
    }

    seen.clear();
    for (const auto& s : c.signals) {
      const std::string path = c.name + "." + s.name;
      if (!seen.insert(s.name).second) {
        error("E_DUP_SIGNAL", path, "signal '" + s.name + "' is already declared");
        continue;
      }
      note_member(c, s.name, members);
      std::set<std::string> params;
      for (const auto& p : s.params) {
        if (!params.insert(p.name).second) {
          error("E_DUP_PARAM", path + "." + p.name,
                "parameter '" + p.name + "' is already declared");
        }
      }
    }

    seen.clear();
    for (const auto& st : c.machine.states) {
      if (!seen.insert(st.name).second) {
        error("E_DUP_STATE", c.name + "." + st.name, "state '" + st.name + "' is already declared");
        continue;
      }
      note_member(c, st.name, members);
    }
    if (c.find_state(c.machine.initial) == nullptr) {
      error("E_UNKNOWN_STATE", c.name + "." + c.machine.initial,
            "initial state '" + c.machine.initial + "' is not declared");
    }

    for (const auto& st : c.machine.states) check_state(c, st);
  }

  void note_member(const ClassDef& c, const std::string& name, std::set<std::string>& members) {
    if (!members.insert(name).second) {
      warning("W_AMBIGUOUS_PATH", c.name + "." + name,
              "'" + name + "' names more than one member of class '" + c.name + "'");
    }
  }

  void check_state(const ClassDef& c, const StateDef& st) {
    std::set<std::string> handled;
    for (const auto& t : st.transitions) {
      const SignalDef* sig = c.find_signal(t.signal);
      if (sig == nullptr) {
        error("E_UNKNOWN_SIGNAL", c.name + "." + t.signal,
              "class '" + c.name + "' declares no signal '" + t.signal + "'");
      }
      if (!handled.insert(t.signal).second) {
        error("E_DUP_TRANSITION", c.name + "." + st.name,
              "state '" + st.name + "' already has a transition on '" + t.signal + "'");
      }
      if (c.find_state(t.target) == nullptr) {
        error("E_UNKNOWN_STATE", c.name + "." + t.target,
              "target state '" + t.target + "' is not declared");
      }
      const ActionScope scope{&c, sig};
      const std::string where = c.name + "." + st.name;
      for (const auto& s : t.actions) check_stmt(s, scope, where, sig == nullptr);
    }
  }

  void check_stmt(const Stmt& s, const ActionScope& scope, const std::string& where,
                  bool unknown_signal) {
    switch (s.kind) {
      case Stmt::Kind::Assign: {
        const auto* attr = scope.cls->find_attribute(s.target);
        if (attr == nullptr) {
          error("E_UNKNOWN_ATTR", scope.cls->name + "." + s.target,
                "class '" + scope.cls->name + "' has no attribute '" + s.target + "'");
          check_expr(s.expr, scope, where, unknown_signal);
          return;
        }
        expect(s.expr, attr->type, scope, where, unknown_signal,
               "assignment to '" + s.target + "'");
        return;
      }
      case Stmt::Kind::Send: {
        const auto* inst = model_.find_instance(s.target);
        const ClassDef* target_cls = inst == nullptr ? nullptr : model_.find_class(inst->class_name);
        if (inst == nullptr) {
          error("E_UNKNOWN_INSTANCE", s.target, "no instance named '" + s.target + "'");
        }
        const SignalDef* sig = target_cls == nullptr ? nullptr : target_cls->find_signal(s.signal);
        if (target_cls != nullptr && sig == nullptr) {
          error("E_UNKNOWN_SIGNAL", target_cls->name + "." + s.signal,
                "class '" + target_cls->name + "' declares no signal '" + s.signal + "'");
        }
        if (sig != nullptr && sig->params.size() != s.args.size()) {
          error("E_ARITY", target_cls->name + "." + s.signal,
                "signal '" + s.signal + "' takes " + std::to_string(sig->params.size()) +
                    " argument(s), " + std::to_string(s.args.size()) + " given");
        }
        for (std::size_t i = 0; i < s.args.size(); ++i) {
          if (sig != nullptr && i < sig->params.size()) {
            expect(s.args[i], sig->params[i].type, scope, where, unknown_signal,
                   "argument '" + sig->params[i].name + "' of " + s.signal);
          } else {
            check_expr(s.args[i], scope, where, unknown_signal);
          }
        }
        return;
      }
      case Stmt::Kind::If:
        expect(s.expr, ScalarType::Bool, scope, where, unknown_signal, "if condition");
        for (const auto& b : s.then_body) check_stmt(b, scope, where, unknown_signal);
        for (const auto& b : s.else_body) check_stmt(b, scope, where, unknown_signal);
        return;
    }
  }

  /// Checks `e` and that it can be consumed at `want`.
  void expect(const Expr& e, ScalarType want, const ActionScope& scope, const std::string& where,
              bool unknown_signal, const std::string& what) {
    const TypeTag t = check_expr(e, scope, where, unknown_signal);
    if (t == TypeTag::Error) return;
    const bool compatible =
        t == tag_of(want) || (t == TypeTag::IntLit && want != ScalarType::Bool);
    if (!compatible) {
      error("E_TYPE_MISMATCH", where,
            what + " expects " + std::string(type_name(want)) + ", got " +
                std::string(tag_name(t)));
      return;
    }
    check_literal_fit(e, want, scope, where);
  }

  /// Literal leaves must fit the width they are evaluated at.
  void check_literal_fit(const Expr& e, ScalarType at, const ActionScope& scope,
                         const std::string& where) {
    switch (e.kind) {
      case Expr::Kind::Literal:
        if (!e.literal.is_bool() && at != ScalarType::Bool && !e.literal.fits(at)) {
          error("E_TYPE_MISMATCH", where,
                "literal " + e.literal.to_string() + " does not fit " +
                    std::string(type_name(at)));
        }
        return;
      case Expr::Kind::Attr:
      case Expr::Kind::Param:
        return;
      case Expr::Kind::Unary:
        check_literal_fit(e.operands[0], at, scope, where);
        return;
      case Expr::Kind::Binary:
        if (is_arithmetic(e.binary)) {
          check_literal_fit(e.operands[0], at, scope, where);
          check_literal_fit(e.operands[1], at, scope, where);
        } else if (is_logical(e.binary)) {
          check_literal_fit(e.operands[0], ScalarType::Bool, scope, where);
          check_literal_fit(e.operands[1], ScalarType::Bool, scope, where);
        } else {
          const ScalarType w = comparison_width(e, scope);
          check_literal_fit(e.operands[0], w, scope, where);
          check_literal_fit(e.operands[1], w, scope, where);
        }
        return;
    }
  }

  TypeTag check_expr(const Expr& e, const ActionScope& scope, const std::string& where,
                     bool unknown_signal) {
    switch (e.kind) {
      case Expr::Kind::Literal:
        if (!e.literal.is_bool() && e.literal.value > 0xFFFFFFFFull) {
          error("E_TYPE_MISMATCH", where, "literal " + e.literal.to_string() + " exceeds 32 bits");
          return TypeTag::Error;
        }
        return e.literal.is_bool() ? TypeTag::Bool : TypeTag::IntLit;
      case Expr::Kind::Attr: {
        const auto* a = scope.cls->find_attribute(e.name);
        if (a == nullptr) {
          error("E_UNKNOWN_ATTR", scope.cls->name + "." + e.name,
                "class '" + scope.cls->name + "' has no attribute '" + e.name + "'");
          return TypeTag::Error;
        }
        return tag_of(a->type);
      }
      case Expr::Kind::Param: {
        if (scope.signal == nullptr) {
          // The transition's own signal is unknown and already reported.
          if (!unknown_signal) {
            error("E_UNKNOWN_PARAM", where + "." + e.name, "no signal parameters in scope");
          }
          return TypeTag::Error;
        }
        const auto* p = scope.signal->find_param(e.name);
        if (p == nullptr) {
          error("E_UNKNOWN_PARAM", scope.cls->name + "." + scope.signal->name + "." + e.name,
                "signal '" + scope.signal->name + "' has no parameter '" + e.name + "'");
          return TypeTag::Error;
        }
        return tag_of(p->type);
      }
      case Expr::Kind::Unary: {
        const TypeTag t = check_expr(e.operands[0], scope, where, unknown_signal);
        if (t == TypeTag::Error) return t;
        if (e.unary == UnaryOp::Not && t != TypeTag::Bool) {
          error("E_TYPE_MISMATCH", where, "'!' expects bool, got " + std::string(tag_name(t)));
          return TypeTag::Error;
        }
        if (e.unary == UnaryOp::Neg && !is_numeric(t)) {
          error("E_TYPE_MISMATCH", where, "'-' expects an unsigned operand, got bool");
          return TypeTag::Error;
        }
        return t;
      }
      case Expr::Kind::Binary: {
        const TypeTag l = check_expr(e.operands[0], scope, where, unknown_signal);
        const TypeTag r = check_expr(e.operands[1], scope, where, unknown_signal);
        if (l == TypeTag::Error || r == TypeTag::Error) return TypeTag::Error;
        const TypeTag t = infer_type(e, scope);
        if (t == TypeTag::Error) {
          error("E_TYPE_MISMATCH", where,
                "operator '" + std::string(op_text(e.binary)) + "' cannot combine " +
                    std::string(tag_name(l)) + " and " + std::string(tag_name(r)));
        }
        return t;
      }
    }
    return TypeTag::Error;
  }

  void check_instances() {
    std::set<std::string> seen;
    for (const auto& inst : model_.instances) {
      if (!seen.insert(inst.name).second) {
        error("E_DUP_INSTANCE", inst.name, "instance '" + inst.name + "' is already declared");
        continue;
      }
      if (model_.find_class(inst.class_name) == nullptr) {
        error("E_UNKNOWN_CLASS", inst.class_name,
              "instance '" + inst.name + "' has undeclared class '" + inst.class_name + "'");
      }
    }
  }

  const Model& model_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const Model& model) { return Validator(model).run(); }

}  // namespace smc
