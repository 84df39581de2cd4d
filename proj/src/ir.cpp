#include "smc/ir.hpp"

#include <sstream>

namespace smc {

// ---------------------------------------------------------------------------
// Diagnostics

std::string_view severity_name(Severity s) noexcept {
  return s == Severity::Error ? "error" : "warning";
}

std::string Diagnostic::to_string() const {
  std::string out;
  out += severity_name(severity);
  out += ' ';
  out += code;
  out += ' ';
  out += path;
  out += ": ";
  out += message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) noexcept {
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Scalars and literals

int width(ScalarType t) noexcept {
  switch (t) {
    case ScalarType::Bool: return 1;
    case ScalarType::U8: return 8;
    case ScalarType::U16: return 16;
    case ScalarType::U32: return 32;
  }
  return 32;
}

Value mask(ScalarType t) noexcept {
  const int w = width(t);
  return w == 32 ? 0xFFFFFFFFu : static_cast<Value>((1u << w) - 1u);
}

std::string_view type_name(ScalarType t) noexcept {
  switch (t) {
    case ScalarType::Bool: return "bool";
    case ScalarType::U8: return "u8";
    case ScalarType::U16: return "u16";
    case ScalarType::U32: return "u32";
  }
  return "u32";
}

std::optional<ScalarType> parse_type_name(std::string_view name) noexcept {
  if (name == "bool") return ScalarType::Bool;
  if (name == "u8") return ScalarType::U8;
  if (name == "u16") return ScalarType::U16;
  if (name == "u32") return ScalarType::U32;
  return std::nullopt;
}

bool Literal::fits(ScalarType t) const noexcept {
  if (t == ScalarType::Bool) return is_bool();
  return !is_bool() && value <= mask(t);
}

std::string Literal::to_string() const {
  if (is_bool()) return value != 0 ? "true" : "false";
  return std::to_string(value);
}

// ---------------------------------------------------------------------------
// Operators

std::string_view op_text(UnaryOp op) noexcept { return op == UnaryOp::Not ? "!" : "-"; }

std::string_view op_text(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Or: return "||";
    case BinaryOp::And: return "&&";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
  }
  return "?";
}

int precedence(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul: return 6;
  }
  return 0;
}

bool is_arithmetic(BinaryOp op) noexcept {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul;
}
bool is_ordering(BinaryOp op) noexcept {
  return op == BinaryOp::Lt || op == BinaryOp::Le || op == BinaryOp::Gt || op == BinaryOp::Ge;
}
bool is_equality(BinaryOp op) noexcept { return op == BinaryOp::Eq || op == BinaryOp::Ne; }
bool is_logical(BinaryOp op) noexcept { return op == BinaryOp::And || op == BinaryOp::Or; }

// ---------------------------------------------------------------------------
// Constructors

Expr Expr::lit(Literal l) {
  Expr e;
  e.kind = Kind::Literal;
  e.literal = l;
  return e;
}

Expr Expr::attr(std::string n) {
  Expr e;
  e.kind = Kind::Attr;
  e.name = std::move(n);
  return e;
}

Expr Expr::param(std::string n) {
  Expr e;
  e.kind = Kind::Param;
  e.name = std::move(n);
  return e;
}

Expr Expr::make_unary(UnaryOp op, Expr operand) {
  Expr e;
  e.kind = Kind::Unary;
  e.unary = op;
  e.operands.push_back(std::move(operand));
  return e;
}

Expr Expr::make_binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Binary;
  e.binary = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Stmt Stmt::assign(std::string attr, Expr value) {
  Stmt s;
  s.kind = Kind::Assign;
  s.target = std::move(attr);
  s.expr = std::move(value);
  return s;
}

Stmt Stmt::send(std::string instance, std::string signal, std::vector<Expr> args) {
  Stmt s;
  s.kind = Kind::Send;
  s.target = std::move(instance);
  s.signal = std::move(signal);
  s.args = std::move(args);
  return s;
}

Stmt Stmt::if_else(Expr cond, std::vector<Stmt> then_body,
                   std::optional<std::vector<Stmt>> else_body) {
  Stmt s;
  s.kind = Kind::If;
  s.expr = std::move(cond);
  s.then_body = std::move(then_body);
  if (else_body) {
    s.has_else = true;
    s.else_body = std::move(*else_body);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Lookups

namespace {

template <class Seq>
int index_by_name(const Seq& seq, std::string_view n) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].name == n) return static_cast<int>(i);
  }
  return -1;
}

template <class Seq>
auto* find_by_name(const Seq& seq, std::string_view n) {
  const int i = index_by_name(seq, n);
  return i < 0 ? nullptr : &seq[static_cast<std::size_t>(i)];
}

template <class Seq>
int count_named(const Seq& seq, std::string_view n) {
  int c = 0;
  for (const auto& x : seq) c += x.name == n ? 1 : 0;
  return c;
}

}  // namespace

const ParamDef* SignalDef::find_param(std::string_view n) const { return find_by_name(params, n); }
int SignalDef::param_index(std::string_view n) const { return index_by_name(params, n); }

const TransitionDef* StateDef::find_transition(std::string_view signal) const {
  for (const auto& t : transitions) {
    if (t.signal == signal) return &t;
  }
  return nullptr;
}

const AttributeDef* ClassDef::find_attribute(std::string_view n) const {
  return find_by_name(attributes, n);
}
int ClassDef::attribute_index(std::string_view n) const { return index_by_name(attributes, n); }
const SignalDef* ClassDef::find_signal(std::string_view n) const { return find_by_name(signals, n); }
int ClassDef::signal_index(std::string_view n) const { return index_by_name(signals, n); }
const StateDef* ClassDef::find_state(std::string_view n) const {
  return find_by_name(machine.states, n);
}
int ClassDef::state_index(std::string_view n) const { return index_by_name(machine.states, n); }

const ClassDef* Model::find_class(std::string_view n) const { return find_by_name(classes, n); }
int Model::class_index(std::string_view n) const { return index_by_name(classes, n); }
const InstanceDecl* Model::find_instance(std::string_view n) const {
  return find_by_name(instances, n);
}
int Model::instance_index(std::string_view n) const { return index_by_name(instances, n); }

const ClassDef* Model::class_of(std::string_view instance) const {
  const auto* inst = find_instance(instance);
  return inst == nullptr ? nullptr : find_class(inst->class_name);
}

// ---------------------------------------------------------------------------
// Paths

ElementPath ElementPath::parse(std::string_view text) {
  ElementPath p;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    p.segments.emplace_back(text.substr(start, dot == std::string_view::npos ? dot : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

std::string ElementPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i != 0) out += '.';
    out += segments[i];
  }
  return out;
}

std::string_view element_kind_name(ElementKind k) noexcept {
  switch (k) {
    case ElementKind::NotFound: return "not-found";
    case ElementKind::Class: return "class";
    case ElementKind::Instance: return "instance";
    case ElementKind::Signal: return "signal";
    case ElementKind::Attribute: return "attribute";
    case ElementKind::State: return "state";
  }
  return "not-found";
}

ResolvedElement resolve(const Model& model, const ElementPath& path) {
  ResolvedElement none;
  const auto& seg = path.segments;
  if (seg.empty() || seg.size() > 2) return none;

  const int cls = model.class_index(seg[0]);
  if (seg.size() == 1) {
    const int inst = model.instance_index(seg[0]);
    const int hits = count_named(model.classes, seg[0]) + count_named(model.instances, seg[0]);
    if (hits > 1) {
      none.ambiguous = true;
      return none;
    }
    if (cls >= 0) return {ElementKind::Class, cls, cls, false};
    if (inst >= 0) {
      return {ElementKind::Instance, model.class_index(model.instances[inst].class_name), inst,
              false};
    }
    return none;
  }

  if (cls < 0 || count_named(model.classes, seg[0]) > 1) return none;
  const auto& c = model.classes[static_cast<std::size_t>(cls)];
  const int hits = count_named(c.signals, seg[1]) + count_named(c.attributes, seg[1]) +
                   count_named(c.machine.states, seg[1]);
  if (hits > 1) {
    none.ambiguous = true;
    return none;
  }
  if (const int i = c.signal_index(seg[1]); i >= 0) return {ElementKind::Signal, cls, i, false};
  if (const int i = c.attribute_index(seg[1]); i >= 0) {
    return {ElementKind::Attribute, cls, i, false};
  }
  if (const int i = c.state_index(seg[1]); i >= 0) return {ElementKind::State, cls, i, false};
  return none;
}

// ---------------------------------------------------------------------------
// Typing

TypeTag tag_of(ScalarType t) noexcept {
  switch (t) {
    case ScalarType::Bool: return TypeTag::Bool;
    case ScalarType::U8: return TypeTag::U8;
    case ScalarType::U16: return TypeTag::U16;
    case ScalarType::U32: return TypeTag::U32;
  }
  return TypeTag::Error;
}

bool is_numeric(TypeTag t) noexcept {
  return t == TypeTag::U8 || t == TypeTag::U16 || t == TypeTag::U32 || t == TypeTag::IntLit;
}

ScalarType concrete(TypeTag t) noexcept {
  switch (t) {
    case TypeTag::Bool: return ScalarType::Bool;
    case TypeTag::U8: return ScalarType::U8;
    case TypeTag::U16: return ScalarType::U16;
    default: return ScalarType::U32;
  }
}

std::string_view tag_name(TypeTag t) noexcept {
  switch (t) {
    case TypeTag::Bool: return "bool";
    case TypeTag::U8: return "u8";
    case TypeTag::U16: return "u16";
    case TypeTag::U32: return "u32";
    case TypeTag::IntLit: return "integer literal";
    case TypeTag::Error: return "<error>";
  }
  return "<error>";
}

namespace {

TypeTag unify_numeric(TypeTag a, TypeTag b) {
  if (!is_numeric(a) || !is_numeric(b)) return TypeTag::Error;
  if (a == TypeTag::IntLit) return b;
  if (b == TypeTag::IntLit) return a;
  return a == b ? a : TypeTag::Error;
}

}  // namespace

TypeTag infer_type(const Expr& e, const ActionScope& scope) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      if (e.literal.is_bool()) return TypeTag::Bool;
      return e.literal.value <= 0xFFFFFFFFull ? TypeTag::IntLit : TypeTag::Error;
    case Expr::Kind::Attr: {
      const auto* a = scope.cls == nullptr ? nullptr : scope.cls->find_attribute(e.name);
      return a == nullptr ? TypeTag::Error : tag_of(a->type);
    }
    case Expr::Kind::Param: {
      const auto* p = scope.signal == nullptr ? nullptr : scope.signal->find_param(e.name);
      return p == nullptr ? TypeTag::Error : tag_of(p->type);
    }
    case Expr::Kind::Unary: {
      const TypeTag t = infer_type(e.operands[0], scope);
      if (e.unary == UnaryOp::Not) return t == TypeTag::Bool ? TypeTag::Bool : TypeTag::Error;
      return is_numeric(t) ? t : TypeTag::Error;
    }
    case Expr::Kind::Binary: {
      const TypeTag l = infer_type(e.operands[0], scope);
      const TypeTag r = infer_type(e.operands[1], scope);
      if (l == TypeTag::Error || r == TypeTag::Error) return TypeTag::Error;
      if (is_logical(e.binary)) {
        return l == TypeTag::Bool && r == TypeTag::Bool ? TypeTag::Bool : TypeTag::Error;
      }
      if (is_equality(e.binary) && l == TypeTag::Bool && r == TypeTag::Bool) return TypeTag::Bool;
      const TypeTag u = unify_numeric(l, r);
      if (u == TypeTag::Error) return TypeTag::Error;
      return is_arithmetic(e.binary) ? u : TypeTag::Bool;
    }
  }
  return TypeTag::Error;
}

ScalarType comparison_width(const Expr& cmp, const ActionScope& scope) {
  const TypeTag l = infer_type(cmp.operands[0], scope);
  const TypeTag r = infer_type(cmp.operands[1], scope);
  if (l == TypeTag::Bool || r == TypeTag::Bool) return ScalarType::Bool;
  return concrete(unify_numeric(l, r));
}

std::size_t ValidationReport::error_count() const noexcept {
  std::size_t n = 0;
  for (const auto& d : diagnostics) n += d.severity == Severity::Error ? 1 : 0;
  return n;
}

}  // namespace smc
