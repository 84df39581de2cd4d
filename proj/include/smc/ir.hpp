#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smc/diagnostics.hpp"

namespace smc {

/// Runtime value of any scalar. Every type fits in 32 bits.
using Value = std::uint32_t;

enum class ScalarType : std::uint8_t { Bool, U8, U16, U32 };

[[nodiscard]] int width(ScalarType t) noexcept;
[[nodiscard]] Value mask(ScalarType t) noexcept;
[[nodiscard]] std::string_view type_name(ScalarType t) noexcept;
[[nodiscard]] std::optional<ScalarType> parse_type_name(std::string_view name) noexcept;

/// A source literal. Integer literals are untyped until they meet a context.
struct Literal {
  enum class Kind : std::uint8_t { Int, Bool };
  Kind kind = Kind::Int;
  std::uint64_t value = 0;

  static Literal integer(std::uint64_t v) { return {Kind::Int, v}; }
  static Literal boolean(bool b) { return {Kind::Bool, b ? 1u : 0u}; }

  [[nodiscard]] bool is_bool() const noexcept { return kind == Kind::Bool; }
  /// True when the literal is a legal value of `t`.
  [[nodiscard]] bool fits(ScalarType t) const noexcept;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class UnaryOp : std::uint8_t { Not, Neg };
enum class BinaryOp : std::uint8_t { Or, And, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul };

[[nodiscard]] std::string_view op_text(UnaryOp op) noexcept;
[[nodiscard]] std::string_view op_text(BinaryOp op) noexcept;
/// Binding strength, 1 (||) through 6 (*).
[[nodiscard]] int precedence(BinaryOp op) noexcept;
[[nodiscard]] bool is_arithmetic(BinaryOp op) noexcept;
[[nodiscard]] bool is_ordering(BinaryOp op) noexcept;
[[nodiscard]] bool is_equality(BinaryOp op) noexcept;
[[nodiscard]] bool is_logical(BinaryOp op) noexcept;

struct Expr {
  enum class Kind : std::uint8_t { Literal, Attr, Param, Unary, Binary };
  Kind kind = Kind::Literal;
  Literal literal;
  std::string name;  // Attr / Param
  UnaryOp unary = UnaryOp::Not;
  BinaryOp binary = BinaryOp::Add;
  std::vector<Expr> operands;  // 1 for Unary, 2 for Binary

  static Expr lit(Literal l);
  static Expr attr(std::string n);
  static Expr param(std::string n);
  static Expr make_unary(UnaryOp op, Expr operand);
  static Expr make_binary(BinaryOp op, Expr lhs, Expr rhs);

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Stmt {
  enum class Kind : std::uint8_t { Assign, Send, If };
  Kind kind = Kind::Assign;
  std::string target;  // Assign: attribute; Send: instance
  std::string signal;  // Send
  Expr expr;           // Assign: value; If: condition
  std::vector<Expr> args;  // Send
  std::vector<Stmt> then_body;
  std::vector<Stmt> else_body;
  bool has_else = false;

  static Stmt assign(std::string attr, Expr value);
  static Stmt send(std::string instance, std::string signal, std::vector<Expr> args);
  static Stmt if_else(Expr cond, std::vector<Stmt> then_body,
                      std::optional<std::vector<Stmt>> else_body = std::nullopt);

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct AttributeDef {
  std::string name;
  ScalarType type = ScalarType::U32;
  Literal initial;

  friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

struct ParamDef {
  std::string name;
  ScalarType type = ScalarType::U32;

  friend bool operator==(const ParamDef&, const ParamDef&) = default;
};

struct SignalDef {
  std::string name;
  std::vector<ParamDef> params;

  [[nodiscard]] const ParamDef* find_param(std::string_view n) const;
  [[nodiscard]] int param_index(std::string_view n) const;

  friend bool operator==(const SignalDef&, const SignalDef&) = default;
};

struct TransitionDef {
  std::string signal;
  std::string target;
  std::vector<Stmt> actions;

  friend bool operator==(const TransitionDef&, const TransitionDef&) = default;
};

struct StateDef {
  std::string name;
  std::vector<TransitionDef> transitions;

  [[nodiscard]] const TransitionDef* find_transition(std::string_view signal) const;

  friend bool operator==(const StateDef&, const StateDef&) = default;
};

struct StateMachineDef {
  std::string initial;
  std::vector<StateDef> states;

  friend bool operator==(const StateMachineDef&, const StateMachineDef&) = default;
};

struct ClassDef {
  std::string name;
  std::vector<AttributeDef> attributes;
  std::vector<SignalDef> signals;
  StateMachineDef machine;

  [[nodiscard]] const AttributeDef* find_attribute(std::string_view n) const;
  [[nodiscard]] int attribute_index(std::string_view n) const;
  [[nodiscard]] const SignalDef* find_signal(std::string_view n) const;
  [[nodiscard]] int signal_index(std::string_view n) const;
  [[nodiscard]] const StateDef* find_state(std::string_view n) const;
  [[nodiscard]] int state_index(std::string_view n) const;

  friend bool operator==(const ClassDef&, const ClassDef&) = default;
};

struct InstanceDecl {
  std::string name;
  std::string class_name;

  friend bool operator==(const InstanceDecl&, const InstanceDecl&) = default;
};

struct Model {
  std::vector<ClassDef> classes;
  std::vector<InstanceDecl> instances;

  [[nodiscard]] const ClassDef* find_class(std::string_view n) const;
  [[nodiscard]] int class_index(std::string_view n) const;
  [[nodiscard]] const InstanceDecl* find_instance(std::string_view n) const;
  [[nodiscard]] int instance_index(std::string_view n) const;
  /// Class of a declared instance, or nullptr.
  [[nodiscard]] const ClassDef* class_of(std::string_view instance) const;

  friend bool operator==(const Model&, const Model&) = default;
};

// ---------------------------------------------------------------------------
// Paths

/// Dot-separated name such as `Pong` or `Ping.Hit`.
struct ElementPath {
  std::vector<std::string> segments;

  static ElementPath parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ElementPath&, const ElementPath&) = default;
};

enum class ElementKind : std::uint8_t { NotFound, Class, Instance, Signal, Attribute, State };

[[nodiscard]] std::string_view element_kind_name(ElementKind k) noexcept;

struct ResolvedElement {
  ElementKind kind = ElementKind::NotFound;
  int class_index = -1;   // owning class (or the class itself)
  int member_index = -1;  // instance / signal / attribute / state index
  /// Set when more than one element carries the name; the lookup then fails.
  bool ambiguous = false;

  [[nodiscard]] bool found() const noexcept { return kind != ElementKind::NotFound; }
};

/// Finds the unique element a path names. Ambiguous or partial matches are not-found.
[[nodiscard]] ResolvedElement resolve(const Model& model, const ElementPath& path);

// ---------------------------------------------------------------------------
// Typing

/// Static type of an expression. `IntLit` is an integer literal expression that has
/// not met a typed operand yet; it takes the width of whatever context consumes it.
enum class TypeTag : std::uint8_t { Bool, U8, U16, U32, IntLit, Error };

[[nodiscard]] TypeTag tag_of(ScalarType t) noexcept;
[[nodiscard]] bool is_numeric(TypeTag t) noexcept;
/// The width an expression of type `t` is evaluated at when no context fixes it.
[[nodiscard]] ScalarType concrete(TypeTag t) noexcept;
[[nodiscard]] std::string_view tag_name(TypeTag t) noexcept;

/// Names visible to an action: the executing class's attributes and the triggering
/// signal's parameters.
struct ActionScope {
  const ClassDef* cls = nullptr;
  const SignalDef* signal = nullptr;
};

/// Type of an expression in a validated model. Returns Error on ill-typed input
/// without reporting anything; `validate` produces the diagnostics.
[[nodiscard]] TypeTag infer_type(const Expr& e, const ActionScope& scope);

/// The width at which the operands of a comparison are evaluated.
[[nodiscard]] ScalarType comparison_width(const Expr& cmp, const ActionScope& scope);

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return error_count() == 0; }
  [[nodiscard]] std::size_t error_count() const noexcept;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

[[nodiscard]] ValidationReport validate(const Model& model);

// ---------------------------------------------------------------------------
// Canonical text

/// Canonical model text; parses back to an equal Model.
[[nodiscard]] std::string pretty_print(const Model& model);
[[nodiscard]] std::string print_expr(const Expr& e);

}  // namespace smc
