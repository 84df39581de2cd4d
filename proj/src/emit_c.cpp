#include <sstream>

#include "codegen_util.hpp"
#include "smc/codegen.hpp"

namespace smc {
namespace {

using detail::upper;

const char* c_type(ScalarType t) {
  switch (t) {
    case ScalarType::Bool:
    case ScalarType::U8: return "uint8_t";
    case ScalarType::U16: return "uint16_t";
    case ScalarType::U32: return "uint32_t";
  }
  return "uint32_t";
}

std::string c_mask(ScalarType t) {
  switch (t) {
    case ScalarType::Bool: return "0x1u";
    case ScalarType::U8: return "0xFFu";
    case ScalarType::U16: return "0xFFFFu";
    case ScalarType::U32: return "";
  }
  return "";
}

std::string wrap(const std::string& e, ScalarType at) {
  const std::string m = c_mask(at);
  return m.empty() ? "(" + e + ")" : "((" + e + ") & " + m + ")";
}

/// Translates an expression to C yielding a uint32_t already reduced to `at`.
std::string c_expr(const Expr& e, const ActionScope& scope, ScalarType at) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      return std::to_string(e.literal.value & mask(at)) + "u";
    case Expr::Kind::Attr:
      return "(uint32_t)self->a_" + e.name;
    case Expr::Kind::Param:
      return "ev->args[" + std::to_string(scope.signal->param_index(e.name)) + "]";
    case Expr::Kind::Unary:
      if (e.unary == UnaryOp::Not) {
        return "(uint32_t)!(" + c_expr(e.operands[0], scope, ScalarType::Bool) + ")";
      }
      return wrap("0u - " + c_expr(e.operands[0], scope, at), at);
    case Expr::Kind::Binary: {
      if (is_logical(e.binary)) {
        return "(uint32_t)((" + c_expr(e.operands[0], scope, ScalarType::Bool) + ") " +
               std::string(op_text(e.binary)) + " (" +
               c_expr(e.operands[1], scope, ScalarType::Bool) + "))";
      }
      if (is_arithmetic(e.binary)) {
        return wrap(c_expr(e.operands[0], scope, at) + " " + std::string(op_text(e.binary)) +
                        " " + c_expr(e.operands[1], scope, at),
                    at);
      }
      const ScalarType w = comparison_width(e, scope);
      return "(uint32_t)(" + c_expr(e.operands[0], scope, w) + " " +
             std::string(op_text(e.binary)) + " " + c_expr(e.operands[1], scope, w) + ")";
    }
  }
  return "0u";
}

class CEmitter {
 public:
  CEmitter(const Model& model, const Partition& partition, const InterfaceManifest& manifest,
           std::string name)
      : model_(model), partition_(partition), manifest_(manifest), name_(std::move(name)) {
    for (const auto& c : model_.classes) {
      for (const auto& s : c.signals) max_args_ = std::max<std::size_t>(max_args_, s.params.size());
    }
    for (const auto& s : manifest_.signals) {
      if (s.payload_total_bits > 0) {
        (s.direction == Direction::SwToHw ? needs_pack_ : needs_unpack_) = true;
      }
    }
  }

  CSources emit() { return {source(), header()}; }

 private:
  [[nodiscard]] bool is_sw(const std::string& cls) const { return partition_.of(cls) == Domain::SW; }

  std::string header() {
    std::ostringstream h;
    const std::string guard = upper(name_) + "_SW_H";
    h << "/* " << name_ << "_sw.h: software half of model '" << name_
      << "'. Generated, do not edit. */\n";
    h << "/* interface manifest " << detail::hex64(manifest_.model_hash) << " */\n";
    h << "#ifndef " << guard << "\n#define " << guard << "\n\n";
    h << "#include <stdint.h>\n\n";
    h << "/* Boundary signal ids and payload widths in bits. */\n";
    for (const auto& s : manifest_.signals) {
      h << "#define " << s.macro() << " " << s.id << "\n";
      h << "#define " << s.macro() << "_BITS " << s.payload_total_bits << "\n";
    }
    h << "\n/* Bus destinations. */\n";
    for (std::size_t i = 0; i < model_.instances.size(); ++i) {
      h << "#define " << detail::inst_macro(model_.instances[i].name) << " " << i << "u\n";
    }
    h << "\n#define SMC_FAULT_UNHANDLED 1u\n#define SMC_FAULT_OVERFLOW 2u\n#define SMC_FAULT_BAD_ID 3u\n\n";
    h << "/* Provided by the platform. Payloads pack fields from bit 0 of byte 0 upward. */\n";
    h << "void bus_send(uint32_t id, uint32_t dest, const uint8_t *payload);\n";
    h << "void smc_fault(uint32_t code);\n\n";
    h << "void " << name_ << "_init(void);\n";
    h << "/* Runs one run-to-completion step; returns 0 when every queue is empty. */\n";
    h << "int " << name_ << "_step(void);\n";
    h << "void " << name_ << "_bus_receive(uint32_t id, uint32_t dest, const uint8_t *payload);\n";
    for (const auto& inst : model_.instances) {
      if (!is_sw(inst.class_name)) continue;
      const ClassDef& c = *model_.find_class(inst.class_name);
      for (const auto& s : c.signals) h << "void " << inject_signature(inst.name, s) << ";\n";
    }
    h << "\n#endif /* " << guard << " */\n";
    return h.str();
  }

  std::string inject_signature(const std::string& inst, const SignalDef& s) const {
    std::string sig = name_ + "_inject_" + inst + "_" + s.name + "(";
    if (s.params.empty()) sig += "void";
    for (std::size_t i = 0; i < s.params.size(); ++i) {
      if (i != 0) sig += ", ";
      sig += "uint32_t " + s.params[i].name;
    }
    return sig + ")";
  }

  std::string source() {
    std::ostringstream o;
    o << "/* " << name_ << "_sw.c: software half of model '" << name_
      << "'. Generated, do not edit. */\n";
    o << "#include <stdint.h>\n#include \"" << name_ << "_sw.h\"\n\n";
    o << "#ifndef SMC_QUEUE_CAPACITY\n#define SMC_QUEUE_CAPACITY 32u\n#endif\n";
    o << "#define SMC_MAX_ARGS " << std::max<std::size_t>(max_args_, 1) << "u\n\n";
    o << "typedef struct {\n  uint32_t seq;\n  uint32_t event;\n  uint32_t args[SMC_MAX_ARGS];\n"
         "} smc_envelope_t;\n\n";
    o << "typedef struct {\n  smc_envelope_t items[SMC_QUEUE_CAPACITY];\n  uint32_t head;\n"
         "  uint32_t count;\n} smc_queue_t;\n\n";
    o << "static uint32_t smc_next_seq;\n\n";
    o << "static void smc_enqueue(smc_queue_t *q, uint32_t event, const uint32_t *args, uint32_t n)\n"
         "{\n"
         "  smc_envelope_t *e;\n"
         "  uint32_t i;\n"
         "  if (q->count == SMC_QUEUE_CAPACITY) {\n"
         "    smc_fault(SMC_FAULT_OVERFLOW);\n"
         "    return;\n"
         "  }\n"
         "  e = &q->items[(q->head + q->count) % SMC_QUEUE_CAPACITY];\n"
         "  e->seq = smc_next_seq++;\n"
         "  e->event = event;\n"
         "  for (i = 0; i < SMC_MAX_ARGS; ++i) e->args[i] = i < n ? args[i] : 0u;\n"
         "  q->count++;\n"
         "}\n\n";
    if (needs_pack_) {
      o << "static void smc_pack(uint8_t *buf, uint32_t offset, uint32_t width, uint32_t value)\n"
           "{\n"
           "  uint32_t i;\n"
           "  for (i = 0; i < width; ++i) {\n"
           "    const uint32_t bit = offset + i;\n"
           "    if ((value >> i) & 1u) buf[bit >> 3] |= (uint8_t)(1u << (bit & 7u));\n"
           "    else buf[bit >> 3] &= (uint8_t)~(1u << (bit & 7u));\n"
           "  }\n"
           "}\n\n";
    }
    if (needs_unpack_) {
      o << "static uint32_t smc_unpack(const uint8_t *buf, uint32_t offset, uint32_t width)\n"
           "{\n"
           "  uint32_t i, v = 0u;\n"
           "  for (i = 0; i < width; ++i) {\n"
           "    const uint32_t bit = offset + i;\n"
           "    v |= (uint32_t)((buf[bit >> 3] >> (bit & 7u)) & 1u) << i;\n"
           "  }\n"
           "  return v;\n"
           "}\n\n";
    }

    // Queues first: dispatch functions of one class may enqueue to any SW instance.
    for (const auto& inst : model_.instances) {
      if (is_sw(inst.class_name)) o << "static smc_queue_t q_" << inst.name << ";\n";
    }
    o << "\n";
    for (const auto& c : model_.classes) {
      if (is_sw(c.name)) emit_types(o, c);
    }
    for (const auto& c : model_.classes) {
      if (is_sw(c.name)) emit_dispatch(o, c);
    }
    for (const auto& inst : model_.instances) {
      if (is_sw(inst.class_name)) {
        o << "static " << inst.class_name << "_t o_" << inst.name << ";\n";
      }
    }
    o << "\n";
    emit_init(o);
    emit_step(o);
    emit_bus_receive(o);
    emit_injections(o);
    return o.str();
  }

  void emit_types(std::ostringstream& o, const ClassDef& c) {
    const std::string up = upper(c.name);
    o << "/* class " << c.name << " */\n";
    o << "enum {";
    for (std::size_t i = 0; i < c.machine.states.size(); ++i) {
      o << (i == 0 ? " " : ", ") << up << "_ST_" << upper(c.machine.states[i].name) << " = " << i;
    }
    o << " };\n";
    if (!c.signals.empty()) {
      o << "enum {";
      for (std::size_t i = 0; i < c.signals.size(); ++i) {
        o << (i == 0 ? " " : ", ") << up << "_EV_" << upper(c.signals[i].name) << " = " << i;
      }
      o << " };\n";
    }
    o << "typedef struct {\n  uint32_t state;\n";
    for (const auto& a : c.attributes) o << "  " << c_type(a.type) << " a_" << a.name << ";\n";
    o << "} " << c.name << "_t;\n\n";
  }

  void emit_dispatch(std::ostringstream& o, const ClassDef& c) {
    const std::string up = upper(c.name);
    o << "static void " << c.name << "_dispatch(" << c.name
      << "_t *self, const smc_envelope_t *ev)\n{\n";
    o << "  (void)ev;\n";
    o << "  switch (self->state) {\n";
    for (const auto& st : c.machine.states) {
      o << "  case " << up << "_ST_" << upper(st.name) << ":\n";
      if (!st.transitions.empty()) {
        o << "    switch (ev->event) {\n";
        for (const auto& t : st.transitions) {
          const SignalDef* sig = c.find_signal(t.signal);
          const ActionScope scope{&c, sig};
          o << "    case " << up << "_EV_" << upper(t.signal) << ":\n";
          emit_block(o, t.actions, scope, 3);
          o << "      self->state = " << up << "_ST_" << upper(t.target) << ";\n";
          o << "      return;\n";
        }
        o << "    default:\n      break;\n    }\n";
      }
      o << "    break;\n";
    }
    o << "  default:\n    break;\n  }\n";
    o << "  smc_fault(SMC_FAULT_UNHANDLED);\n}\n\n";
  }

  static void pad(std::ostringstream& o, int depth) {
    o << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  }

  void emit_block(std::ostringstream& o, const std::vector<Stmt>& body, const ActionScope& scope,
                  int depth) {
    for (const auto& s : body) {
      switch (s.kind) {
        case Stmt::Kind::Assign: {
          const AttributeDef* a = scope.cls->find_attribute(s.target);
          pad(o, depth);
          o << "self->a_" << s.target << " = (" << c_type(a->type) << ")"
            << c_expr(s.expr, scope, a->type) << ";\n";
          break;
        }
        case Stmt::Kind::Send:
          emit_send(o, s, scope, depth);
          break;
        case Stmt::Kind::If:
          pad(o, depth);
          o << "if (" << c_expr(s.expr, scope, ScalarType::Bool) << ") {\n";
          emit_block(o, s.then_body, scope, depth + 1);
          pad(o, depth);
          o << "}";
          if (s.has_else) {
            o << " else {\n";
            emit_block(o, s.else_body, scope, depth + 1);
            pad(o, depth);
            o << "}";
          }
          o << "\n";
          break;
      }
    }
  }

  void emit_send(std::ostringstream& o, const Stmt& s, const ActionScope& scope, int depth) {
    const ClassDef& target = *model_.class_of(s.target);
    const SignalDef& sig = *target.find_signal(s.signal);
    pad(o, depth);
    o << "{\n";
    if (is_sw(target.name)) {
      pad(o, depth + 1);
      o << "uint32_t a[SMC_MAX_ARGS] = {0u};\n";
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        pad(o, depth + 1);
        o << "a[" << i << "] = " << c_expr(s.args[i], scope, sig.params[i].type) << ";\n";
      }
      pad(o, depth + 1);
      o << "smc_enqueue(&q_" << s.target << ", " << upper(target.name) << "_EV_" << upper(sig.name)
        << ", a, " << s.args.size() << "u);\n";
    } else {
      const ManifestSignal* b = detail::find_boundary(manifest_, target.name, sig.name);
      const int bytes = std::max(1, (b->payload_total_bits + 7) / 8);
      pad(o, depth + 1);
      o << "uint8_t p[" << bytes << "] = {0u};\n";
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        pad(o, depth + 1);
        o << "smc_pack(p, " << b->payload[i].bit_offset << "u, " << b->payload[i].width_bits
          << "u, " << c_expr(s.args[i], scope, sig.params[i].type) << ");\n";
      }
      pad(o, depth + 1);
      o << "bus_send(" << b->macro() << ", " << detail::inst_macro(s.target) << ", p);\n";
    }
    pad(o, depth);
    o << "}\n";
  }

  void emit_init(std::ostringstream& o) {
    o << "void " << name_ << "_init(void)\n{\n";
    o << "  smc_next_seq = 0u;\n";
    for (const auto& inst : model_.instances) {
      if (!is_sw(inst.class_name)) continue;
      const ClassDef& c = *model_.find_class(inst.class_name);
      o << "  q_" << inst.name << ".head = 0u;\n";
      o << "  q_" << inst.name << ".count = 0u;\n";
      o << "  o_" << inst.name << ".state = " << upper(c.name) << "_ST_"
        << upper(c.machine.initial) << ";\n";
      for (const auto& a : c.attributes) {
        o << "  o_" << inst.name << ".a_" << a.name << " = " << a.initial.value << "u;\n";
      }
    }
    o << "}\n\n";
  }

  void emit_step(std::ostringstream& o) {
    o << "int " << name_ << "_step(void)\n{\n";
    o << "  smc_queue_t *best = 0;\n  uint32_t which = 0u;\n  smc_envelope_t ev;\n";
    for (const auto& inst : model_.instances) {
      if (!is_sw(inst.class_name)) continue;
      const std::string q = "q_" + inst.name;
      o << "  if (" << q << ".count != 0u && (best == 0 || " << q << ".items[" << q
        << ".head].seq < best->items[best->head].seq)) {\n";
      o << "    best = &" << q << ";\n    which = " << detail::inst_macro(inst.name) << ";\n  }\n";
    }
    o << "  if (best == 0) return 0;\n";
    o << "  ev = best->items[best->head];\n";
    o << "  best->head = (best->head + 1u) % SMC_QUEUE_CAPACITY;\n";
    o << "  best->count--;\n";
    o << "  switch (which) {\n";
    for (const auto& inst : model_.instances) {
      if (!is_sw(inst.class_name)) continue;
      o << "  case " << detail::inst_macro(inst.name) << ":\n    " << inst.class_name
        << "_dispatch(&o_" << inst.name << ", &ev);\n    break;\n";
    }
    o << "  default:\n    break;\n  }\n";
    o << "  return 1;\n}\n\n";
  }

  void emit_bus_receive(std::ostringstream& o) {
    o << "void " << name_ << "_bus_receive(uint32_t id, uint32_t dest, const uint8_t *payload)\n{\n";
    o << "  uint32_t a[SMC_MAX_ARGS] = {0u};\n";
    o << "  (void)payload;\n  (void)a;\n";
    o << "  switch (id) {\n";
    for (const auto& s : manifest_.signals) {
      if (s.direction != Direction::HwToSw) continue;
      o << "  case " << s.macro() << ":\n";
      for (std::size_t i = 0; i < s.payload.size(); ++i) {
        o << "    a[" << i << "] = smc_unpack(payload, " << s.payload[i].bit_offset << "u, "
          << s.payload[i].width_bits << "u);\n";
      }
      o << "    switch (dest) {\n";
      for (const auto& inst : model_.instances) {
        if (inst.class_name != s.receiver_class) continue;
        o << "    case " << detail::inst_macro(inst.name) << ":\n      smc_enqueue(&q_" << inst.name
          << ", " << upper(s.receiver_class) << "_EV_" << upper(s.signal) << ", a, "
          << s.payload.size() << "u);\n      return;\n";
      }
      o << "    default:\n      break;\n    }\n    break;\n";
    }
    o << "  default:\n    break;\n  }\n";
    o << "  (void)dest;\n  smc_fault(SMC_FAULT_BAD_ID);\n}\n";
  }

  void emit_injections(std::ostringstream& o) {
    for (const auto& inst : model_.instances) {
      if (!is_sw(inst.class_name)) continue;
      const ClassDef& c = *model_.find_class(inst.class_name);
      for (const auto& s : c.signals) {
        o << "\nvoid " << inject_signature(inst.name, s) << "\n{\n";
        o << "  uint32_t a[SMC_MAX_ARGS] = {0u};\n";
        for (std::size_t i = 0; i < s.params.size(); ++i) {
          o << "  a[" << i << "] = " << s.params[i].name << " & "
            << (s.params[i].type == ScalarType::U32 ? std::string("0xFFFFFFFFu")
                                                    : c_mask(s.params[i].type))
            << ";\n";
        }
        o << "  smc_enqueue(&q_" << inst.name << ", " << upper(c.name) << "_EV_" << upper(s.name)
          << ", a, " << s.params.size() << "u);\n}\n";
      }
    }
  }

  const Model& model_;
  const Partition& partition_;
  const InterfaceManifest& manifest_;
  std::string name_;
  std::size_t max_args_ = 0;
  bool needs_pack_ = false;
  bool needs_unpack_ = false;
};

}  // namespace

CSources emit_c(const Model& model, const Partition& partition, const InterfaceManifest& manifest,
                const std::string& name) {
  return CEmitter(model, partition, manifest, name).emit();
}

}  // namespace smc
