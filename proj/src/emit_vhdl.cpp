#include <algorithm>
#include <cstdio>
#include <sstream>

#include "codegen_util.hpp"
#include "smc/codegen.hpp"

namespace smc {
namespace {

using detail::upper;
using detail::vhdl_ident;

std::string vhdl_literal(Value v, ScalarType t) {
  v &= mask(t);
  if (t == ScalarType::Bool) return v != 0 ? "unsigned'(\"1\")" : "unsigned'(\"0\")";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*X", width(t) / 4, v);
  return std::string("unsigned'(x\"") + buf + "\")";
}

std::string range(int bits) { return "(" + std::to_string(bits - 1) + " downto 0)"; }

class VhdlEmitter {
 public:
  VhdlEmitter(const Model& model, const Partition& partition, const InterfaceManifest& manifest,
              std::string name)
      : model_(model), partition_(partition), manifest_(manifest), name_(std::move(name)) {
    for (const auto& s : manifest_.signals) payload_max_ = std::max(payload_max_, s.payload_total_bits);
    for (const auto& c : model_.classes) {
      for (const auto& s : c.signals) payload_max_ = std::max(payload_max_, detail::total_bits(s));
    }
  }

  std::string emit() {
    std::ostringstream o;
    o << "-- " << name_ << "_hw.vhd: hardware half of model '" << name_
      << "'. Generated, do not edit.\n";
    o << "-- interface manifest " << detail::hex64(manifest_.model_hash) << "\n\n";
    emit_package(o);
    for (const auto& c : model_.classes) {
      if (is_hw(c.name)) emit_entity(o, c);
    }
    emit_top(o);
    return o.str();
  }

 private:
  [[nodiscard]] bool is_hw(const std::string& cls) const { return partition_.of(cls) == Domain::HW; }

  static void libraries(std::ostringstream& o) {
    o << "library ieee;\nuse ieee.std_logic_1164.all;\nuse ieee.numeric_std.all;\n";
  }

  void emit_package(std::ostringstream& o) {
    const std::string pkg = name_ + "_bus";
    libraries(o);
    o << "\npackage " << pkg << " is\n";
    o << "  -- Boundary signal ids and payload widths in bits.\n";
    for (const auto& s : manifest_.signals) {
      o << "  constant " << s.macro() << " : natural := " << s.id << ";\n";
      o << "  constant " << s.macro() << "_BITS : natural := " << s.payload_total_bits << ";\n";
    }
    o << "\n  -- Bus destinations.\n";
    for (std::size_t i = 0; i < model_.instances.size(); ++i) {
      o << "  constant " << detail::inst_macro(model_.instances[i].name) << " : natural := " << i
        << ";\n";
    }
    o << "\n  -- Class-local event numbers used for sends that stay in hardware.\n";
    for (const auto& c : model_.classes) {
      for (std::size_t i = 0; i < c.signals.size(); ++i) {
        o << "  constant EV_" << upper(c.name) << "_" << upper(c.signals[i].name)
          << " : natural := " << i << ";\n";
      }
    }
    o << "\n  constant BUS_PAYLOAD_MAX : natural := " << std::max(payload_max_, 1) << ";\n\n";
    o << "  -- boundary = '1': id is a boundary signal id and the slot goes to the bus;\n";
    o << "  -- boundary = '0': id is an EV_ number for a hardware instance.\n";
    o << "  type tx_slot_t is record\n"
         "    valid    : std_logic;\n"
         "    boundary : std_logic;\n"
         "    id       : natural;\n"
         "    dest     : natural;\n"
         "    payload  : std_logic_vector(BUS_PAYLOAD_MAX - 1 downto 0);\n"
         "  end record;\n";
    o << "  type tx_slots_t is array (natural range <>) of tx_slot_t;\n";
    o << "  constant TX_IDLE : tx_slot_t := ('0', '0', 0, 0, (others => '0'));\n\n";
    o << "  function to_u1(b : boolean) return unsigned;\n";
    o << "  function is_true(u : unsigned) return boolean;\n";
    o << "end package " << pkg << ";\n\n";
    o << "package body " << pkg << " is\n";
    o << "  function to_u1(b : boolean) return unsigned is\n  begin\n"
         "    if b then\n      return unsigned'(\"1\");\n    end if;\n"
         "    return unsigned'(\"0\");\n  end function;\n\n";
    o << "  function is_true(u : unsigned) return boolean is\n  begin\n"
         "    return u(u'low) = '1';\n  end function;\n";
    o << "end package body " << pkg << ";\n";
  }

  /// Width of the data port for `sig` of `cls`: the manifest constant when the signal
  /// crosses the boundary, a literal otherwise.
  [[nodiscard]] std::string data_range(const ClassDef& cls, const SignalDef& sig) const {
    if (const ManifestSignal* b = detail::find_boundary(manifest_, cls.name, sig.name)) {
      return "(" + b->macro() + "_BITS - 1 downto 0)";
    }
    return range(detail::total_bits(sig));
  }

  static std::string valid_port(const SignalDef& s) { return vhdl_ident("ev_", s.name + "_valid"); }
  static std::string data_port(const SignalDef& s) { return vhdl_ident("ev_", s.name + "_data"); }

  [[nodiscard]] int tx_slots(const ClassDef& c) const {
    int n = 0;
    for (const auto& st : c.machine.states) {
      for (const auto& t : st.transitions) n = std::max(n, detail::count_sends(t.actions));
    }
    return n;
  }

  std::string expr(const Expr& e, const ActionScope& scope, ScalarType at) const {
    switch (e.kind) {
      case Expr::Kind::Literal:
        return vhdl_literal(static_cast<Value>(e.literal.value), at);
      case Expr::Kind::Attr:
        return vhdl_ident("v_", e.name);
      case Expr::Kind::Param: {
        const auto fields = detail::layout(*scope.signal);
        const auto& f = fields[static_cast<std::size_t>(scope.signal->param_index(e.name))];
        return "unsigned(" + data_port(*scope.signal) + "(" +
               std::to_string(f.bit_offset + f.width_bits - 1) + " downto " +
               std::to_string(f.bit_offset) + "))";
      }
      case Expr::Kind::Unary:
        if (e.unary == UnaryOp::Not) {
          return "(not " + expr(e.operands[0], scope, ScalarType::Bool) + ")";
        }
        return "(to_unsigned(0, " + std::to_string(width(at)) + ") - " +
               expr(e.operands[0], scope, at) + ")";
      case Expr::Kind::Binary: {
        const Expr& l = e.operands[0];
        const Expr& r = e.operands[1];
        switch (e.binary) {
          case BinaryOp::And:
            return "(" + expr(l, scope, ScalarType::Bool) + " and " +
                   expr(r, scope, ScalarType::Bool) + ")";
          case BinaryOp::Or:
            return "(" + expr(l, scope, ScalarType::Bool) + " or " +
                   expr(r, scope, ScalarType::Bool) + ")";
          case BinaryOp::Add:
            return "(" + expr(l, scope, at) + " + " + expr(r, scope, at) + ")";
          case BinaryOp::Sub:
            return "(" + expr(l, scope, at) + " - " + expr(r, scope, at) + ")";
          case BinaryOp::Mul:
            return "resize(" + expr(l, scope, at) + " * " + expr(r, scope, at) + ", " +
                   std::to_string(width(at)) + ")";
          default: {
            static constexpr std::pair<BinaryOp, const char*> kRel[] = {
                {BinaryOp::Eq, "="}, {BinaryOp::Ne, "/="}, {BinaryOp::Lt, "<"},
                {BinaryOp::Le, "<="}, {BinaryOp::Gt, ">"}, {BinaryOp::Ge, ">="}};
            const char* op = "=";
            for (const auto& [k, text] : kRel) {
              if (k == e.binary) op = text;
            }
            const ScalarType w = comparison_width(e, scope);
            return "to_u1(" + expr(l, scope, w) + " " + op + " " + expr(r, scope, w) + ")";
          }
        }
      }
    }
    return "unsigned'(\"0\")";
  }

  static void pad(std::ostringstream& o, int depth) {
    o << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  }

  void block(std::ostringstream& o, const std::vector<Stmt>& body, const ActionScope& scope,
             int depth, int& slot) const {
    for (const auto& s : body) {
      switch (s.kind) {
        case Stmt::Kind::Assign: {
          const AttributeDef* a = scope.cls->find_attribute(s.target);
          pad(o, depth);
          o << vhdl_ident("v_", s.target) << " := " << expr(s.expr, scope, a->type) << ";\n";
          break;
        }
        case Stmt::Kind::Send:
          send(o, s, scope, depth, slot++);
          break;
        case Stmt::Kind::If:
          pad(o, depth);
          o << "if is_true(" << expr(s.expr, scope, ScalarType::Bool) << ") then\n";
          block(o, s.then_body, scope, depth + 1, slot);
          if (s.has_else) {
            pad(o, depth);
            o << "else\n";
            block(o, s.else_body, scope, depth + 1, slot);
          }
          pad(o, depth);
          o << "end if;\n";
          break;
      }
    }
  }

  void send(std::ostringstream& o, const Stmt& s, const ActionScope& scope, int depth,
            int slot) const {
    const ClassDef& target = *model_.class_of(s.target);
    const SignalDef& sig = *target.find_signal(s.signal);
    const bool crosses = !is_hw(target.name);
    const auto fields = detail::layout(sig);
    pad(o, depth);
    o << "v_payload := (others => '0');\n";
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      pad(o, depth);
      o << "v_payload(" << fields[i].bit_offset + fields[i].width_bits - 1 << " downto "
        << fields[i].bit_offset << ") := std_logic_vector("
        << expr(s.args[i], scope, sig.params[i].type) << ");\n";
    }
    const std::string id = crosses ? detail::find_boundary(manifest_, target.name, sig.name)->macro()
                                   : "EV_" + upper(target.name) + "_" + upper(sig.name);
    pad(o, depth);
    o << "tx(" << slot << ") <= ('1', '" << (crosses ? '1' : '0') << "', " << id << ", "
      << detail::inst_macro(s.target) << ", v_payload);\n";
  }

  void emit_entity(std::ostringstream& o, const ClassDef& c) {
    const std::string entity = vhdl_ident("sm_", c.name);
    const int slots = tx_slots(c);
    o << "\n-- class " << c.name << "\n";
    libraries(o);
    o << "use work." << name_ << "_bus.all;\n\n";
    o << "entity " << entity << " is\n  port (\n";
    std::vector<std::string> ports = {"clk : in std_logic", "rst : in std_logic"};
    for (const auto& s : c.signals) {
      ports.push_back(valid_port(s) + " : in std_logic");
      if (detail::total_bits(s) > 0) {
        ports.push_back(data_port(s) + " : in std_logic_vector" + data_range(c, s));
      }
    }
    if (slots > 0) ports.push_back("tx : out tx_slots_t(0 to " + std::to_string(slots - 1) + ")");
    for (std::size_t i = 0; i < ports.size(); ++i) {
      o << "    " << ports[i] << (i + 1 < ports.size() ? ";\n" : "\n");
    }
    o << "  );\nend entity " << entity << ";\n\n";

    o << "architecture rtl of " << entity << " is\n";
    o << "  type state_t is (";
    for (std::size_t i = 0; i < c.machine.states.size(); ++i) {
      o << (i == 0 ? "" : ", ") << vhdl_ident("st_", c.machine.states[i].name);
    }
    o << ");\n";
    o << "  signal state : state_t;\n";
    for (const auto& a : c.attributes) {
      o << "  signal " << vhdl_ident("r_", a.name) << " : unsigned" << range(width(a.type)) << ";\n";
    }
    o << "begin\n";
    o << "  process (clk)\n";
    for (const auto& a : c.attributes) {
      o << "    variable " << vhdl_ident("v_", a.name) << " : unsigned" << range(width(a.type))
        << ";\n";
    }
    if (slots > 0) {
      o << "    variable v_payload : std_logic_vector(BUS_PAYLOAD_MAX - 1 downto 0);\n";
    }
    o << "  begin\n";
    o << "    if rising_edge(clk) then\n";
    if (slots > 0) o << "      tx <= (others => TX_IDLE);\n";
    o << "      if rst = '1' then\n";
    o << "        state <= " << vhdl_ident("st_", c.machine.initial) << ";\n";
    for (const auto& a : c.attributes) {
      o << "        " << vhdl_ident("r_", a.name) << " <= "
        << vhdl_literal(static_cast<Value>(a.initial.value), a.type) << ";\n";
    }
    o << "      else\n";
    for (const auto& a : c.attributes) {
      o << "        " << vhdl_ident("v_", a.name) << " := " << vhdl_ident("r_", a.name) << ";\n";
    }
    o << "        case state is\n";
    for (const auto& st : c.machine.states) {
      o << "          when " << vhdl_ident("st_", st.name) << " =>\n";
      if (st.transitions.empty()) {
        o << "            null;\n";
        continue;
      }
      for (std::size_t i = 0; i < st.transitions.size(); ++i) {
        const TransitionDef& t = st.transitions[i];
        const SignalDef* sig = c.find_signal(t.signal);
        const ActionScope scope{&c, sig};
        o << "            " << (i == 0 ? "if " : "elsif ") << valid_port(*sig) << " = '1' then\n";
        int slot = 0;
        block(o, t.actions, scope, 7, slot);
        o << "              state <= " << vhdl_ident("st_", t.target) << ";\n";
      }
      o << "            end if;\n";
    }
    o << "        end case;\n";
    for (const auto& a : c.attributes) {
      o << "        " << vhdl_ident("r_", a.name) << " <= " << vhdl_ident("v_", a.name) << ";\n";
    }
    o << "      end if;\n    end if;\n  end process;\nend architecture rtl;\n";
  }

  void emit_top(std::ostringstream& o) {
    std::vector<const InstanceDecl*> hw;
    for (const auto& inst : model_.instances) {
      if (is_hw(inst.class_name)) hw.push_back(&inst);
    }
    if (hw.empty()) return;
    const std::string top = name_ + "_hw";
    o << "\n-- hardware instances\n";
    libraries(o);
    o << "use work." << name_ << "_bus.all;\n\n";
    o << "entity " << top << " is\n  port (\n";
    std::vector<std::string> ports = {"clk : in std_logic", "rst : in std_logic"};
    for (const InstanceDecl* inst : hw) {
      const ClassDef& c = *model_.find_class(inst->class_name);
      const std::string p = inst->name + "_";
      for (const auto& s : c.signals) {
        ports.push_back(vhdl_ident(p, valid_port(s)) + " : in std_logic");
        if (detail::total_bits(s) > 0) {
          ports.push_back(vhdl_ident(p, data_port(s)) + " : in std_logic_vector" + data_range(c, s));
        }
      }
      if (const int slots = tx_slots(c); slots > 0) {
        ports.push_back(vhdl_ident(p, "tx") + " : out tx_slots_t(0 to " +
                        std::to_string(slots - 1) + ")");
      }
    }
    for (std::size_t i = 0; i < ports.size(); ++i) {
      o << "    " << ports[i] << (i + 1 < ports.size() ? ";\n" : "\n");
    }
    o << "  );\nend entity " << top << ";\n\n";
    o << "architecture structural of " << top << " is\nbegin\n";
    for (const InstanceDecl* inst : hw) {
      const ClassDef& c = *model_.find_class(inst->class_name);
      const std::string p = inst->name + "_";
      std::vector<std::string> map = {"clk => clk", "rst => rst"};
      for (const auto& s : c.signals) {
        map.push_back(valid_port(s) + " => " + vhdl_ident(p, valid_port(s)));
        if (detail::total_bits(s) > 0) {
          map.push_back(data_port(s) + " => " + vhdl_ident(p, data_port(s)));
        }
      }
      if (tx_slots(c) > 0) map.push_back("tx => " + vhdl_ident(p, "tx"));
      o << "  " << vhdl_ident("u_", inst->name) << " : entity work." << vhdl_ident("sm_", c.name)
        << "\n    port map (\n";
      for (std::size_t i = 0; i < map.size(); ++i) {
        o << "      " << map[i] << (i + 1 < map.size() ? ",\n" : "\n");
      }
      o << "    );\n";
    }
    o << "end architecture structural;\n";
  }

  const Model& model_;
  const Partition& partition_;
  const InterfaceManifest& manifest_;
  std::string name_;
  int payload_max_ = 0;
};

}  // namespace

std::string emit_vhdl(const Model& model, const Partition& partition,
                      const InterfaceManifest& manifest, const std::string& name) {
  return VhdlEmitter(model, partition, manifest, name).emit();
}

}  // namespace smc
