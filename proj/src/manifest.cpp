#include <cctype>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "codegen_util.hpp"
#include "smc/codegen.hpp"

namespace smc {

// ---------------------------------------------------------------------------
// Shared helpers

namespace detail {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string vhdl_ident(std::string_view prefix, std::string_view name) {
  std::string raw = std::string(prefix) + std::string(name);
  std::string out;
  for (char c : raw) {
    if (c == '_' && !out.empty() && out.back() == '_') continue;
    out += c;
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

bool is_vhdl_ident(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())) || s.back() == '_') {
    return false;
  }
  return s.find("__") == std::string_view::npos;
}

std::string inst_macro(std::string_view instance) { return "INST_" + upper(instance); }

const ManifestSignal* find_boundary(const InterfaceManifest& m, std::string_view cls,
                                    std::string_view signal) {
  for (const auto& s : m.signals) {
    if (s.receiver_class == cls && s.signal == signal) return &s;
  }
  return nullptr;
}

std::vector<PayloadField> layout(const SignalDef& sig) {
  std::vector<PayloadField> out;
  int offset = 0;
  for (const auto& p : sig.params) {
    out.push_back({p.name, width(p.type), offset});
    offset += width(p.type);
  }
  return out;
}

int total_bits(const SignalDef& sig) {
  int bits = 0;
  for (const auto& p : sig.params) bits += width(p.type);
  return bits;
}

int count_sends(const std::vector<Stmt>& body) {
  int n = 0;
  for (const auto& s : body) {
    if (s.kind == Stmt::Kind::Send) ++n;
    if (s.kind == Stmt::Kind::If) n += count_sends(s.then_body) + count_sends(s.else_body);
  }
  return n;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Manifest

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string mangle_signal(std::string_view cls, std::string_view signal) {
  return "SIG_" + detail::upper(cls) + "_" + detail::upper(signal);
}

std::string ManifestSignal::macro() const { return mangle_signal(receiver_class, signal); }

InterfaceManifest build_manifest(const Model& model, const Partition& partition) {
  InterfaceManifest m;
  m.model_hash = fnv1a64(pretty_print(model) + "--\n" + print_marks(marks_for(model, partition)));
  // boundary() is already sorted by (receiver class, signal).
  std::uint32_t id = 0;
  for (const auto& b : boundary(model, partition)) {
    const ClassDef* cls = model.find_class(b.receiver_class);
    const SignalDef* sig = cls->find_signal(b.signal);
    ManifestSignal s;
    s.id = id++;
    s.receiver_class = b.receiver_class;
    s.signal = b.signal;
    s.direction = b.direction;
    s.payload = detail::layout(*sig);
    s.payload_total_bits = detail::total_bits(*sig);
    m.signals.push_back(std::move(s));
  }
  return m;
}

std::string manifest_to_json(const InterfaceManifest& manifest) {
  nlohmann::json j;  // std::map-backed: keys come out sorted
  j["model_hash"] = detail::hex64(manifest.model_hash);
  j["signals"] = nlohmann::json::array();
  for (const auto& s : manifest.signals) {
    nlohmann::json e;
    e["id"] = s.id;
    e["receiver_class"] = s.receiver_class;
    e["signal"] = s.signal;
    e["direction"] = direction_name(s.direction);
    e["payload"] = nlohmann::json::array();
    for (const auto& f : s.payload) {
      e["payload"].push_back({{"name", f.name}, {"width_bits", f.width_bits}, {"bit_offset", f.bit_offset}});
    }
    e["payload_total_bits"] = s.payload_total_bits;
    j["signals"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::optional<InterfaceManifest> manifest_from_json(std::string_view text, std::string* error) {
  try {
    const auto j = nlohmann::json::parse(text);
    InterfaceManifest m;
    const auto hash = j.at("model_hash").get<std::string>();
    std::size_t used = 0;
    m.model_hash = std::stoull(hash, &used, 16);
    if (used != hash.size()) throw std::invalid_argument("model_hash is not hexadecimal");
    for (const auto& e : j.at("signals")) {
      ManifestSignal s;
      s.id = e.at("id").get<std::uint32_t>();
      s.receiver_class = e.at("receiver_class").get<std::string>();
      s.signal = e.at("signal").get<std::string>();
      const auto dir = e.at("direction").get<std::string>();
      if (dir == "sw_to_hw") {
        s.direction = Direction::SwToHw;
      } else if (dir == "hw_to_sw") {
        s.direction = Direction::HwToSw;
      } else {
        throw std::invalid_argument("unknown direction '" + dir + "'");
      }
      for (const auto& f : e.at("payload")) {
        s.payload.push_back({f.at("name").get<std::string>(), f.at("width_bits").get<int>(),
                             f.at("bit_offset").get<int>()});
      }
      s.payload_total_bits = e.at("payload_total_bits").get<int>();
      m.signals.push_back(std::move(s));
    }
    return m;
  } catch (const std::exception& ex) {
    if (error != nullptr) *error = ex.what();
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Generated identifier checks

std::vector<Diagnostic> check_name_clashes(const Model& model, const Partition& partition,
                                           const InterfaceManifest& manifest) {
  std::vector<Diagnostic> out;
  // key -> first origin, one table per namespace
  using Table = std::map<std::string, std::string>;
  auto claim = [&](Table& table, const std::string& key, const std::string& shown,
                   const std::string& origin) {
    auto [it, fresh] = table.emplace(key, origin);
    if (!fresh && it->second != origin) {
      out.push_back({"E_NAME_CLASH", origin,
                     "generated name '" + shown + "' also produced by " + it->second,
                     Severity::Error});
    }
  };
  auto vhdl_legal = [&](const std::string& ident, const std::string& origin) {
    if (!detail::is_vhdl_ident(ident)) {
      out.push_back({"E_BAD_IDENT", origin, "'" + ident + "' is not a legal VHDL identifier",
                     Severity::Error});
    }
  };

  Table c_globals;
  Table vhdl_globals;
  for (const auto& s : manifest.signals) {
    const std::string origin = s.receiver_class + "." + s.signal;
    for (const auto& n : {s.macro(), s.macro() + "_BITS"}) {
      claim(c_globals, n, n, origin);
      claim(vhdl_globals, detail::lower(n), n, origin);
      vhdl_legal(n, origin);
    }
  }
  for (const auto& inst : model.instances) {
    const std::string n = detail::inst_macro(inst.name);
    claim(c_globals, n, n, inst.name);
    claim(vhdl_globals, detail::lower(n), n, inst.name);
    vhdl_legal(n, inst.name);
  }

  for (const auto& c : model.classes) {
    const std::string up = detail::upper(c.name);
    if (partition.of(c.name) == Domain::SW) {
      claim(c_globals, c.name + "_t", c.name + "_t", c.name);
      claim(c_globals, c.name + "_dispatch", c.name + "_dispatch", c.name);
      for (const auto& st : c.machine.states) {
        const std::string n = up + "_ST_" + detail::upper(st.name);
        claim(c_globals, n, n, c.name + "." + st.name);
      }
      for (const auto& sig : c.signals) {
        const std::string n = up + "_EV_" + detail::upper(sig.name);
        claim(c_globals, n, n, c.name + "." + sig.name);
      }
      continue;
    }
    const std::string entity = detail::vhdl_ident("sm_", c.name);
    claim(vhdl_globals, detail::lower(entity), entity, c.name);
    Table locals;
    for (const auto& st : c.machine.states) {
      const std::string n = detail::vhdl_ident("st_", st.name);
      claim(locals, detail::lower(n), n, c.name + "." + st.name);
    }
    for (const auto& a : c.attributes) {
      for (const char* prefix : {"r_", "v_"}) {
        const std::string n = detail::vhdl_ident(prefix, a.name);
        claim(locals, detail::lower(n), n, c.name + "." + a.name);
      }
    }
    for (const auto& sig : c.signals) {
      for (const char* suffix : {"_valid", "_data"}) {
        const std::string n = detail::vhdl_ident("ev_", sig.name + suffix);
        claim(locals, detail::lower(n), n, c.name + "." + sig.name);
      }
    }
  }
  for (const auto& c : model.classes) {
    for (const auto& sig : c.signals) {
      const std::string n = "EV_" + detail::upper(c.name) + "_" + detail::upper(sig.name);
      claim(vhdl_globals, detail::lower(n), n, c.name + "." + sig.name);
      vhdl_legal(n, c.name + "." + sig.name);
    }
  }
  return out;
}

OutputNames output_names(const std::string& name) {
  return {name + "_sw.c", name + "_sw.h", name + "_hw.vhd", name + "_interface.json"};
}

std::string sanitize_model_name(std::string_view stem) {
  std::string raw;
  for (char c : stem) {
    raw += std::isalnum(static_cast<unsigned char>(c)) != 0 ? c : '_';
  }
  std::string out = detail::vhdl_ident("", raw);
  while (!out.empty() && out.front() == '_') out.erase(out.begin());
  if (out.empty() || std::isalpha(static_cast<unsigned char>(out.front())) == 0) out = "m" + out;
  return out;
}

Result<EmitOutput, std::vector<Diagnostic>> emit_all(const Model& model, const Partition& partition,
                                                     const std::string& name) {
  EmitOutput out;
  out.manifest = build_manifest(model, partition);
  if (auto clashes = check_name_clashes(model, partition, out.manifest); !clashes.empty()) {
    return clashes;
  }
  CSources c = emit_c(model, partition, out.manifest, name);
  out.c_source = std::move(c.source);
  out.c_header = std::move(c.header);
  out.vhdl_source = emit_vhdl(model, partition, out.manifest, name);
  out.manifest_json = manifest_to_json(out.manifest);
  return out;
}

}  // namespace smc
