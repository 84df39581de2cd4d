#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "smc/codegen.hpp"

namespace smc {
namespace {

/// Definitions found in one text: name -> raw values in order of appearance.
struct Scan {
  std::map<std::string, std::vector<std::string>> defs;
  std::set<std::string> tokens;  // every SIG_ identifier mentioned anywhere
};

Scan scan(std::string_view text, const std::regex& def, const std::regex& value) {
  static const std::regex kToken(R"(\bSIG_\w*)");
  Scan out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    for (auto it = std::sregex_iterator(line.begin(), line.end(), kToken);
         it != std::sregex_iterator(); ++it) {
      out.tokens.insert(it->str());
    }
    std::smatch m;
    if (!std::regex_search(line, m, def)) continue;
    std::smatch v;
    const std::string rest = m[2].str();
    out.defs[m[1].str()].push_back(std::regex_match(rest, v, value) ? v[1].str() : "?" + rest);
  }
  return out;
}

/// Strict decimal: digits only, no leading zeros.
bool decimal(const std::string& s) {
  if (s.empty() || s.size() > 10 || (s.size() > 1 && s.front() == '0')) return false;
  return s.find_first_not_of("0123456789") == std::string::npos;
}

void compare(const std::string& label, const Scan& found,
             const std::map<std::string, std::uint64_t>& expected,
             std::vector<std::string>& divergences) {
  for (const auto& [name, want] : expected) {
    const auto it = found.defs.find(name);
    if (it == found.defs.end()) {
      divergences.push_back(label + ": missing " + name);
      continue;
    }
    if (it->second.size() != 1) {
      divergences.push_back(label + ": duplicate " + name + " (" +
                            std::to_string(it->second.size()) + " definitions)");
      continue;
    }
    const std::string& got = it->second.front();
    if (!decimal(got)) {
      divergences.push_back(label + ": malformed " + name + ": '" +
                            (got.starts_with("?") ? got.substr(1) : got) + "'");
      continue;
    }
    if (std::stoull(got) != want) {
      divergences.push_back(label + ": " + name + ": " + got + " != " + std::to_string(want));
    }
  }
  for (const auto& t : found.tokens) {
    if (!expected.contains(t)) divergences.push_back(label + ": unknown " + t);
  }
}

}  // namespace

InterfaceReport check_interfaces(std::string_view c_header, std::string_view vhdl_source,
                                 const InterfaceManifest& manifest) {
  static const std::regex kCDef(R"(^\s*#\s*define\s+(SIG_\w+)(.*)$)");
  static const std::regex kCValue(R"(^\s+(\S+?)u?\s*(/\*.*\*/|//.*)?\s*$)");
  static const std::regex kVDef(R"(^\s*constant\s+(SIG_\w+)(.*)$)", std::regex::icase);
  static const std::regex kVValue(R"(^\s*:\s*natural\s*:=\s*(\S+?)\s*;\s*(--.*)?$)",
                                  std::regex::icase);

  std::map<std::string, std::uint64_t> expected;
  for (const auto& s : manifest.signals) {
    expected[s.macro()] = s.id;
    expected[s.macro() + "_BITS"] = static_cast<std::uint64_t>(s.payload_total_bits);
  }
  InterfaceReport r;
  compare("c_header", scan(c_header, kCDef, kCValue), expected, r.divergences);
  compare("vhdl", scan(vhdl_source, kVDef, kVValue), expected, r.divergences);
  r.pass = r.divergences.empty();
  return r;
}

}  // namespace smc
