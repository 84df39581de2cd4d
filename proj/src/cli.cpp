#include "smc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "smc/codegen.hpp"
#include "smc/frontend.hpp"
#include "smc/partition.hpp"
#include "smc/trace_json.hpp"

namespace smc {
namespace {

namespace fs = std::filesystem;

/// Thrown to leave a command with a given exit status once the reason is reported.
struct Exit {
  int code;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return s.str();
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  out.flush();
  return static_cast<bool>(out);
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::string input(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
      err_ << "error: cannot read '" << path << "'\n";
      throw Exit{kExitUsage};
    }
    return *text;
  }

  void report(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) err_ << d.to_string() << "\n";
  }

  template <class T>
  T parsed(Result<T, ParseError> r) {
    if (!r.ok()) {
      err_ << r.error().to_string() << "\n";
      throw Exit{kExitInput};
    }
    return std::move(r).value();
  }

  Model model(const std::string& path) {
    Model m = parsed(parse_model(input(path), path));
    const ValidationReport rep = validate(m);
    report(rep.diagnostics);
    if (!rep.ok()) throw Exit{kExitInput};
    return m;
  }

  MarkSet marks(const std::string& path) { return parsed(parse_marks(input(path), path)); }

  Scenario scenario(const Model& m, const std::string& path) {
    Scenario s = parsed(parse_scenario(input(path), path));
    if (auto diags = check_scenario(m, s); !diags.empty()) {
      report(diags);
      throw Exit{kExitRuntime};
    }
    return s;
  }

  Partition partition(const Model& m, const MarkSet& marks) {
    PartitionResult r = derive_partition(m, marks);
    report(r.diagnostics);
    if (!r.ok()) throw Exit{kExitInput};
    return std::move(r.partition);
  }

  void write(const std::string& path, const std::string& text) {
    if (!write_file(path, text)) {
      err_ << "error: cannot write '" << path << "'\n";
      throw Exit{kExitUsage};
    }
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

int cmd_validate(Session& s, const std::string& model_path) {
  s.model(model_path);
  return kExitOk;
}

struct RunOptions {
  std::string model;
  std::string scenario;
  std::string scheduler = "fifo";
  std::uint64_t seed = 0;
  std::string mode = "strict";
  std::uint64_t max_steps = 10000;
  std::string trace;
};

std::string expectation_tally(const Trace& t) {
  const auto passed = std::count_if(t.expectations.begin(), t.expectations.end(),
                                    [](const ExpectationResult& e) { return e.pass; });
  return std::to_string(passed) + "/" + std::to_string(t.expectations.size());
}

int cmd_run(Session& s, const RunOptions& o) {
  const Model m = s.model(o.model);
  const Scenario sc = s.scenario(m, o.scenario);
  ExecConfig cfg;
  cfg.scheduler = o.scheduler == "random" ? SchedulerKind::Random : SchedulerKind::GlobalFifo;
  cfg.seed = o.seed;
  cfg.mode = o.mode == "lenient" ? ExecMode::Lenient : ExecMode::Strict;
  cfg.max_steps = o.max_steps;
  const Trace t = run(m, sc, cfg);
  if (!o.trace.empty()) s.write(o.trace, to_jsonl(m, t));
  s.out() << "outcome=" << outcome_text(t) << " steps=" << t.events.size()
          << " expectations=" << expectation_tally(t) << "\n";
  return t.passed() ? kExitOk : kExitRuntime;
}

int cmd_partition(Session& s, const std::string& model_path, const std::string& marks_path) {
  const Model m = s.model(model_path);
  const Partition p = s.partition(m, s.marks(marks_path));
  for (const auto& c : m.classes) s.out() << c.name << " " << domain_name(p.of(c.name)) << "\n";
  for (const auto& sig : build_manifest(m, p).signals) {
    s.out() << sig.receiver_class << "." << sig.signal << " " << direction_name(sig.direction)
            << "\n";
  }
  return kExitOk;
}

struct CosimOptions {
  std::string model;
  std::string marks;
  std::string scenario;
  std::uint64_t latency = 1;
  std::string trace;
};

int cmd_cosim(Session& s, const CosimOptions& o) {
  const Model m = s.model(o.model);
  const Partition p = s.partition(m, s.marks(o.marks));
  const Scenario sc = s.scenario(m, o.scenario);
  const Trace reference = run(m, sc);
  const PartitionedTrace pt = cosim(m, p, sc, {}, o.latency);
  if (!o.trace.empty()) s.write(o.trace, to_jsonl(m, pt));
  if (reference.outcome != Outcome::Quiescent || pt.merged.outcome != Outcome::Quiescent) {
    s.err() << "reference: " << outcome_text(reference) << "\n";
    s.err() << "partitioned: " << outcome_text(pt.merged) << "\n";
    return kExitRuntime;
  }
  const EquivalenceReport rep = equivalence_check(reference, pt, sc.confluent);
  s.out() << rep.summary() << "\n";
  s.out() << "crossings=" << pt.crossings << " steps=" << pt.merged.events.size()
          << " expectations=" << expectation_tally(pt.merged) << "\n";
  for (const auto* l : {&rep.l1, &rep.l2, &rep.l3}) {
    if (!l->divergence.empty()) s.err() << l->divergence << "\n";
  }
  return rep.ok() ? kExitOk : kExitMismatch;
}

int report_interfaces(Session& s, const InterfaceReport& r) {
  for (const auto& d : r.divergences) s.out() << "divergence " << d << "\n";
  if (!r.pass) return kExitMismatch;
  s.out() << "interfaces consistent\n";
  return kExitOk;
}

int cmd_gen(Session& s, const std::string& model_path, const std::string& marks_path,
            const std::string& out_dir) {
  const Model m = s.model(model_path);
  const Partition p = s.partition(m, s.marks(marks_path));
  const std::string name = sanitize_model_name(fs::path(model_path).stem().string());
  auto emitted = emit_all(m, p, name);
  if (!emitted.ok()) {
    s.report(emitted.error());
    return kExitInput;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    s.err() << "error: cannot create directory '" << out_dir << "'\n";
    return kExitUsage;
  }
  const EmitOutput& e = emitted.value();
  const OutputNames names = output_names(name);
  const fs::path dir(out_dir);
  s.write((dir / names.c_source).string(), e.c_source);
  s.write((dir / names.c_header).string(), e.c_header);
  s.write((dir / names.vhdl).string(), e.vhdl_source);
  s.write((dir / names.manifest).string(), e.manifest_json);
  for (const auto& f : {names.c_source, names.c_header, names.vhdl, names.manifest}) {
    s.out() << "wrote " << (dir / f).string() << "\n";
  }
  const auto header = read_file((dir / names.c_header).string());
  const auto vhdl = read_file((dir / names.vhdl).string());
  if (!header || !vhdl) return kExitMismatch;
  return report_interfaces(s, check_interfaces(*header, *vhdl, e.manifest));
}

int cmd_checkgen(Session& s, const std::string& out_dir) {
  static constexpr std::string_view kSuffix = "_interface.json";
  std::vector<std::string> manifests;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(out_dir, ec)) {
    const std::string f = entry.path().filename().string();
    if (f.size() > kSuffix.size() && f.ends_with(kSuffix)) manifests.push_back(f);
  }
  if (ec || manifests.size() != 1) {
    s.err() << "error: expected exactly one *" << kSuffix << " in '" << out_dir << "', found "
            << manifests.size() << "\n";
    return kExitUsage;
  }
  const std::string name = manifests.front().substr(0, manifests.front().size() - kSuffix.size());
  const OutputNames names = output_names(name);
  const fs::path dir(out_dir);
  for (const auto& f : {names.c_source, names.c_header, names.vhdl}) {
    if (!fs::is_regular_file(dir / f)) {
      s.err() << "error: missing " << (dir / f).string() << "\n";
      return kExitUsage;
    }
  }
  const std::string manifest_text = s.input((dir / names.manifest).string());
  std::string why;
  const auto manifest = manifest_from_json(manifest_text, &why);
  if (!manifest) {
    s.out() << "divergence manifest: " << why << "\n";
    return kExitMismatch;
  }
  return report_interfaces(s, check_interfaces(s.input((dir / names.c_header).string()),
                                               s.input((dir / names.vhdl).string()), *manifest));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"State-machine model compiler and simulator", "smc"};
  app.require_subcommand(1);

  std::string model_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a model");
  validate_cmd->add_option("model", model_path, "Model file")->required();

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Execute a scenario against a model");
  run_cmd->add_option("model", run_opts.model, "Model file")->required();
  run_cmd->add_option("--scenario", run_opts.scenario, "Scenario file")->required();
  run_cmd->add_option("--scheduler", run_opts.scheduler, "fifo or random")
      ->check(CLI::IsMember({"fifo", "random"}));
  run_cmd->add_option("--seed", run_opts.seed, "Random scheduler seed");
  run_cmd->add_option("--mode", run_opts.mode, "strict or lenient")
      ->check(CLI::IsMember({"strict", "lenient"}));
  run_cmd->add_option("--max-steps", run_opts.max_steps, "Dispatch step limit");
  run_cmd->add_option("--trace", run_opts.trace, "JSON Lines trace output");

  std::string marks_path;
  auto* partition_cmd = app.add_subcommand("partition", "Show the partition selected by marks");
  partition_cmd->add_option("model", model_path, "Model file")->required();
  partition_cmd->add_option("--marks", marks_path, "Marks file")->required();

  CosimOptions cosim_opts;
  auto* cosim_cmd = app.add_subcommand("cosim", "Co-simulate a partition against the reference");
  cosim_cmd->add_option("model", cosim_opts.model, "Model file")->required();
  cosim_cmd->add_option("--marks", cosim_opts.marks, "Marks file")->required();
  cosim_cmd->add_option("--scenario", cosim_opts.scenario, "Scenario file")->required();
  cosim_cmd->add_option("--latency", cosim_opts.latency, "Bus latency in rounds")
      ->check(CLI::PositiveNumber);
  cosim_cmd->add_option("--trace", cosim_opts.trace, "JSON Lines trace output");

  std::string out_dir;
  auto* gen_cmd = app.add_subcommand("gen", "Emit C, VHDL and the interface manifest");
  gen_cmd->add_option("model", model_path, "Model file")->required();
  gen_cmd->add_option("--marks", marks_path, "Marks file")->required();
  gen_cmd->add_option("-o,--out", out_dir, "Output directory")->required();

  auto* checkgen_cmd = app.add_subcommand("checkgen", "Check emitted files against their manifest");
  checkgen_cmd->add_option("out_dir", out_dir, "Directory written by gen")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Session s(out, err);
  try {
    if (*validate_cmd) return cmd_validate(s, model_path);
    if (*run_cmd) return cmd_run(s, run_opts);
    if (*partition_cmd) return cmd_partition(s, model_path, marks_path);
    if (*cosim_cmd) return cmd_cosim(s, cosim_opts);
    if (*gen_cmd) return cmd_gen(s, model_path, marks_path, out_dir);
    if (*checkgen_cmd) return cmd_checkgen(s, out_dir);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}

}  // namespace smc
