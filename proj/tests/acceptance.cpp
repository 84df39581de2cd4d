// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <unistd.h>

#include "smc/campaign.hpp"
#include "smc/cli.hpp"
#include "smc/trace_json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace smc;
using smc::test::corpus;
using smc::test::kCorpusModels;
using smc::test::kCorpusPairs;
using smc::test::slurp;

namespace {

constexpr std::uint64_t kCausalitySeeds = 1000;
constexpr std::uint64_t kFreedomSeeds = 100;
constexpr int kMinMutations = 20;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int n, const char* name, const Verdict& v) {
  std::printf("criterion %d %-28s %s  %s\n", n, name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

std::string str(std::size_t n) { return std::to_string(n); }

bool confluent_pair(const test::CorpusPair& p) { return test::corpus_scenario(p.scenario).confluent; }

Verdict determinism() {
  Verdict v;
  for (const auto& p : kCorpusPairs) {
    const Model m = test::corpus_model(p.model);
    const Scenario s = test::corpus_scenario(p.scenario);
    if (to_jsonl(m, run(m, s)) != to_jsonl(m, run(m, s))) {
      v.pass = false;
      v.detail += std::string(p.scenario) + " differs; ";
    }
  }
  if (v.pass) v.detail = str(std::size(kCorpusPairs)) + "/" + str(std::size(kCorpusPairs)) + " pairs byte-identical";
  return v;
}

/// Seed campaigns for every corpus pair, shared by criteria 2-4.
std::vector<SeedCampaign> campaigns() {
  std::vector<SeedCampaign> out;
  for (const auto& p : kCorpusPairs) {
    out.push_back(seed_campaign(test::corpus_model(p.model), test::corpus_scenario(p.scenario), 0,
                                kCausalitySeeds));
  }
  return out;
}

Verdict campaign_check(const std::vector<SeedCampaign>& all, bool SeedOutcome::*check) {
  Verdict v;
  std::string worst;
  std::size_t min_ok = kCausalitySeeds;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t ok = all[i].runs.size() - all[i].count_failing(check);
    if (ok < min_ok) {
      min_ok = ok;
      worst = kCorpusPairs[i].scenario;
    }
    if (ok != kCausalitySeeds) v.pass = false;
  }
  v.detail = "min " + str(min_ok) + "/" + str(kCausalitySeeds) + " seeds over " + str(all.size()) + " pairs";
  if (!v.pass) v.detail += " (worst " + worst + ")";
  return v;
}

Verdict scheduler_freedom(const std::vector<SeedCampaign>& all) {
  Verdict v;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!confluent_pair(kCorpusPairs[i])) continue;
    ++pairs;
    std::size_t ok = 0;
    for (std::size_t k = 0; k < kFreedomSeeds; ++k) ok += all[i].runs[k].matches_reference ? 1 : 0;
    if (ok != kFreedomSeeds) {
      v.pass = false;
      v.detail += std::string(kCorpusPairs[i].scenario) + " " + str(ok) + "/" + str(kFreedomSeeds) + "; ";
    }
  }
  if (v.pass) v.detail = str(kFreedomSeeds) + "/" + str(kFreedomSeeds) + " seeds on " + str(pairs) + " confluent pairs";
  return v;
}

struct SweepRow {
  const char* model;
  const char* scenario;
  bool confluent;
  std::vector<PartitionOutcome> outcomes;
};

std::vector<SweepRow> sweep() {
  std::vector<SweepRow> rows;
  for (const auto& p : kCorpusPairs) {
    const Model m = test::corpus_model(p.model);
    const Scenario s = test::corpus_scenario(p.scenario);
    rows.push_back({p.model, p.scenario, s.confluent, partition_sweep(m, s, p.model)});
  }
  return rows;
}

std::string run_cli_quiet(const std::vector<std::string>& args, int* code) {
  std::ostringstream out;
  std::ostringstream err;
  *code = run_cli(args, out, err);
  return out.str() + err.str();
}

/// Applies single-character edits to SIG_ ids and widths in generated files and
/// counts how many `smc checkgen` rejects with exit status 3.
Verdict mutations(int* applied) {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / ("smc_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  int detected = 0;
  *applied = 0;
  struct Target {
    const char* model;
    const char* marks;
  };
  const Target targets[] = {{"pingpong", "mark isHardware on Pong;\n"},
                            {"counter", "mark isHardware on Counter;\n"},
                            {"widths", "mark isHardware on Sink;\n"},
                            {"race", "mark isHardware on Arbiter;\n"}};
  for (const auto& t : targets) {
    const fs::path dir = root / t.model;
    fs::create_directories(dir);
    const std::string marks = (dir / "p.marks").string();
    std::ofstream(marks) << t.marks;
    int code = 0;
    run_cli_quiet({"gen", corpus(std::string("models/") + t.model + ".mdl"), "--marks", marks, "-o", (dir / "out").string()}, &code);
    if (code != 0) {
      v.pass = false;
      v.detail += std::string("gen failed for ") + t.model + "; ";
      continue;
    }
    for (const char* file : {"_sw.h", "_hw.vhd"}) {
      const fs::path path = dir / "out" / (std::string(t.model) + file);
      const std::string original = slurp(path.string());
      // Each SIG_ definition value: bump its last digit.
      std::istringstream lines(original);
      std::string line;
      std::size_t offset = 0;
      while (std::getline(lines, line)) {
        const bool def = line.find("#define SIG_") == 0 || line.find("  constant SIG_") == 0;
        if (def) {
          std::size_t digit = line.find_last_of("0123456789");
          std::string mutated = original;
          char& c = mutated[offset + digit];
          c = c == '9' ? '0' : static_cast<char>(c + 1);
          std::ofstream(path, std::ios::trunc) << mutated;
          ++*applied;
          run_cli_quiet({"checkgen", (dir / "out").string()}, &code);
          if (code == 3) ++detected;
          // Also corrupt a character of the identifier itself.
          mutated = original;
          mutated[offset + line.find("SIG_") + 4] = 'Q';
          std::ofstream(path, std::ios::trunc) << mutated;
          ++*applied;
          run_cli_quiet({"checkgen", (dir / "out").string()}, &code);
          if (code == 3) ++detected;
          std::ofstream(path, std::ios::trunc) << original;
        }
        offset += line.size() + 1;
      }
      run_cli_quiet({"checkgen", (dir / "out").string()}, &code);
      if (code != 0) {
        v.pass = false;
        v.detail += "restored output rejected; ";
      }
    }
  }
  fs::remove_all(root);
  if (detected != *applied || *applied < kMinMutations) v.pass = false;
  v.detail += str(static_cast<std::size_t>(detected)) + "/" + str(static_cast<std::size_t>(*applied)) + " mutations exit 3";
  return v;
}

Verdict interface_consistency(const std::vector<SweepRow>& rows) {
  Verdict v;
  std::size_t checked = 0;
  std::size_t ok = 0;
  for (const auto& r : rows) {
    for (const auto& o : r.outcomes) {
      ++checked;
      ok += o.emitted && o.interfaces ? 1 : 0;
    }
  }
  int applied = 0;
  const Verdict mut = mutations(&applied);
  v.pass = ok == checked && mut.pass;
  v.detail = str(ok) + "/" + str(checked) + " sweep emissions consistent; " + mut.detail;
  return v;
}

std::uint64_t corpus_model_hash() {
  std::string all;
  for (const char* m : kCorpusModels) all += slurp(corpus(std::string("models/") + m + ".mdl"));
  return fnv1a64(all);
}

Verdict repartition(const std::vector<SweepRow>& rows, std::uint64_t hash_before) {
  Verdict v;
  std::size_t required = 0;
  std::size_t ok = 0;
  std::size_t informative = 0;
  for (const auto& r : rows) {
    const Model m = test::corpus_model(r.model);
    for (const auto& o : r.outcomes) {
      // The partition is reachable by a marks file alone.
      const auto marks = parse_marks(print_marks(marks_for(m, Partition::from_mask(m, o.mask))));
      const bool via_marks = marks.ok() && derive_partition(m, marks.value()).partition == Partition::from_mask(m, o.mask);
      required += 2;
      ok += (o.equivalence.l1.pass && via_marks ? 1 : 0) + (o.equivalence.l2.pass ? 1 : 0);
      if (r.confluent) {
        ++required;
        ok += o.equivalence.l3.pass ? 1 : 0;
      } else if (!o.equivalence.l3.pass) {
        ++informative;
      }
      if (!o.cosim_quiescent) {
        v.pass = false;
        v.detail += std::string(r.scenario) + " mask " + str(o.mask) + " not quiescent; ";
      }
    }
  }
  const bool hash_same = corpus_model_hash() == hash_before;
  v.pass = v.pass && ok == required && hash_same;
  v.detail += str(ok) + "/" + str(required) + " required level checks; " + str(informative) +
              " informative L3 divergences; model files " + (hash_same ? "unchanged" : "CHANGED");
  return v;
}

Verdict degenerate_identity() {
  Verdict v;
  std::size_t ok = 0;
  std::size_t total = 0;
  for (const auto& p : kCorpusPairs) {
    const Model m = test::corpus_model(p.model);
    const Scenario s = test::corpus_scenario(p.scenario);
    const Trace ref = run(m, s);
    for (Domain d : {Domain::SW, Domain::HW}) {
      ++total;
      const PartitionedTrace pt = cosim(m, Partition::uniform(m, d), s);
      if (pt.merged.events == ref.events && pt.merged.outcome == ref.outcome) ++ok;
    }
  }
  v.pass = ok == total;
  v.detail = str(ok) + "/" + str(total) + " degenerate cosim traces equal the reference";
  return v;
}

Verdict codegen_determinism(const std::vector<SweepRow>& rows) {
  Verdict v;
  std::size_t ok = 0;
  std::size_t total = 0;
  for (const auto& r : rows) {
    for (const auto& o : r.outcomes) {
      ++total;
      ok += o.deterministic ? 1 : 0;
    }
  }
  v.pass = ok == total;
  v.detail = str(ok) + "/" + str(total) + " double emissions identical";
  return v;
}

Verdict golden() {
  Verdict v;
  struct Golden {
    const char* model;
    const char* scenario;
    const char* file;
  };
  for (const Golden g : {Golden{"pingpong", "pingpong", "golden/pingpong.jsonl"},
                         Golden{"counter", "counter_start3", "golden/counter_start3.jsonl"}}) {
    const Model m = test::corpus_model(g.model);
    const std::string got = to_jsonl(m, run(m, test::corpus_scenario(g.scenario)));
    const bool same = got == slurp(corpus(g.file));
    v.pass = v.pass && same;
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += std::string(g.file) + (same ? " match" : " DIFFER");
  }
  return v;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t hash_before = corpus_model_hash();
  std::printf("acceptance: %zu models, %zu (model, scenario) pairs, %d campaign threads\n",
              std::size(kCorpusModels), std::size(kCorpusPairs), campaign_threads());

  report(1, "semantics-determinism", determinism());
  const auto all = campaigns();
  report(2, "causality", campaign_check(all, &SeedOutcome::causal));
  report(3, "pair-fifo", campaign_check(all, &SeedOutcome::pair_fifo));
  report(4, "scheduler-freedom", scheduler_freedom(all));
  const auto rows = sweep();
  report(5, "generated-interface", interface_consistency(rows));
  report(6, "repartition-by-marks", repartition(rows, hash_before));
  report(7, "degenerate-partition", degenerate_identity());
  report(8, "codegen-determinism", codegen_determinism(rows));
  report(9, "oracle-conformance", golden());

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d failing, %.2f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
