// phh: validate, replay, canonicalize, and benchmark poker hand history
// files (.phh).
//
// Exit codes: 0 = all checks passed, 1 = conformance failure, 2 = usage or
// I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phh/phh.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Expands files and directories (recursing for *.phh) into a flat list.
std::vector<fs::path> collect_paths(const std::vector<std::string>& inputs,
                                    std::string& error) {
  std::vector<fs::path> out;
  for (const auto& input : inputs) {
    fs::path p(input);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (auto it = fs::recursive_directory_iterator(p, ec);
           it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) break;
        if (it->is_regular_file() && it->path().extension() == ".phh")
          found.push_back(it->path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p, ec)) {
      out.push_back(p);
    } else {
      error = "no such file or directory: " + input;
      return {};
    }
  }
  if (out.empty() && error.empty()) error = "no input files";
  return out;
}

json diagnostics_to_json(const std::vector<phh::Diagnostic>& ds) {
  json arr = json::array();
  for (const auto& d : ds) {
    arr.push_back({{"severity",
                    d.severity == phh::Severity::Error ? "error" : "warning"},
                   {"code", d.code},
                   {"location", d.location},
                   {"message", d.message}});
  }
  return arr;
}

int cmd_validate(const std::vector<std::string>& inputs, bool lenient,
                 bool as_json) {
  std::string err;
  auto paths = collect_paths(inputs, err);
  if (!err.empty()) {
    std::cerr << "error: " << err << "\n";
    return kExitUsage;
  }
  phh::ParsePolicy policy =
      lenient ? phh::ParsePolicy::Lenient : phh::ParsePolicy::Strict;
  phh::Strictness strictness =
      lenient ? phh::Strictness::Warn : phh::Strictness::Strict;

  bool all_ok = true;
  json out = json::array();
  for (const auto& path : paths) {
    auto bytes = read_file(path);
    if (!bytes) {
      std::cerr << "error: cannot read " << path << "\n";
      return kExitUsage;
    }
    phh::ConformanceReport report =
        phh::check_file(*bytes, path.string(), policy, strictness);
    bool ok = report.verdict == phh::ConformanceReport::Verdict::Pass ||
              (lenient && report.verdict ==
                              phh::ConformanceReport::Verdict::PassWithWarnings);
    all_ok = all_ok && ok;
    if (as_json) {
      json entry = {{"file", report.file_id},
                    {"verdict", phh::to_string(report.verdict)},
                    {"round_trip_ok", report.round_trip_ok},
                    {"diagnostics", diagnostics_to_json(report.diagnostics)}};
      switch (report.finishing_stack_check) {
        case phh::ConformanceReport::StackCheck::NotApplicable:
          entry["finishing_stack_check"] = "not-applicable";
          break;
        case phh::ConformanceReport::StackCheck::Match:
          entry["finishing_stack_check"] = "match";
          break;
        case phh::ConformanceReport::StackCheck::Mismatch:
          entry["finishing_stack_check"] = "mismatch";
          break;
      }
      out.push_back(entry);
    } else {
      std::cout << phh::to_string(report.verdict) << ": " << report.file_id
                << "\n";
      for (const auto& d : report.diagnostics)
        std::cout << "  " << phh::to_string(d) << "\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return all_ok ? kExitPass : kExitFail;
}

int cmd_replay(const std::string& input, bool snapshots, bool final_stacks,
               const std::string& strictness_name) {
  auto bytes = read_file(input);
  if (!bytes) {
    std::cerr << "error: cannot read " << input << "\n";
    return kExitUsage;
  }
  phh::Strictness strictness = phh::Strictness::Warn;
  if (strictness_name == "strict") strictness = phh::Strictness::Strict;
  else if (strictness_name == "silent") strictness = phh::Strictness::Silent;

  auto parsed = phh::parse_document(*bytes, phh::ParsePolicy::Strict);
  if (!parsed.document || phh::has_errors(parsed.diagnostics)) {
    std::cerr << "error: " << input << " does not validate\n";
    for (const auto& d : parsed.diagnostics)
      std::cerr << "  " << phh::to_string(d) << "\n";
    return kExitFail;
  }

  phh::ReplayResult rep = phh::replay(*parsed.document, strictness);
  for (const auto& d : rep.diagnostics)
    std::cerr << phh::to_string(d) << "\n";
  if (phh::has_errors(rep.diagnostics)) return kExitFail;

  if (snapshots) {
    for (const auto& s : rep.snapshots)
      std::cout << phh::snapshot_to_json(s) << "\n";
  }
  if (final_stacks) {
    auto fin = rep.state->finishing_stacks();
    if (!fin.ok()) {
      std::cerr << "error: " << phh::to_string(fin.error()) << "\n";
      return kExitFail;
    }
    std::string line;
    for (const auto& m : fin.value()) {
      if (!line.empty()) line += ' ';
      line += m ? m->to_string() : "null";
    }
    std::cout << line << "\n";
  }
  return kExitPass;
}

int cmd_stats(const std::vector<std::string>& inputs, bool as_json) {
  std::string err;
  auto paths = collect_paths(inputs, err);
  if (!err.empty()) {
    std::cerr << "error: " << err << "\n";
    return kExitUsage;
  }
  phh::CorpusStats stats;
  for (const auto& path : paths) {
    auto bytes = read_file(path);
    if (!bytes) {
      std::cerr << "error: cannot read " << path << "\n";
      return kExitUsage;
    }
    stats.add(phh::count_text(*bytes));
  }
  if (as_json) {
    json out = {{"files", stats.files},
                {"avg_newlines", stats.avg_newlines()},
                {"avg_words", stats.avg_words()},
                {"avg_bytes", stats.avg_bytes()},
                {"total_newlines", stats.total_newlines},
                {"total_words", stats.total_words},
                {"total_bytes", stats.total_bytes}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "files:         " << stats.files << "\n";
    std::cout << "newlines/hand: " << stats.avg_newlines() << "\n";
    std::cout << "words/hand:    " << stats.avg_words() << "\n";
    std::cout << "bytes/hand:    " << stats.avg_bytes() << "\n";
  }
  return kExitPass;
}

int cmd_bench(const std::vector<std::string>& inputs, int repeat, int multiply,
              bool with_replay, int parallel, bool as_json) {
  std::string err;
  auto paths = collect_paths(inputs, err);
  if (!err.empty()) {
    std::cerr << "error: " << err << "\n";
    return kExitUsage;
  }
  std::vector<std::string> contents;
  for (const auto& path : paths) {
    auto bytes = read_file(path);
    if (!bytes) {
      std::cerr << "error: cannot read " << path << "\n";
      return kExitUsage;
    }
    // the corpus must be valid before it is worth timing
    auto parsed = phh::parse_document(*bytes, phh::ParsePolicy::Strict);
    if (!parsed.document || phh::has_errors(parsed.diagnostics)) {
      std::cerr << "error: " << path << " does not validate; not benching\n";
      return kExitFail;
    }
    contents.push_back(std::move(*bytes));
  }
  if (multiply > 1) {
    std::vector<std::string> expanded;
    expanded.reserve(contents.size() * multiply);
    for (int k = 0; k < multiply; ++k)
      for (const auto& c : contents) expanded.push_back(c);
    contents = std::move(expanded);
  }

  phh::BenchResult result = phh::run_bench(
      contents, repeat, phh::ParsePolicy::Strict, with_replay, parallel);
  if (as_json) {
    json out = {{"hands", result.hands},
                {"seconds", result.seconds},
                {"hands_per_second", result.hands_per_second},
                {"ms_per_hand", result.ms_per_hand}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "hands:    " << result.hands << "\n";
    std::cout << "time:     " << result.seconds << " s\n";
    std::cout << "rate:     " << result.hands_per_second << " hands/s\n";
    std::cout << "per hand: " << result.ms_per_hand << " ms\n";
  }
  return kExitPass;
}

int cmd_canon(const std::string& input, bool in_place) {
  auto bytes = read_file(input);
  if (!bytes) {
    std::cerr << "error: cannot read " << input << "\n";
    return kExitUsage;
  }
  auto parsed = phh::parse_document(*bytes, phh::ParsePolicy::Strict);
  if (!parsed.document || phh::has_errors(parsed.diagnostics)) {
    std::cerr << "error: " << input << " does not validate; leaving it alone\n";
    for (const auto& d : parsed.diagnostics)
      std::cerr << "  " << phh::to_string(d) << "\n";
    return kExitFail;
  }
  auto canon =
      phh::serialize_document(*parsed.document, phh::SerializeStyle::Canonical);
  if (!canon.ok()) {
    std::cerr << "error: " << phh::to_string(canon.error()) << "\n";
    return kExitFail;
  }
  if (in_place) {
    std::ofstream out(input, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << input << "\n";
      return kExitUsage;
    }
    out << canon.value();
  } else {
    std::cout << canon.value();
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poker hand history (.phh) toolkit"};
  app.require_subcommand(1);

  // validate
  auto* validate = app.add_subcommand("validate", "Check files for conformance");
  std::vector<std::string> validate_paths;
  bool validate_lenient = false, validate_strict = false, validate_json = false;
  validate->add_option("paths", validate_paths, "Files or directories")
      ->required();
  validate->add_flag("--lenient", validate_lenient,
                     "Downgrade recoverable violations to warnings");
  validate->add_flag("--strict", validate_strict,
                     "Strict checking (the default)");
  validate->add_flag("--json", validate_json, "Structured report");

  // replay
  auto* replay = app.add_subcommand("replay", "Replay a hand");
  std::string replay_path, replay_strictness = "warn";
  bool replay_snapshots = false, replay_final = false;
  replay->add_option("path", replay_path, "Hand file")->required();
  replay->add_flag("--snapshots", replay_snapshots,
                   "Print one JSON record per step");
  replay->add_flag("--final", replay_final, "Print the finishing stacks");
  replay->add_option("--strictness", replay_strictness,
                     "strict, warn, or silent")
      ->check(CLI::IsMember({"strict", "warn", "silent"}));

  // stats
  auto* stats = app.add_subcommand("stats", "Corpus conciseness statistics");
  std::vector<std::string> stats_paths;
  bool stats_json = false;
  stats->add_option("paths", stats_paths, "Files or directories")->required();
  stats->add_flag("--json", stats_json, "Structured output");

  // bench
  auto* bench = app.add_subcommand("bench", "Parser throughput benchmark");
  std::vector<std::string> bench_paths;
  int bench_repeat = 1, bench_multiply = 1, bench_parallel = 1;
  bool bench_replay = false, bench_json = false;
  bench->add_option("paths", bench_paths, "Files or directories")->required();
  bench->add_option("--repeat", bench_repeat, "Passes over the corpus")
      ->check(CLI::PositiveNumber);
  bench->add_option("--multiply", bench_multiply,
                    "Duplicate the loaded corpus in memory N times")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--with-replay", bench_replay, "Also time state replay");
  bench->add_option("--parallel", bench_parallel, "Worker threads")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--json", bench_json, "Structured output");

  // canon
  auto* canon = app.add_subcommand("canon", "Canonicalize a hand file");
  std::string canon_path;
  bool canon_in_place = false;
  canon->add_option("path", canon_path, "Hand file")->required();
  canon->add_flag("--in-place", canon_in_place, "Rewrite the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (validate->parsed())
    return cmd_validate(validate_paths, validate_lenient && !validate_strict,
                        validate_json);
  if (replay->parsed()) {
    if (!replay_snapshots && !replay_final) replay_final = true;
    return cmd_replay(replay_path, replay_snapshots, replay_final,
                      replay_strictness);
  }
  if (stats->parsed()) return cmd_stats(stats_paths, stats_json);
  if (bench->parsed())
    return cmd_bench(bench_paths, bench_repeat, bench_multiply, bench_replay,
                     bench_parallel, bench_json);
  if (canon->parsed()) return cmd_canon(canon_path, canon_in_place);
  return kExitUsage;
}
