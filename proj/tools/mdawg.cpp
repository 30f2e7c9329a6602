// mdawg: build, query, inspect and benchmark compiled morphological lexicons.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdawg/bench.hpp"
#include "mdawg/error.hpp"
#include "mdawg/lexicon_io.hpp"

using namespace mdawg;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitData = 2;
constexpr int kExitUsage = 3;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError: return kExitIo;
    case ErrorKind::InvalidArgument: return kExitUsage;
    default: return kExitData;
  }
}

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string coding;
  std::string lexicon;
  bool json = false;
};

std::shared_ptr<const CodingTable> coding_table(const Common& c) {
  if (c.coding.empty()) return nullptr;
  return std::make_shared<const CodingTable>(CodingTable::load(c.coding));
}

Lexicon open_lexicon(const Common& c) { return load_compiled(c.lexicon, coding_table(c)); }

ordered_json entry_json(const Entry& e, const CodingTable& table) {
  return {{"surface", e.surface},
          {"lemma", e.lemma},
          {"features", format_named_features(e.features, table)},
          {"code", encode_features_utf8(e.features, table)}};
}

void print_entries(const std::vector<Entry>& entries, const Lexicon& lex, bool json) {
  if (json) {
    auto arr = ordered_json::array();
    for (const auto& e : entries) arr.push_back(entry_json(e, lex.coding()));
    std::cout << ordered_json{{"results", arr}}.dump() << '\n';
    return;
  }
  for (const auto& e : entries) {
    std::cout << e.surface << '\t' << e.lemma << '\t' << format_named_features(e.features, lex.coding()) << '\n';
  }
}

FeatureQuery parse_query(const std::string& text, const CodingTable& table) {
  return text.empty() ? FeatureQuery::any() : parse_named_query(text, table);
}

// --- subcommands -----------------------------------------------------------

struct BuildArgs {
  std::string input;
  std::string output;
  std::string mode = "det";
  bool strict = false;
};

int cmd_build(const Common& c, const BuildArgs& a) {
  const DawgMode mode = a.mode == "nondet" ? DawgMode::NonDeterministic : DawgMode::Deterministic;
  const auto result =
      ingest_tsv(a.input, coding_table(c), a.strict ? Strictness::Strict : Strictness::Lenient, mode);
  save_compiled(result.lexicon, a.output);
  const StatsReport stats = report_stats(result.lexicon);
  if (c.json) {
    ordered_json j;
    j["output"] = a.output;
    j["stats"] = ordered_json::parse(stats_json(stats));
    j["warnings"] = result.warnings;
    std::cout << j.dump() << '\n';
  } else {
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << stats_text(stats);
  }
  return kExitOk;
}

struct AnalyzeArgs {
  std::vector<std::string> words;
  bool stdin_words = false;
};

int cmd_analyze(const Common& c, const AnalyzeArgs& a) {
  if (a.stdin_words == !a.words.empty()) throw UsageError("give words or --stdin, not both");
  const Lexicon lex = open_lexicon(c);
  std::vector<std::string> words = a.words;
  if (a.stdin_words) {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) words.push_back(line);
    }
  }
  for (const auto& w : words) {
    const auto analyses = lex.analyze(w);
    if (c.json) {
      auto arr = ordered_json::array();
      for (const auto& an : analyses) {
        arr.push_back(entry_json(Entry{w, an.features, an.lemma}, lex.coding()));
      }
      std::cout << ordered_json{{"surface", w}, {"analyses", arr}}.dump() << '\n';
    } else if (analyses.empty()) {
      std::cout << w << "\t?\t?\n";
    } else {
      for (const auto& an : analyses) {
        std::cout << w << '\t' << an.lemma << '\t' << format_named_features(an.features, lex.coding()) << '\n';
      }
    }
  }
  return kExitOk;
}

struct SynthArgs {
  std::string lemma;
  std::string features;
};

int cmd_synth(const Common& c, const SynthArgs& a) {
  const Lexicon lex = open_lexicon(c);
  print_entries(lex.synthesize(a.lemma, parse_query(a.features, lex.coding())), lex, c.json);
  return kExitOk;
}

struct ReinflectArgs {
  std::string word;
  std::string features;
};

int cmd_reinflect(const Common& c, const ReinflectArgs& a) {
  const Lexicon lex = open_lexicon(c);
  print_entries(lex.reinflect(a.word, parse_query(a.features, lex.coding())), lex, c.json);
  return kExitOk;
}

int cmd_stats(const Common& c) {
  const StatsReport stats = report_stats(open_lexicon(c));
  std::cout << (c.json ? stats_json(stats) + "\n" : stats_text(stats));
  return kExitOk;
}

struct BenchArgs {
  std::string queries;
  std::size_t generate = 0;
  unsigned repeat = 5;
  unsigned threads = 1;
  std::uint32_t seed = 1;
};

int cmd_bench(const Common& c, const BenchArgs& a) {
  if (a.queries.empty() == (a.generate == 0)) throw UsageError("give exactly one of --queries or --generate N (N > 0)");
  const Lexicon lex = open_lexicon(c);
  std::vector<std::string> queries;
  if (!a.queries.empty()) {
    std::ifstream in(a.queries);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + a.queries);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) queries.push_back(line);
    }
  } else {
    queries = sample_queries(lex, a.generate, a.seed);
    if (queries.empty()) throw Error(ErrorKind::InvalidArgument, "cannot generate queries from an empty lexicon");
  }
  const BenchResult r = run_bench(lex, queries, {a.repeat, a.threads});
  if (c.json) {
    auto j = ordered_json::parse(bench_json(r));
    j["entries"] = lex.entry_count();
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "entries\t" << lex.entry_count() << '\n' << bench_text(r);
  }
  return kExitOk;
}

int cmd_dump(const Common& c, const std::string& format) {
  const Lexicon lex = open_lexicon(c);
  if (c.json) {
    std::cout << dump_json(lex.dawg()) << '\n';
  } else {
    std::cout << (format == "dot" ? dump_dot(lex.dawg()) : dump_text(lex.dawg()));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"Build and query DAWG-compressed full-form morphological lexicons."};
  app.require_subcommand(1);
  Common common;
  app.add_option("--coding", common.coding, "Coding table JSON (default: built-in Greek table)")
      ->check(CLI::ExistingFile);

  auto add_lexicon = [&](CLI::App* sub) {
    sub->add_option("--lexicon,-l", common.lexicon, "Compiled lexicon image")->required();
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", common.json, "Machine-readable output"); };

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Compile a TSV lexicon into an image");
  build_cmd->add_option("--input,-i", build.input, "TSV lexicon")->required();
  build_cmd->add_option("--output,-o", build.output, "Image to write")->required();
  build_cmd->add_option("--mode", build.mode, "Storage mode")->check(CLI::IsMember({"det", "nondet"}));
  build_cmd->add_flag("--strict", build.strict, "Reject records with anomalies instead of warning");
  add_json(build_cmd);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Lemma and features of each word");
  add_lexicon(analyze_cmd);
  analyze_cmd->add_option("words", analyze.words, "Words to analyze");
  analyze_cmd->add_flag("--stdin", analyze.stdin_words, "Read one word per line from stdin");
  add_json(analyze_cmd);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Inflected forms of a lemma");
  add_lexicon(synth_cmd);
  synth_cmd->add_option("--lemma", synth.lemma, "Lemma")->required();
  synth_cmd->add_option("--features", synth.features, "key=value pairs separated by ',' or ';'");
  add_json(synth_cmd);

  ReinflectArgs reinflect;
  auto* reinflect_cmd = app.add_subcommand("reinflect", "Forms of a word's lemmas with other features");
  add_lexicon(reinflect_cmd);
  reinflect_cmd->add_option("--word", reinflect.word, "Inflected word")->required();
  reinflect_cmd->add_option("--features", reinflect.features, "Target key=value pairs");
  add_json(reinflect_cmd);

  auto* stats_cmd = app.add_subcommand("stats", "Size and compression report");
  add_lexicon(stats_cmd);
  add_json(stats_cmd);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Analyzer throughput");
  add_lexicon(bench_cmd);
  bench_cmd->add_option("--queries", bench.queries, "File with one query word per line");
  bench_cmd->add_option("--generate", bench.generate, "Sample N query words from the lexicon");
  bench_cmd->add_option("--repeat", bench.repeat, "Timed runs; the median is reported")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", bench.threads, "Concurrent reader threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Seed for --generate");
  add_json(bench_cmd);

  std::string dump_format = "text";
  auto* dump_cmd = app.add_subcommand("dump", "Graph listing");
  add_lexicon(dump_cmd);
  dump_cmd->add_option("--format", dump_format, "Listing format")->check(CLI::IsMember({"dot", "text"}));
  add_json(dump_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build_cmd) return cmd_build(common, build);
    if (*analyze_cmd) return cmd_analyze(common, analyze);
    if (*synth_cmd) return cmd_synth(common, synth);
    if (*reinflect_cmd) return cmd_reinflect(common, reinflect);
    if (*stats_cmd) return cmd_stats(common);
    if (*bench_cmd) return cmd_bench(common, bench);
    if (*dump_cmd) return cmd_dump(common, dump_format);
  } catch (const UsageError& e) {
    std::cerr << "mdawg: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "mdawg: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "mdawg: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
