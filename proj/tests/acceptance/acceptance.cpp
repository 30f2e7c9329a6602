// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdawg/error.hpp"
#include "mdawg/lexicon_io.hpp"
#include "oracles.hpp"
#include "paradigm.hpp"

using namespace mdawg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

const CodingTable& greek() { return CodingTable::greek(); }

std::string key(const Entry& e) { return encode_entry_utf8(e, greek()); }

// ---------------------------------------------------------------------------
// C1 / C6: generated paradigm lexicon

struct ParadigmRun {
  std::vector<Entry> entries;
  Lexicon lexicon;
};

const ParadigmRun& paradigm_run() {
  static const ParadigmRun run = [] {
    ParadigmRun r{oracle::generate_paradigm_lexicon(greek(), 1000, 2024), Lexicon()};
    auto ingested = ingest_tsv_text(oracle::to_tsv(r.entries, greek()), nullptr, Strictness::Strict);
    r.lexicon = std::move(ingested.lexicon);
    return r;
  }();
  return run;
}

Outcome c1_round_trip() {
  Timer timer;
  const ParadigmRun& run = paradigm_run();
  std::set<Symbol> pos_seen;
  for (const auto& e : run.entries) pos_seen.insert(e.features.pos_word);
  std::size_t analysis_misses = 0;
  std::size_t synthesis_misses = 0;
  for (const auto& e : run.entries) {
    const auto analyses = run.lexicon.analyze(e.surface);
    if (std::find(analyses.begin(), analyses.end(), Analysis{e.lemma, e.features}) == analyses.end()) {
      ++analysis_misses;
    }
    const auto forms = run.lexicon.synthesize(e.lemma, FeatureQuery::exact(e.features));
    if (std::none_of(forms.begin(), forms.end(), [&](const Entry& f) { return f.surface == e.surface; })) {
      ++synthesis_misses;
    }
  }
  const double secs = timer.seconds();
  const bool pass = run.entries.size() >= 1000 && pos_seen.size() == greek().parts_of_speech().size() &&
                    analysis_misses == 0 && synthesis_misses == 0 && secs < 10.0;
  return {pass, std::to_string(run.entries.size()) + " entries, " + std::to_string(pos_seen.size()) + "/" +
                    std::to_string(greek().parts_of_speech().size()) + " parts of speech, " +
                    std::to_string(analysis_misses) + " analysis misses, " + std::to_string(synthesis_misses) +
                    " synthesis misses, " + fixed(secs, 2) + " s"};
}

Outcome c6_compression() {
  const ParadigmRun& run = paradigm_run();
  const StatsReport r = report_stats(run.lexicon);
  std::set<SymbolString> stored;
  for (const auto& e : run.entries) stored.insert(encode_entry(e, greek()) + kStopSymbol);
  const std::uint64_t trie = oracle::trie_node_count(stored);
  const bool pass = r.nodes < r.trie_nodes && trie == r.trie_nodes;
  return {pass, "nodes " + std::to_string(r.nodes) + ", trie_nodes " + std::to_string(r.trie_nodes) +
                    " (oracle " + std::to_string(trie) + "), ratio " + format_ratio(r)};
}

// ---------------------------------------------------------------------------
// C2-C4: DAWG core against oracles

Outcome c2_minimality() {
  Timer timer;
  std::mt19937 rng(2);
  std::size_t mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t alphabet = 2 + rng() % 9;
    const auto words = oracle::random_strings(rng, 1 + rng() % 50, alphabet, 8);
    Dawg d;
    for (const auto& w : words) d.insert(w);
    const std::set<SymbolString> lang(words.begin(), words.end());
    if (d.stats().node_count != oracle::minimal_dfa_node_count(lang, true)) ++mismatches;
  }
  const double secs = timer.seconds();
  return {mismatches == 0 && secs < 30.0,
          "200 sets, " + std::to_string(mismatches) + " mismatches, " + fixed(secs, 2) + " s"};
}

Outcome c3_integrity() {
  Timer timer;
  std::mt19937 rng(3);
  Dawg d;
  std::size_t unhealthy = 0;
  const auto words = oracle::random_strings(rng, 10000, 8, 12);
  for (const auto& w : words) {
    d.insert(w);
    if (!d.check_integrity().healthy()) ++unhealthy;
  }
  const double secs = timer.seconds();
  return {unhealthy == 0 && secs < 60.0, "10000 insertions, " + std::to_string(d.string_count()) +
                                             " distinct strings, " + std::to_string(unhealthy) +
                                             " unhealthy checks, " + fixed(secs, 2) + " s"};
}

Outcome c4_pattern_equivalence() {
  Timer timer;
  std::mt19937 rng(4);
  std::size_t mismatches = 0;
  std::size_t nonempty = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t alphabet = 2 + rng() % 6;
    const auto words = oracle::random_strings(rng, 1 + rng() % 60, alphabet, 7);
    Dawg d(i % 2 ? DawgMode::NonDeterministic : DawgMode::Deterministic);
    for (const auto& w : words) d.insert(w);
    const std::set<SymbolString> lang(words.begin(), words.end());
    const Pattern p = oracle::random_pattern(rng, words[rng() % words.size()], alphabet, 3);
    const auto expected = oracle::regex_filter(p, lang);
    if (!expected.empty()) ++nonempty;
    if (d.match_forward(p) != expected || d.match_reverse(p) != expected) ++mismatches;
  }
  const double secs = timer.seconds();
  return {mismatches == 0 && secs < 30.0, "500 pairs (" + std::to_string(nonempty) + " with matches), " +
                                              std::to_string(mismatches) + " mismatches, " + fixed(secs, 2) + " s"};
}

// ---------------------------------------------------------------------------
// C5: throughput through the command-line tool

struct Shell {
  int code = -1;
  std::string out;
};

Shell shell(const std::string& cmd) {
  Shell r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome c5_throughput() {
  constexpr double kFloor = 10000.0;
  const fs::path dir = fs::temp_directory_path() / "mdawg_acceptance";
  fs::create_directories(dir);
  const auto entries = oracle::generate_paradigm_lexicon(greek(), 10000, 55);
  const fs::path tsv = dir / "lexicon.tsv";
  const fs::path image = dir / "lexicon.img";
  std::ofstream(tsv) << oracle::to_tsv(entries, greek());
  const std::string cli = MDAWG_CLI_PATH;
  const Shell build = shell(cli + " build --json -i " + tsv.string() + " -o " + image.string());
  if (build.code != 0) return {false, "build failed: " + build.out};
  const Shell bench = shell(cli + " bench --json --repeat 5 --generate 10000 -l " + image.string());
  fs::remove_all(dir);
  if (bench.code != 0) return {false, "bench failed: " + bench.out};
  const auto built = nlohmann::json::parse(build.out);
  const auto j = nlohmann::json::parse(bench.out);
  const std::size_t lexicon_entries = built["stats"]["entries"].get<std::size_t>();
  const double median = j["timing"]["median_rate"].get<double>();
  return {lexicon_entries >= 10000 && median >= kFloor,
          std::to_string(lexicon_entries) + " entries, median " + fixed(median, 0) + " analyses/sec over " +
              std::to_string(j["repeat"].get<int>()) + " runs (" + fixed(median / kFloor, 1) +
              "x the 10000/s reference)"};
}

// ---------------------------------------------------------------------------
// C7: persistence

std::vector<std::string> query_results(const Lexicon& lex) {
  std::vector<std::string> out;
  std::set<std::string> lemmas;
  for (const auto& e : lex.entries()) {
    for (const auto& a : lex.analyze(e.surface)) {
      out.push_back("analyze " + e.surface + " " + a.lemma + " " + encode_features_utf8(a.features, lex.coding()));
    }
    for (const auto& f : lex.synthesize(e.lemma, FeatureQuery::exact(e.features))) out.push_back("exact " + key(f));
    for (const auto& f : lex.reinflect(e.surface, FeatureQuery::partial(e.features).relax(Dimension::Number))) {
      out.push_back("reinflect " + key(f));
    }
    lemmas.insert(e.lemma);
  }
  for (const auto& l : lemmas) {
    for (const auto& f : lex.synthesize(l, FeatureQuery::any())) out.push_back("paradigm " + key(f));
  }
  FeatureQuery genitive;
  genitive.require(Dimension::Case, U'b');
  for (const auto& f : lex.fuzzy_lookup(Pattern::universal(), genitive)) out.push_back("fuzzy " + key(f));
  return out;
}

Outcome c7_persistence() {
  std::mt19937 rng(7);
  const fs::path path = fs::temp_directory_path() / "mdawg_acceptance_c7.img";
  std::size_t failures = 0;
  std::size_t total_entries = 0;
  for (int i = 0; i < 50; ++i) {
    auto entries = oracle::generate_paradigm_lexicon(greek(), 1 + rng() % 300, static_cast<std::uint32_t>(rng()));
    std::shuffle(entries.begin(), entries.end(), rng);
    entries.resize(1 + rng() % entries.size());
    Lexicon lex(rng() % 2 ? DawgMode::NonDeterministic : DawgMode::Deterministic);
    for (const auto& e : entries) lex.add_entry(e);
    total_entries += lex.entry_count();
    save_compiled(lex, path);
    const Lexicon back = load_compiled(path);
    const bool same = lex.dawg().enumerate() == back.dawg().enumerate() &&
                      stats_json(report_stats(lex)) == stats_json(report_stats(back)) &&
                      stats_text(report_stats(lex)) == stats_text(report_stats(back)) &&
                      query_results(lex) == query_results(back) && serialize_image(lex) == serialize_image(back);
    if (!same) ++failures;
  }
  fs::remove(path);
  return {failures == 0, "50 lexicons (" + std::to_string(total_entries) + " entries), " +
                             std::to_string(failures) + " differences"};
}

// ---------------------------------------------------------------------------
// C8: exhaustive encoding round trip against a hand-transcribed Greek coding table

struct RefPos {
  Symbol code;
  std::vector<Symbol> types;
  std::map<Dimension, std::vector<Symbol>> row;
};

std::vector<RefPos> reference_table() {
  const std::vector<Symbol> cases3 = {U'a', U'b', U'c'};
  const std::vector<Symbol> cases4 = {U'a', U'b', U'c', U'd'};
  const std::vector<Symbol> persons = {U'e', U'f', U'g'};
  const std::vector<Symbol> numbers = {U'h', U'i'};
  const std::vector<Symbol> genders = {U'j', U'k', U'l'};
  const std::vector<Symbol> degrees = {U'r', U's', U't'};
  const std::vector<Symbol> modes = {U'α', U'β', U'ν', U'δ'};
  const std::vector<Symbol> voices = {U'γ', U'z'};
  using D = Dimension;
  return {
      {U'A', {U'ε', U'ζ', U'η'}, {{D::Gender, genders}, {D::Number, numbers}, {D::Case, cases3}}},
      {U'N', {U'λ', U'μ'}, {{D::Gender, genders}, {D::Number, numbers}, {D::Case, cases3}}},
      {U'E',
       {U'Α'},
       {{D::Degree, degrees}, {D::Gender, genders}, {D::Number, numbers}, {D::Case, cases4}}},
      {U'T',
       {U'Α'},
       {{D::Gender, genders}, {D::Number, numbers}, {D::Person, persons}, {D::Case, cases4}}},
      {U'V',
       {U'θ'},
       {{D::Mode, modes},
        {D::Voice, voices},
        {D::Tense, {U'v', U'w', U'x', U'u'}},
        {D::Mood, {U'm', U'n', U'o', U'p'}},
        {D::Number, numbers},
        {D::Person, persons}}},
      {U'M',
       {U'θ'},
       {{D::Mode, modes},
        {D::Voice, voices},
        {D::Tense, {U'v', U'u'}},
        {D::Mood, {U'q'}},
        {D::Gender, genders},
        {D::Number, numbers},
        {D::Case, cases4}}},
      {U'R',
       {U'Α', U'μ', U'ν', U'ξ', U'ο', U'π', U'ρ'},
       {{D::Degree, degrees}}},
      {U'P', {}, {}},
      {U'S', {U'λ'}, {}},
      {U'I', {U'Α'}, {}},
      {U'F', {}, {}},
      {U'G', {}, {}},
      {U'X', {}, {}},
  };
}

// Code characters in the order they appear in an encoded feature string,
// most suffix-dependent first.
constexpr Dimension kReferenceOrder[] = {
    Dimension::Case,  Dimension::Person, Dimension::Number, Dimension::Gender, Dimension::Degree,
    Dimension::Mood,  Dimension::Tense,  Dimension::Voice,  Dimension::Mode,   Dimension::Type,
};

Outcome c8_encoding() {
  Timer timer;
  const auto table = reference_table();
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  for (const RefPos& pos : table) {
    std::vector<std::pair<Dimension, std::vector<Symbol>>> axes;
    for (Dimension d : kReferenceOrder) {
      if (d == Dimension::Type) {
        if (!pos.types.empty()) axes.emplace_back(d, pos.types);
      } else if (pos.row.count(d)) {
        axes.emplace_back(d, pos.row.at(d));
      }
    }
    // Each axis takes "absent" (index 0) or one of its values.
    std::vector<std::size_t> choice(axes.size(), 0);
    for (;;) {
      for (const RefPos& lemma_pos : table) {
        FeatureSet f;
        f.pos_word = pos.code;
        f.pos_lemma = lemma_pos.code;
        SymbolString expected;
        for (std::size_t a = 0; a < axes.size(); ++a) {
          if (choice[a] == 0) continue;
          const Symbol c = axes[a].second[choice[a] - 1];
          f.set(axes[a].first, c);
          expected.push_back(c);
        }
        expected.push_back(pos.code);
        expected.push_back(lemma_pos.code);
        ++checked;
        try {
          const SymbolString code = encode_features(f, greek(), Strictness::Strict);
          if (code != expected || !(decode_features(SymbolView(code), greek()) == f)) {
            if (failures++ == 0) first_failure = utf8::encode(expected);
          }
        } catch (const Error& e) {
          if (failures++ == 0) first_failure = utf8::encode(expected) + " (" + e.what() + ")";
        }
      }
      std::size_t a = 0;
      while (a < axes.size() && ++choice[a] > axes[a].second.size()) choice[a++] = 0;
      if (a == axes.size()) break;
    }
  }
  const double secs = timer.seconds();
  std::string detail = std::to_string(checked) + " feature sets, " + std::to_string(failures) + " failures, " +
                       fixed(secs, 2) + " s";
  if (failures) detail += ", first: " + first_failure;
  return {failures == 0, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 round-trip completeness", c1_round_trip},
      {"C2 minimality oracle", c2_minimality},
      {"C3 structural invariants", c3_integrity},
      {"C4 pattern-search equivalence", c4_pattern_equivalence},
      {"C5 throughput", c5_throughput},
      {"C6 compression", c6_compression},
      {"C7 persistence fidelity", c7_persistence},
      {"C8 encoding round-trip", c8_encoding},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
