#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mdawg/lexicon.hpp"

namespace mdawg {

struct IngestResult {
  Lexicon lexicon;
  std::vector<std::string> warnings;
};

/// Reads `surface TAB lemma TAB features` records, where features are
/// `key=value` pairs separated by ';' (see parse_named_features). Blank lines
/// and lines starting with '#' are skipped. Strict mode throws ParseError on
/// the first bad record; lenient mode skips it with a warning.
IngestResult ingest_tsv(const std::filesystem::path& path, std::shared_ptr<const CodingTable> table = nullptr,
                        Strictness strictness = Strictness::Lenient, DawgMode mode = DawgMode::Deterministic);

/// Same, from text already in memory.
IngestResult ingest_tsv_text(std::string_view text, std::shared_ptr<const CodingTable> table = nullptr,
                             Strictness strictness = Strictness::Lenient, DawgMode mode = DawgMode::Deterministic);

inline constexpr char kImageMagic[6] = {'M', 'D', 'A', 'W', 'G', '1'};
inline constexpr std::uint32_t kImageFormatVersion = 1;

/// Compiled image bytes. Identical lexicons give identical bytes.
std::string serialize_image(const Lexicon& lex);
Lexicon deserialize_image(std::string_view bytes, std::shared_ptr<const CodingTable> table = nullptr);

void save_compiled(const Lexicon& lex, const std::filesystem::path& path);
Lexicon load_compiled(const std::filesystem::path& path, std::shared_ptr<const CodingTable> table = nullptr);

struct StatsReport {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t entries = 0;
  std::uint64_t trie_nodes = 0;
  /// trie_nodes / nodes rounded to four decimals; absent for an empty lexicon.
  std::optional<double> ratio;
  DawgMode mode = DawgMode::Deterministic;
};

StatsReport report_stats(const Lexicon& lex);
StatsReport report_stats(const Dawg& dawg);

/// The ratio as printed in both report formats, or "n/a".
std::string format_ratio(const StatsReport& r);
std::string stats_json(const StatsReport& r);
std::string stats_text(const StatsReport& r);

/// Graph listings for inspection. Nodes are renumbered canonically, so the
/// output is stable for a given string set.
std::string dump_text(const Dawg& dawg);
std::string dump_dot(const Dawg& dawg);
std::string dump_json(const Dawg& dawg);

}  // namespace mdawg
