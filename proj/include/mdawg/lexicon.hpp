#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mdawg/coding_table.hpp"
#include "mdawg/dawg.hpp"
#include "mdawg/encoding.hpp"
#include "mdawg/features.hpp"

namespace mdawg {

struct Analysis {
  std::string lemma;
  FeatureSet features;

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

enum class SearchRoute { Forward, Reverse };

/// Compiles a feature query into the pattern that sits between "(" and ")"
/// of an encoded entry. Exact for fully specified queries; otherwise a
/// superset that callers post-filter.
Pattern feature_pattern(const FeatureQuery& query);

/// Full-form lexicon: every entry lives in one DAWG as
/// `surface(codes)reversed-lemma`, so analysis, synthesis and content search
/// are all pattern searches over the same graph.
///
/// Queries are const and may run concurrently; add_entry needs exclusive
/// access.
class Lexicon {
 public:
  explicit Lexicon(DawgMode mode = DawgMode::Deterministic);
  Lexicon(std::shared_ptr<const CodingTable> table, DawgMode mode = DawgMode::Deterministic);
  /// Adopts an existing graph, e.g. one loaded from a compiled image.
  Lexicon(std::shared_ptr<const CodingTable> table, Dawg dawg);

  const Dawg& dawg() const noexcept { return dawg_; }
  const CodingTable& coding() const noexcept { return *table_; }
  std::shared_ptr<const CodingTable> coding_ptr() const noexcept { return table_; }
  std::size_t entry_count() const noexcept { return dawg_.string_count(); }

  /// False if the entry was already present.
  bool add_entry(const Entry& entry, Strictness strictness = Strictness::Lenient);

  /// Every stored (lemma, features) whose surface is exactly `surface`;
  /// searched downwards with the pattern `surface(*`.
  std::vector<Analysis> analyze(std::string_view surface) const;

  /// Every stored form of `lemma` whose features satisfy `query`; searched
  /// upwards from the terminal with `*(features)reversed-lemma`.
  std::vector<Entry> synthesize(std::string_view lemma, const FeatureQuery& query,
                                SearchRoute route = SearchRoute::Reverse) const;

  /// Analysis followed by synthesis: forms of every lemma of `surface` that
  /// satisfy `target`, deduplicated by encoded entry.
  std::vector<Entry> reinflect(std::string_view surface, const FeatureQuery& target) const;

  /// Content-addressable search with wildcards on the surface and open
  /// slots in the features at the same time.
  std::vector<Entry> fuzzy_lookup(const Pattern& surface_pattern, const FeatureQuery& query) const;

  /// All entries in encoded order.
  std::vector<Entry> entries() const;

 private:
  std::vector<Entry> decode_all(const std::vector<SymbolString>& encoded) const;

  std::shared_ptr<const CodingTable> table_;
  Dawg dawg_;
};

}  // namespace mdawg
