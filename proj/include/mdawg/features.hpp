#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdawg/coding_table.hpp"

namespace mdawg {

enum class Strictness { Lenient, Strict };

/// A word's grammatical description: both parts of speech plus an optional
/// code per dimension. Codes are the coding table's single characters.
struct FeatureSet {
  Symbol pos_word = 0;
  Symbol pos_lemma = 0;
  std::array<std::optional<Symbol>, kDimensionCount> values{};

  std::optional<Symbol> get(Dimension d) const { return values[index_of(d)]; }
  FeatureSet& set(Dimension d, Symbol code) {
    values[index_of(d)] = code;
    return *this;
  }
  FeatureSet& clear(Dimension d) {
    values[index_of(d)].reset();
    return *this;
  }
  std::size_t present_count() const;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

/// One slot of a feature query.
struct Slot {
  enum class Kind : std::uint8_t { Any, Absent, Value };
  Kind kind = Kind::Any;
  Symbol code = 0;

  static Slot any() { return {}; }
  static Slot absent() { return {Kind::Absent, 0}; }
  static Slot value(Symbol c) { return {Kind::Value, c}; }

  bool accepts(const std::optional<Symbol>& v) const;

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// A FeatureSet with optional slots, used by synthesis and content search.
struct FeatureQuery {
  std::optional<Symbol> pos_word;
  std::optional<Symbol> pos_lemma;
  std::array<Slot, kDimensionCount> slots{};

  /// Matches everything.
  static FeatureQuery any() { return {}; }
  /// Matches exactly `f`: absent dimensions must stay absent.
  static FeatureQuery exact(const FeatureSet& f);
  /// Present dimensions of `f` constrain; absent ones are left open.
  static FeatureQuery partial(const FeatureSet& f);

  FeatureQuery& require(Dimension d, Symbol code) {
    slots[index_of(d)] = Slot::value(code);
    return *this;
  }
  FeatureQuery& forbid(Dimension d) {
    slots[index_of(d)] = Slot::absent();
    return *this;
  }
  FeatureQuery& relax(Dimension d) {
    slots[index_of(d)] = Slot::any();
    return *this;
  }

  bool matches(const FeatureSet& f) const;

  friend bool operator==(const FeatureQuery&, const FeatureQuery&) = default;
};

/// Row-set anomalies of `f` under its pos_word (empty when `f` follows the
/// table). Unknown codes are not reported here; they fail encoding.
std::vector<std::string> validate_features(const FeatureSet& f, const CodingTable& table);

/// Human-readable `key=value` lists, keys `pos`, `lemma_pos` and the
/// dimension names; pairs separated by `;` or `,`.
FeatureSet parse_named_features(std::string_view text, const CodingTable& table);
/// Like parse_named_features but every key is optional; `key=none` forbids a
/// dimension, `key=*` leaves it open.
FeatureQuery parse_named_query(std::string_view text, const CodingTable& table);
/// `pos=...;lemma_pos=...` (only when it differs) and present dimensions in
/// table column order.
std::string format_named_features(const FeatureSet& f, const CodingTable& table);

}  // namespace mdawg
