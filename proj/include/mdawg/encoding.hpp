#pragma once

#include <string>
#include <string_view>

#include "mdawg/coding_table.hpp"
#include "mdawg/features.hpp"
#include "mdawg/utf8.hpp"

namespace mdawg {

inline constexpr Symbol kFeaturesOpen = U'(';
inline constexpr Symbol kFeaturesClose = U')';

/// A lexicon entry: inflected form, its features, and its citation form.
/// Stored as `surface(codes)reversed-lemma`.
struct Entry {
  std::string surface;
  FeatureSet features;
  std::string lemma;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Codes in canonical order (case first, ..., type), then pos_word and
/// pos_lemma. Throws UnknownCode for codes outside the table and
/// InvalidCombination for row anomalies in strict mode or for assignments
/// that would not decode back.
SymbolString encode_features(const FeatureSet& f, const CodingTable& table,
                             Strictness strictness = Strictness::Lenient);
std::string encode_features_utf8(const FeatureSet& f, const CodingTable& table,
                                 Strictness strictness = Strictness::Lenient);

FeatureSet decode_features(SymbolView code, const CodingTable& table);
FeatureSet decode_features(std::string_view utf8_code, const CodingTable& table);

SymbolString reverse_string(SymbolView s);
std::string reverse_string(std::string_view utf8_text);

SymbolString encode_entry(const Entry& e, const CodingTable& table, Strictness strictness = Strictness::Lenient);
std::string encode_entry_utf8(const Entry& e, const CodingTable& table,
                              Strictness strictness = Strictness::Lenient);

Entry decode_entry(SymbolView encoded, const CodingTable& table);
Entry decode_entry(std::string_view utf8_encoded, const CodingTable& table);

/// Throws ReservedSymbol / InvalidArgument if `text` cannot be a surface or lemma.
void check_word(SymbolView text, const char* what);

}  // namespace mdawg
