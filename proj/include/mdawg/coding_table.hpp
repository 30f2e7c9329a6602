#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdawg/utf8.hpp"

namespace mdawg {

/// Grammatical dimensions in canonical encoding order: the most
/// suffix-dependent first. Part of speech is handled separately.
enum class Dimension : std::uint8_t {
  Case,
  Person,
  Number,
  Gender,
  Degree,
  Mood,
  Tense,
  Voice,
  Mode,
  Type,
};

inline constexpr std::size_t kDimensionCount = 10;

inline constexpr std::array<Dimension, kDimensionCount> kCanonicalOrder = {
    Dimension::Case,  Dimension::Person, Dimension::Number, Dimension::Gender, Dimension::Degree,
    Dimension::Mood,  Dimension::Tense,  Dimension::Voice,  Dimension::Mode,   Dimension::Type,
};

constexpr std::size_t index_of(Dimension d) { return static_cast<std::size_t>(d); }

const char* dimension_name(Dimension d);
std::optional<Dimension> parse_dimension(std::string_view name);

/// Single-character coding of grammatical features, one table per language.
/// Type codes are scoped by part of speech; every other dimension has one
/// global code per value. The per-POS row lists which values the language
/// actually uses with that part of speech.
class CodingTable {
 public:
  struct PartOfSpeech {
    std::string name;
    Symbol code = 0;
    std::map<std::string, Symbol> types;
    std::array<std::vector<Symbol>, kDimensionCount> row;  // Type row = type codes
  };

  /// Throws Error(InvalidCodingTable) on schema or uniqueness problems.
  static CodingTable from_json(std::string_view json_text);
  static CodingTable load(const std::filesystem::path& path);
  /// The built-in Greek table (data/greek_coding.json).
  static const CodingTable& greek();

  const std::string& name() const noexcept { return name_; }
  int version() const noexcept { return version_; }

  /// Stable serialization; the fingerprint is its CRC-32.
  std::string canonical_json() const;
  std::uint32_t fingerprint() const noexcept { return fingerprint_; }

  const std::vector<PartOfSpeech>& parts_of_speech() const noexcept { return pos_; }
  const PartOfSpeech* find_pos(Symbol code) const;
  const PartOfSpeech* find_pos(std::string_view name) const;
  bool is_pos(Symbol code) const { return find_pos(code) != nullptr; }

  /// Code of a named value; for Dimension::Type the name is looked up under `pos`.
  std::optional<Symbol> code_of(Dimension d, std::string_view value_name, Symbol pos) const;
  std::optional<std::string> name_of(Dimension d, Symbol code, Symbol pos) const;

  /// True if `code` is a value of non-type dimension `d`, or a type of `pos`.
  bool has_code(Dimension d, Symbol code, Symbol pos) const;
  bool is_type_code_anywhere(Symbol code) const;

  bool row_has(Symbol pos, Dimension d) const;
  bool row_allows(Symbol pos, Dimension d, Symbol code) const;
  const std::vector<Symbol>& row_values(Symbol pos, Dimension d) const;

 private:
  std::string name_;
  int version_ = 0;
  std::array<std::map<std::string, Symbol>, kDimensionCount> values_;  // Type slot unused
  std::vector<PartOfSpeech> pos_;
  std::uint32_t fingerprint_ = 0;
};

}  // namespace mdawg
