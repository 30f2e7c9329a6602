#include "mdawg/encoding.hpp"

#include <algorithm>

#include "mdawg/error.hpp"

namespace mdawg {

namespace {

std::string show(Symbol c) { return "\"" + utf8::encode(c) + "\""; }

}  // namespace

void check_word(SymbolView text, const char* what) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " is empty");
  for (Symbol c : text) {
    if (c == kFeaturesOpen || c == kFeaturesClose || c == U'\0') {
      throw Error(ErrorKind::ReservedSymbol, std::string(what) + " contains reserved symbol " + show(c));
    }
  }
}

SymbolString encode_features(const FeatureSet& f, const CodingTable& table, Strictness strictness) {
  if (!table.is_pos(f.pos_word)) throw Error(ErrorKind::UnknownCode, "unknown part of speech " + show(f.pos_word));
  if (!table.is_pos(f.pos_lemma)) throw Error(ErrorKind::UnknownCode, "unknown part of speech " + show(f.pos_lemma));

  SymbolString code;
  code.reserve(f.present_count() + 2);
  for (Dimension d : kCanonicalOrder) {
    const auto v = f.get(d);
    if (!v) continue;
    if (!table.has_code(d, *v, f.pos_word)) {
      if (d == Dimension::Type && table.is_type_code_anywhere(*v)) {
        throw Error(ErrorKind::InvalidCombination,
                    "type " + show(*v) + " is not defined for part of speech " + show(f.pos_word));
      }
      throw Error(ErrorKind::UnknownCode, "unknown " + std::string(dimension_name(d)) + " code " + show(*v));
    }
    code.push_back(*v);
  }
  code.push_back(f.pos_word);
  code.push_back(f.pos_lemma);

  const auto warnings = validate_features(f, table);
  if (!warnings.empty()) {
    if (strictness == Strictness::Strict) throw Error(ErrorKind::InvalidCombination, warnings.front());
    // Off-row dimensions are tolerated only as long as decoding recovers them.
    bool round_trips = false;
    try {
      round_trips = decode_features(code, table) == f;
    } catch (const Error&) {
    }
    if (!round_trips) {
      throw Error(ErrorKind::InvalidCombination, "feature set is not representable: " + warnings.front());
    }
  }
  return code;
}

std::string encode_features_utf8(const FeatureSet& f, const CodingTable& table, Strictness strictness) {
  return utf8::encode(encode_features(f, table, strictness));
}

FeatureSet decode_features(SymbolView code, const CodingTable& table) {
  if (code.size() < 2) {
    throw Error(ErrorKind::MalformedFeatures, "feature code needs the two part-of-speech characters");
  }
  FeatureSet f;
  f.pos_word = code[code.size() - 2];
  f.pos_lemma = code[code.size() - 1];
  if (!table.is_pos(f.pos_word)) throw Error(ErrorKind::UnknownCode, "unknown part of speech " + show(f.pos_word));
  if (!table.is_pos(f.pos_lemma)) throw Error(ErrorKind::UnknownCode, "unknown part of speech " + show(f.pos_lemma));

  // Dimensions appear in canonical order, each at most once. Where a
  // character fits several remaining dimensions, the one in pos_word's row
  // wins.
  std::size_t next_dim = 0;
  for (std::size_t k = 0; k + 2 < code.size(); ++k) {
    const Symbol c = code[k];
    std::optional<std::size_t> preferred;
    std::optional<std::size_t> fallback;
    for (std::size_t i = next_dim; i < kDimensionCount; ++i) {
      const auto d = static_cast<Dimension>(i);
      if (!table.has_code(d, c, f.pos_word)) continue;
      if (table.row_allows(f.pos_word, d, c)) {
        preferred = i;
        break;
      }
      if (!fallback) fallback = i;
    }
    const auto chosen = preferred ? preferred : fallback;
    if (!chosen) {
      if (next_dim <= index_of(Dimension::Type) && table.is_type_code_anywhere(c)) {
        throw Error(ErrorKind::AmbiguousType,
                    "type code " + show(c) + " is not defined for part of speech " + show(f.pos_word));
      }
      for (std::size_t i = 0; i < kDimensionCount; ++i) {
        if (table.has_code(static_cast<Dimension>(i), c, f.pos_word)) {
          throw Error(ErrorKind::MalformedFeatures, "code " + show(c) + " is out of order or repeated");
        }
      }
      throw Error(ErrorKind::UnknownCode, "unknown feature code " + show(c));
    }
    f.values[*chosen] = c;
    next_dim = *chosen + 1;
  }
  return f;
}

FeatureSet decode_features(std::string_view utf8_code, const CodingTable& table) {
  return decode_features(SymbolView(utf8::decode(utf8_code)), table);
}

SymbolString reverse_string(SymbolView s) { return SymbolString(s.rbegin(), s.rend()); }

std::string reverse_string(std::string_view utf8_text) {
  return utf8::encode(reverse_string(SymbolView(utf8::decode(utf8_text))));
}

SymbolString encode_entry(const Entry& e, const CodingTable& table, Strictness strictness) {
  const SymbolString surface = utf8::decode(e.surface);
  const SymbolString lemma = utf8::decode(e.lemma);
  check_word(surface, "surface");
  check_word(lemma, "lemma");
  SymbolString out = surface;
  out.push_back(kFeaturesOpen);
  out += encode_features(e.features, table, strictness);
  out.push_back(kFeaturesClose);
  out += reverse_string(lemma);
  return out;
}

std::string encode_entry_utf8(const Entry& e, const CodingTable& table, Strictness strictness) {
  return utf8::encode(encode_entry(e, table, strictness));
}

Entry decode_entry(SymbolView encoded, const CodingTable& table) {
  const auto open = encoded.find(kFeaturesOpen);
  const auto close = encoded.find(kFeaturesClose);
  if (open == SymbolView::npos || close == SymbolView::npos || close < open ||
      encoded.find(kFeaturesOpen, open + 1) != SymbolView::npos ||
      encoded.find(kFeaturesClose, close + 1) != SymbolView::npos) {
    throw Error(ErrorKind::MalformedEntry, "entry needs exactly one \"(\" followed by one \")\"");
  }
  const auto surface = encoded.substr(0, open);
  const auto code = encoded.substr(open + 1, close - open - 1);
  const auto reversed_lemma = encoded.substr(close + 1);
  if (surface.empty() || reversed_lemma.empty()) {
    throw Error(ErrorKind::MalformedEntry, "entry has an empty surface or lemma");
  }
  if (code.size() < 2) throw Error(ErrorKind::MalformedEntry, "feature code lacks the part-of-speech pair");
  Entry e;
  e.surface = utf8::encode(surface);
  e.features = decode_features(code, table);
  e.lemma = utf8::encode(reverse_string(reversed_lemma));
  return e;
}

Entry decode_entry(std::string_view utf8_encoded, const CodingTable& table) {
  return decode_entry(SymbolView(utf8::decode(utf8_encoded)), table);
}

}  // namespace mdawg
