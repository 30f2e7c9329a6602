#include "mdawg/lexicon.hpp"

#include <map>

#include "mdawg/error.hpp"

namespace mdawg {

namespace {

std::shared_ptr<const CodingTable> builtin_table() {
  // Non-owning: the built-in table is a function-local static.
  return std::shared_ptr<const CodingTable>(std::shared_ptr<void>(), &CodingTable::greek());
}

// A usable surface or lemma, or nullopt for input that cannot be stored.
std::optional<SymbolString> word_symbols(std::string_view text) {
  if (!utf8::is_valid(text)) return std::nullopt;
  SymbolString s = utf8::decode(text);
  try {
    check_word(s, "word");
  } catch (const Error&) {
    return std::nullopt;
  }
  return s;
}

}  // namespace

Pattern feature_pattern(const FeatureQuery& query) {
  Pattern p;
  bool gap = false;
  auto literal = [&](Symbol c) {
    if (gap) p.push_wildcard();
    p.push_literal(c);
    gap = false;
  };
  for (Dimension d : kCanonicalOrder) {
    const Slot& slot = query.slots[index_of(d)];
    switch (slot.kind) {
      case Slot::Kind::Any: gap = true; break;
      case Slot::Kind::Absent: break;
      case Slot::Kind::Value: literal(slot.code); break;
    }
  }
  if (query.pos_word) {
    literal(*query.pos_word);
  } else {
    gap = true;
  }
  if (query.pos_lemma) {
    literal(*query.pos_lemma);
  } else {
    gap = true;
  }
  if (gap) p.push_wildcard();
  return p;
}

Lexicon::Lexicon(DawgMode mode) : Lexicon(builtin_table(), mode) {}

Lexicon::Lexicon(std::shared_ptr<const CodingTable> table, DawgMode mode)
    : table_(table ? std::move(table) : builtin_table()), dawg_(mode) {}

Lexicon::Lexicon(std::shared_ptr<const CodingTable> table, Dawg dawg)
    : table_(table ? std::move(table) : builtin_table()), dawg_(std::move(dawg)) {}

bool Lexicon::add_entry(const Entry& entry, Strictness strictness) {
  return dawg_.insert(SymbolView(encode_entry(entry, *table_, strictness)));
}

std::vector<Entry> Lexicon::decode_all(const std::vector<SymbolString>& encoded) const {
  std::vector<Entry> out;
  out.reserve(encoded.size());
  for (const auto& s : encoded) out.push_back(decode_entry(SymbolView(s), *table_));
  return out;
}

std::vector<Analysis> Lexicon::analyze(std::string_view surface) const {
  std::vector<Analysis> out;
  const auto word = word_symbols(surface);
  if (!word) return out;
  Pattern p = Pattern::literals(*word);
  p.push_literal(kFeaturesOpen).push_wildcard();
  for (auto& e : decode_all(dawg_.match_forward(p))) {
    out.push_back({std::move(e.lemma), e.features});
  }
  return out;
}

std::vector<Entry> Lexicon::synthesize(std::string_view lemma, const FeatureQuery& query,
                                       SearchRoute route) const {
  std::vector<Entry> out;
  const auto word = word_symbols(lemma);
  if (!word) return out;
  Pattern p = Pattern::universal();
  p.push_literal(kFeaturesOpen);
  p.append(feature_pattern(query));
  p.push_literal(kFeaturesClose);
  p.push_literals(reverse_string(SymbolView(*word)));
  const auto hits = route == SearchRoute::Reverse ? dawg_.match_reverse(p) : dawg_.match_forward(p);
  for (auto& e : decode_all(hits)) {
    if (e.lemma == lemma && query.matches(e.features)) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Entry> Lexicon::reinflect(std::string_view surface, const FeatureQuery& target) const {
  std::map<SymbolString, Entry> merged;
  for (const auto& a : analyze(surface)) {
    for (auto& e : synthesize(a.lemma, target)) {
      auto key = encode_entry(e, *table_);
      merged.emplace(std::move(key), std::move(e));
    }
  }
  std::vector<Entry> out;
  out.reserve(merged.size());
  for (auto& [key, e] : merged) out.push_back(std::move(e));
  return out;
}

std::vector<Entry> Lexicon::fuzzy_lookup(const Pattern& surface_pattern, const FeatureQuery& query) const {
  if (surface_pattern.empty()) throw Error(ErrorKind::InvalidArgument, "empty surface pattern");
  Pattern p = surface_pattern;
  p.push_literal(kFeaturesOpen);
  p.append(feature_pattern(query));
  p.push_literal(kFeaturesClose);
  p.push_wildcard();
  std::vector<Entry> out;
  for (auto& e : decode_all(dawg_.match_forward(p))) {
    if (surface_pattern.matches(utf8::decode(e.surface)) && query.matches(e.features)) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Entry> Lexicon::entries() const { return decode_all(dawg_.enumerate()); }

}  // namespace mdawg
