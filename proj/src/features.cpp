#include "mdawg/features.hpp"

#include <algorithm>

#include "mdawg/error.hpp"

namespace mdawg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Pair {
  std::string key;
  std::string value;
};

std::vector<Pair> split_pairs(std::string_view text) {
  std::vector<Pair> pairs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";,", start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = trim(text.substr(start, end - start));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorKind::MalformedFeatures, "expected key=value, got \"" + std::string(item) + "\"");
      }
      pairs.push_back({std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1)))});
    }
    start = end + 1;
  }
  return pairs;
}

Symbol pos_code(const CodingTable& table, const std::string& name) {
  const auto* pos = table.find_pos(name);
  if (!pos) throw Error(ErrorKind::UnknownCode, "unknown part of speech \"" + name + "\"");
  return pos->code;
}

// Shared by the strict and the query parser: resolves every pair, leaving
// type names for after the part of speech is known.
template <typename OnDimension>
void resolve_pairs(const std::vector<Pair>& pairs, const CodingTable& table, std::optional<Symbol>& pos_word,
                   std::optional<Symbol>& pos_lemma, OnDimension&& on_dimension) {
  std::array<bool, kDimensionCount> seen{};
  bool seen_pos = false;
  bool seen_lemma_pos = false;
  const Pair* type_pair = nullptr;
  for (const auto& p : pairs) {
    if (p.key == "pos") {
      if (seen_pos) throw Error(ErrorKind::MalformedFeatures, "duplicate key pos");
      seen_pos = true;
      if (p.value != "*") pos_word = pos_code(table, p.value);
      continue;
    }
    if (p.key == "lemma_pos") {
      if (seen_lemma_pos) throw Error(ErrorKind::MalformedFeatures, "duplicate key lemma_pos");
      seen_lemma_pos = true;
      if (p.value != "*") pos_lemma = pos_code(table, p.value);
      continue;
    }
    const auto dim = parse_dimension(p.key);
    if (!dim) throw Error(ErrorKind::MalformedFeatures, "unknown feature key \"" + p.key + "\"");
    if (seen[index_of(*dim)]) throw Error(ErrorKind::MalformedFeatures, "duplicate key " + p.key);
    seen[index_of(*dim)] = true;
    if (*dim == Dimension::Type) {
      type_pair = &p;
      continue;
    }
    on_dimension(*dim, p.value);
  }
  if (type_pair) on_dimension(Dimension::Type, type_pair->value);
}

}  // namespace

std::size_t FeatureSet::present_count() const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); }));
}

bool Slot::accepts(const std::optional<Symbol>& v) const {
  switch (kind) {
    case Kind::Any: return true;
    case Kind::Absent: return !v.has_value();
    case Kind::Value: return v.has_value() && *v == code;
  }
  return false;
}

FeatureQuery FeatureQuery::exact(const FeatureSet& f) {
  FeatureQuery q;
  q.pos_word = f.pos_word;
  q.pos_lemma = f.pos_lemma;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    q.slots[i] = f.values[i] ? Slot::value(*f.values[i]) : Slot::absent();
  }
  return q;
}

FeatureQuery FeatureQuery::partial(const FeatureSet& f) {
  FeatureQuery q;
  q.pos_word = f.pos_word;
  q.pos_lemma = f.pos_lemma;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (f.values[i]) q.slots[i] = Slot::value(*f.values[i]);
  }
  return q;
}

bool FeatureQuery::matches(const FeatureSet& f) const {
  if (pos_word && *pos_word != f.pos_word) return false;
  if (pos_lemma && *pos_lemma != f.pos_lemma) return false;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (!slots[i].accepts(f.values[i])) return false;
  }
  return true;
}

std::vector<std::string> validate_features(const FeatureSet& f, const CodingTable& table) {
  std::vector<std::string> warnings;
  const auto* pos = table.find_pos(f.pos_word);
  if (!pos) return warnings;
  for (Dimension d : kCanonicalOrder) {
    const auto v = f.get(d);
    if (!v) continue;
    if (!table.row_has(f.pos_word, d)) {
      warnings.push_back(std::string(dimension_name(d)) + " is not used with " + pos->name);
    } else if (!table.row_allows(f.pos_word, d, *v)) {
      const auto name = table.name_of(d, *v, f.pos_word);
      warnings.push_back(std::string(dimension_name(d)) + "=" + name.value_or(utf8::encode(*v)) +
                         " is not used with " + pos->name);
    }
  }
  return warnings;
}

FeatureSet parse_named_features(std::string_view text, const CodingTable& table) {
  const auto pairs = split_pairs(text);
  std::optional<Symbol> pos_word;
  std::optional<Symbol> pos_lemma;
  FeatureSet f;
  resolve_pairs(pairs, table, pos_word, pos_lemma, [&](Dimension d, const std::string& value) {
    if (!pos_word && d == Dimension::Type) {
      throw Error(ErrorKind::MalformedFeatures, "type needs a part of speech");
    }
    const auto code = table.code_of(d, value, pos_word.value_or(0));
    if (!code) {
      throw Error(d == Dimension::Type ? ErrorKind::AmbiguousType : ErrorKind::UnknownCode,
                  "unknown " + std::string(dimension_name(d)) + " value \"" + value + "\"");
    }
    f.set(d, *code);
  });
  if (!pos_word) throw Error(ErrorKind::MalformedFeatures, "missing pos");
  f.pos_word = *pos_word;
  f.pos_lemma = pos_lemma.value_or(*pos_word);
  return f;
}

FeatureQuery parse_named_query(std::string_view text, const CodingTable& table) {
  const auto pairs = split_pairs(text);
  FeatureQuery q;
  resolve_pairs(pairs, table, q.pos_word, q.pos_lemma, [&](Dimension d, const std::string& value) {
    if (value == "*") {
      q.relax(d);
      return;
    }
    if (value == "none") {
      q.forbid(d);
      return;
    }
    std::optional<Symbol> code;
    if (d == Dimension::Type) {
      if (!q.pos_word) throw Error(ErrorKind::MalformedFeatures, "type needs a part of speech");
      code = table.code_of(d, value, *q.pos_word);
    } else {
      code = table.code_of(d, value, 0);
    }
    if (!code) {
      throw Error(d == Dimension::Type ? ErrorKind::AmbiguousType : ErrorKind::UnknownCode,
                  "unknown " + std::string(dimension_name(d)) + " value \"" + value + "\"");
    }
    q.require(d, *code);
  });
  return q;
}

std::string format_named_features(const FeatureSet& f, const CodingTable& table) {
  auto pos_name = [&](Symbol c) {
    const auto* p = table.find_pos(c);
    return p ? p->name : utf8::encode(c);
  };
  std::string out = "pos=" + pos_name(f.pos_word);
  if (f.pos_lemma != f.pos_word) out += ";lemma_pos=" + pos_name(f.pos_lemma);
  for (auto it = kCanonicalOrder.rbegin(); it != kCanonicalOrder.rend(); ++it) {
    const auto v = f.get(*it);
    if (!v) continue;
    out += ';';
    out += dimension_name(*it);
    out += '=';
    out += table.name_of(*it, *v, f.pos_word).value_or(utf8::encode(*v));
  }
  return out;
}

}  // namespace mdawg
