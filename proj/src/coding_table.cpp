#include "mdawg/coding_table.hpp"

#include <zlib.h>

#include <fstream>
#include <set>
#include <sstream>

#include "default_table.hpp"
#include "json.hpp"
#include "mdawg/error.hpp"

namespace mdawg {

namespace {

using nlohmann::json;

constexpr std::array<const char*, kDimensionCount> kNames = {
    "case", "person", "number", "gender", "degree", "mood", "tense", "voice", "mode", "type",
};

[[noreturn]] void bad_table(const std::string& message) {
  throw Error(ErrorKind::InvalidCodingTable, "coding table: " + message);
}

Symbol single_symbol(const std::string& text, const std::string& where) {
  SymbolString s;
  try {
    s = utf8::decode(text);
  } catch (const Error&) {
    bad_table(where + ": invalid UTF-8");
  }
  if (s.size() != 1) bad_table(where + ": code must be exactly one character, got \"" + text + "\"");
  const Symbol c = s[0];
  if (c == U'(' || c == U')' || c == U'\0' || c == U'*' || c == U'\\' || c == U';' || c == U',' ||
      c == U'=' || c == U'\t' || c == U'\n') {
    bad_table(where + ": code uses a reserved character");
  }
  return c;
}

std::vector<Symbol> sorted_codes(std::vector<Symbol> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const std::vector<Symbol> kEmptyRow;

}  // namespace

const char* dimension_name(Dimension d) { return kNames[index_of(d)]; }

std::optional<Dimension> parse_dimension(std::string_view name) {
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (name == kNames[i]) return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

CodingTable CodingTable::from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    bad_table(std::string("malformed JSON: ") + e.what());
  }
  CodingTable t;
  try {
    t.name_ = doc.at("name").get<std::string>();
    t.version_ = doc.at("version").get<int>();
    for (const auto& [dim_name, values] : doc.at("dimensions").items()) {
      const auto dim = parse_dimension(dim_name);
      if (!dim || *dim == Dimension::Type) bad_table("unknown dimension \"" + dim_name + "\"");
      std::set<Symbol> seen;
      for (const auto& [value_name, code] : values.items()) {
        const Symbol c = single_symbol(code.get<std::string>(), dim_name + "." + value_name);
        if (!seen.insert(c).second) bad_table(dim_name + ": duplicate code for \"" + value_name + "\"");
        t.values_[index_of(*dim)][value_name] = c;
      }
    }
    std::set<Symbol> pos_codes;
    std::set<std::string> pos_names;
    for (const auto& entry : doc.at("parts_of_speech")) {
      PartOfSpeech pos;
      pos.name = entry.at("name").get<std::string>();
      pos.code = single_symbol(entry.at("code").get<std::string>(), pos.name + ".code");
      if (!pos_codes.insert(pos.code).second) bad_table("duplicate part-of-speech code for " + pos.name);
      if (!pos_names.insert(pos.name).second) bad_table("duplicate part of speech " + pos.name);
      std::set<Symbol> row_codes;
      for (const auto& [type_name, code] : entry.at("types").items()) {
        const Symbol c = single_symbol(code.get<std::string>(), pos.name + ".types." + type_name);
        if (!row_codes.insert(c).second) bad_table(pos.name + ": duplicate type code");
        pos.types[type_name] = c;
        pos.row[index_of(Dimension::Type)].push_back(c);
      }
      for (const auto& [dim_name, names] : entry.at("row").items()) {
        const auto dim = parse_dimension(dim_name);
        if (!dim || *dim == Dimension::Type) bad_table(pos.name + ": unknown row dimension \"" + dim_name + "\"");
        for (const auto& value_name : names) {
          const auto& values = t.values_[index_of(*dim)];
          auto it = values.find(value_name.get<std::string>());
          if (it == values.end()) {
            bad_table(pos.name + ": unknown " + dim_name + " value \"" + value_name.get<std::string>() + "\"");
          }
          // Codes inside one row must be unambiguous so every valid feature
          // string decodes back to one assignment.
          if (!row_codes.insert(it->second).second) {
            bad_table(pos.name + ": code \"" + utf8::encode(it->second) + "\" used twice in one row");
          }
          pos.row[index_of(*dim)].push_back(it->second);
        }
      }
      for (auto& r : pos.row) r = sorted_codes(std::move(r));
      t.pos_.push_back(std::move(pos));
    }
  } catch (const json::exception& e) {
    bad_table(std::string("schema error: ") + e.what());
  }
  if (t.pos_.empty()) bad_table("no parts of speech");
  const std::string canonical = t.canonical_json();
  t.fingerprint_ = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(canonical.data()), static_cast<uInt>(canonical.size())));
  return t;
}

CodingTable CodingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open coding table " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

const CodingTable& CodingTable::greek() {
  static const CodingTable table = from_json(detail::kDefaultCodingTableJson);
  return table;
}

std::string CodingTable::canonical_json() const {
  json doc;
  doc["name"] = name_;
  doc["version"] = version_;
  json dims = json::object();
  for (std::size_t i = 0; i + 1 < kDimensionCount; ++i) {
    json values = json::object();
    for (const auto& [n, c] : values_[i]) values[n] = utf8::encode(c);
    dims[kNames[i]] = values;
  }
  doc["dimensions"] = dims;
  json parts = json::array();
  for (const auto& pos : pos_) {
    json p;
    p["name"] = pos.name;
    p["code"] = utf8::encode(pos.code);
    json types = json::object();
    for (const auto& [n, c] : pos.types) types[n] = utf8::encode(c);
    p["types"] = types;
    json row = json::object();
    for (std::size_t i = 0; i + 1 < kDimensionCount; ++i) {
      if (pos.row[i].empty()) continue;
      json codes = json::array();
      for (Symbol c : pos.row[i]) codes.push_back(utf8::encode(c));
      row[kNames[i]] = codes;
    }
    p["row"] = row;
    parts.push_back(p);
  }
  doc["parts_of_speech"] = parts;
  return doc.dump();
}

const CodingTable::PartOfSpeech* CodingTable::find_pos(Symbol code) const {
  for (const auto& p : pos_) {
    if (p.code == code) return &p;
  }
  return nullptr;
}

const CodingTable::PartOfSpeech* CodingTable::find_pos(std::string_view name) const {
  for (const auto& p : pos_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::optional<Symbol> CodingTable::code_of(Dimension d, std::string_view value_name, Symbol pos) const {
  if (d == Dimension::Type) {
    const auto* p = find_pos(pos);
    if (!p) return std::nullopt;
    auto it = p->types.find(std::string(value_name));
    if (it == p->types.end()) return std::nullopt;
    return it->second;
  }
  const auto& values = values_[index_of(d)];
  auto it = values.find(std::string(value_name));
  if (it == values.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> CodingTable::name_of(Dimension d, Symbol code, Symbol pos) const {
  if (d == Dimension::Type) {
    const auto* p = find_pos(pos);
    if (!p) return std::nullopt;
    for (const auto& [n, c] : p->types) {
      if (c == code) return n;
    }
    return std::nullopt;
  }
  for (const auto& [n, c] : values_[index_of(d)]) {
    if (c == code) return n;
  }
  return std::nullopt;
}

bool CodingTable::has_code(Dimension d, Symbol code, Symbol pos) const {
  return name_of(d, code, pos).has_value();
}

bool CodingTable::is_type_code_anywhere(Symbol code) const {
  for (const auto& p : pos_) {
    for (const auto& [n, c] : p.types) {
      if (c == code) return true;
    }
  }
  return false;
}

bool CodingTable::row_has(Symbol pos, Dimension d) const { return !row_values(pos, d).empty(); }

bool CodingTable::row_allows(Symbol pos, Dimension d, Symbol code) const {
  const auto& row = row_values(pos, d);
  return std::binary_search(row.begin(), row.end(), code);
}

const std::vector<Symbol>& CodingTable::row_values(Symbol pos, Dimension d) const {
  const auto* p = find_pos(pos);
  return p ? p->row[index_of(d)] : kEmptyRow;
}

}  // namespace mdawg
