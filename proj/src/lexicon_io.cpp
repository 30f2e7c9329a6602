#include "mdawg/lexicon_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "mdawg/error.hpp"

namespace mdawg {

namespace {

std::shared_ptr<const CodingTable> or_builtin(std::shared_ptr<const CodingTable> table) {
  if (table) return table;
  return std::shared_ptr<const CodingTable>(std::shared_ptr<void>(), &CodingTable::greek());
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

Entry parse_record(std::string_view line, const CodingTable& table) {
  const auto fields = split(line, '\t');
  if (fields.size() != 3) {
    throw Error(ErrorKind::ParseError,
                "expected 3 tab-separated fields, found " + std::to_string(fields.size()));
  }
  if (!utf8::is_valid(line)) throw Error(ErrorKind::InvalidUtf8, "invalid UTF-8");
  Entry e;
  e.surface = std::string(fields[0]);
  e.lemma = std::string(fields[1]);
  e.features = parse_named_features(fields[2], table);
  return e;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  return data;
}

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<std::uint8_t>(data_[pos_ + i])} << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<std::uint8_t>(data_[pos_ + i])} << (8 * i);
    pos_ += 8;
    return v;
  }
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw Error(ErrorKind::CorruptImage, "image ends inside a table");
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::uint32_t crc(std::string_view data) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

// magic, version, mode, table hash, node count, edge count, initial,
// terminal, string count, checksum
constexpr std::size_t kMinImageSize = sizeof(kImageMagic) + 4 + 1 + 4 + 4 + 4 + 4 + 4 + 8 + 4;

std::string escape_label(Symbol c) {
  switch (c) {
    case kStopSymbol: return "\\0";
    case U'\\': return "\\\\";
    case U'\t': return "\\t";
    case U'\n': return "\\n";
    default: return utf8::encode(c);
  }
}

struct ExposedGraph {
  std::size_t node_count = 0;
  NodeId initial = 0;
  NodeId terminal = 0;
  std::vector<Edge> edges;
};

ExposedGraph exposed(const Dawg& dawg) {
  const RawDawg raw = dawg.to_raw();
  ExposedGraph g;
  g.node_count = raw.final_flags.size();
  g.initial = raw.initial;
  g.terminal = raw.terminal;
  for (const auto& e : raw.edges) {
    g.edges.push_back(e);
    if (raw.mode == DawgMode::NonDeterministic && e.to != raw.terminal && raw.final_flags[e.to]) {
      g.edges.push_back({e.from, e.label, raw.terminal});
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace

IngestResult ingest_tsv_text(std::string_view text, std::shared_ptr<const CodingTable> table,
                             Strictness strictness, DawgMode mode) {
  IngestResult result{Lexicon(or_builtin(std::move(table)), mode), {}};
  const CodingTable& coding = result.lexicon.coding();
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    try {
      const Entry e = parse_record(line, coding);
      const auto anomalies = validate_features(e.features, coding);
      if (strictness == Strictness::Strict && !anomalies.empty()) {
        throw Error(ErrorKind::InvalidCombination, anomalies.front());
      }
      result.lexicon.add_entry(e, strictness);
      for (const auto& a : anomalies) {
        result.warnings.push_back("line " + std::to_string(line_no) + ": " + a);
      }
    } catch (const Error& err) {
      if (strictness == Strictness::Strict) throw ParseError(line_no, err.what());
      result.warnings.push_back("line " + std::to_string(line_no) + ": skipped: " + err.what());
    }
  }
  return result;
}

IngestResult ingest_tsv(const std::filesystem::path& path, std::shared_ptr<const CodingTable> table,
                        Strictness strictness, DawgMode mode) {
  return ingest_tsv_text(read_file(path), std::move(table), strictness, mode);
}

std::string serialize_image(const Lexicon& lex) {
  const RawDawg raw = lex.dawg().to_raw();
  Writer w;
  w.bytes(kImageMagic, sizeof(kImageMagic));
  w.u32(kImageFormatVersion);
  w.u8(static_cast<std::uint8_t>(raw.mode));
  w.u32(lex.coding().fingerprint());
  w.u32(static_cast<std::uint32_t>(raw.final_flags.size()));
  for (bool f : raw.final_flags) w.u8(f ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(raw.edges.size()));
  for (const auto& e : raw.edges) {
    w.u32(e.from);
    w.u32(static_cast<std::uint32_t>(e.label));
    w.u32(e.to);
  }
  w.u32(raw.initial);
  w.u32(raw.terminal);
  w.u64(raw.string_count);
  w.u32(crc(w.str()));
  return std::move(w.str());
}

Lexicon deserialize_image(std::string_view bytes, std::shared_ptr<const CodingTable> table) {
  table = or_builtin(std::move(table));
  if (bytes.size() < kMinImageSize) throw Error(ErrorKind::ChecksumMismatch, "image is truncated");
  if (std::memcmp(bytes.data(), kImageMagic, sizeof(kImageMagic)) != 0) {
    throw Error(ErrorKind::BadMagic, "not a compiled lexicon image");
  }
  Reader r(bytes);
  r.skip(sizeof(kImageMagic));
  const std::uint32_t version = r.u32();
  if (version != kImageFormatVersion) {
    throw Error(ErrorKind::VersionMismatch, "image format version " + std::to_string(version) +
                                                " is not supported (expected " +
                                                std::to_string(kImageFormatVersion) + ")");
  }
  const auto body = bytes.substr(0, bytes.size() - 4);
  Reader tail(bytes.substr(bytes.size() - 4));
  if (crc(body) != tail.u32()) throw Error(ErrorKind::ChecksumMismatch, "image checksum does not match");

  const std::uint8_t mode = r.u8();
  if (r.u32() != table->fingerprint()) {
    throw Error(ErrorKind::CodingTableMismatch, "image was compiled with a different coding table");
  }
  if (mode > 1) throw Error(ErrorKind::CorruptImage, "unknown storage mode");

  RawDawg raw;
  raw.mode = static_cast<DawgMode>(mode);
  const std::uint32_t node_count = r.u32();
  r.need(node_count);
  raw.final_flags.resize(node_count);
  for (std::uint32_t i = 0; i < node_count; ++i) {
    const std::uint8_t f = r.u8();
    if (f > 1) throw Error(ErrorKind::CorruptImage, "bad final flag");
    raw.final_flags[i] = f == 1;
  }
  const std::uint32_t edge_count = r.u32();
  r.need(std::size_t{edge_count} * 12);
  raw.edges.reserve(edge_count);
  for (std::uint32_t i = 0; i < edge_count; ++i) {
    Edge e;
    e.from = r.u32();
    e.label = static_cast<Symbol>(r.u32());
    e.to = r.u32();
    raw.edges.push_back(e);
  }
  raw.initial = r.u32();
  raw.terminal = r.u32();
  raw.string_count = r.u64();
  if (r.remaining() != 4) throw Error(ErrorKind::CorruptImage, "unexpected bytes after the tables");

  Dawg dawg = Dawg::from_raw(raw);
  const auto report = dawg.check_integrity();
  if (!report.healthy()) {
    const auto& v = report.violations.front();
    throw Error(ErrorKind::CorruptImage, std::string("image graph is malformed: ") + to_string(v.kind) +
                                             " at node " + std::to_string(v.node));
  }
  return Lexicon(std::move(table), std::move(dawg));
}

void save_compiled(const Lexicon& lex, const std::filesystem::path& path) {
  const std::string image = serialize_image(lex);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot create " + path.string());
  out.write(image.data(), static_cast<std::streamsize>(image.size()));
  out.close();
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

Lexicon load_compiled(const std::filesystem::path& path, std::shared_ptr<const CodingTable> table) {
  return deserialize_image(read_file(path), std::move(table));
}

StatsReport report_stats(const Dawg& dawg) {
  const DawgStats s = dawg.stats();
  StatsReport r;
  r.nodes = s.node_count;
  r.edges = s.edge_count;
  r.entries = s.string_count;
  r.trie_nodes = s.trie_node_count;
  r.mode = s.mode;
  if (s.node_count > 0) {
    r.ratio = std::round(static_cast<double>(s.trie_node_count) / static_cast<double>(s.node_count) * 1e4) / 1e4;
  }
  return r;
}

StatsReport report_stats(const Lexicon& lex) { return report_stats(lex.dawg()); }

std::string format_ratio(const StatsReport& r) {
  return r.ratio ? nlohmann::json(*r.ratio).dump() : "n/a";
}

std::string stats_json(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["nodes"] = r.nodes;
  j["edges"] = r.edges;
  j["entries"] = r.entries;
  j["trie_nodes"] = r.trie_nodes;
  j["ratio"] = r.ratio ? nlohmann::ordered_json(*r.ratio) : nlohmann::ordered_json(nullptr);
  j["mode"] = to_string(r.mode);
  return j.dump();
}

std::string stats_text(const StatsReport& r) {
  std::ostringstream out;
  out << "mode\t" << to_string(r.mode) << '\n'
      << "nodes\t" << r.nodes << '\n'
      << "edges\t" << r.edges << '\n'
      << "entries\t" << r.entries << '\n'
      << "trie_nodes\t" << r.trie_nodes << '\n'
      << "ratio\t" << format_ratio(r) << '\n';
  return out.str();
}

std::string dump_text(const Dawg& dawg) {
  const ExposedGraph g = exposed(dawg);
  std::ostringstream out;
  out << "mode\t" << to_string(dawg.mode()) << '\n'
      << "nodes\t" << g.node_count << '\n'
      << "edges\t" << g.edges.size() << '\n'
      << "initial\t" << g.initial << '\n'
      << "terminal\t" << g.terminal << '\n';
  for (const auto& e : g.edges) out << e.from << '\t' << escape_label(e.label) << '\t' << e.to << '\n';
  return out.str();
}

std::string dump_json(const Dawg& dawg) {
  const ExposedGraph g = exposed(dawg);
  nlohmann::ordered_json j;
  j["mode"] = to_string(dawg.mode());
  j["nodes"] = g.node_count;
  j["initial"] = g.initial;
  j["terminal"] = g.terminal;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"from", e.from}, {"label", utf8::encode(e.label)}, {"to", e.to}});
  }
  j["edges"] = std::move(edges);
  return j.dump();
}

std::string dump_dot(const Dawg& dawg) {
  const ExposedGraph g = exposed(dawg);
  std::ostringstream out;
  out << "digraph dawg {\n"
      << "  // nodes " << g.node_count << " edges " << g.edges.size() << '\n'
      << "  rankdir=LR;\n"
      << "  node [shape=circle];\n";
  for (std::size_t id = 0; id < g.node_count; ++id) {
    out << "  n" << id;
    if (id == g.initial) out << " [shape=box, label=\"initial\"]";
    else if (id == g.terminal) out << " [shape=doublecircle, label=\"terminal\"]";
    else out << " [label=\"" << id << "\"]";
    out << ";\n";
  }
  for (const auto& e : g.edges) {
    std::string label = escape_label(e.label);
    std::string quoted;
    for (char c : label) {
      if (c == '"' || c == '\\') quoted.push_back('\\');
      quoted.push_back(c);
    }
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << quoted << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mdawg
