#include "mdawg/dawg.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>

#include "mdawg/error.hpp"

namespace mdawg {

namespace {

constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

// Thompson-style simulation of a wildcard pattern: a state set is a sorted
// list of positions 0..n, where n means "pattern fully consumed".
class PatternRunner {
 public:
  using States = std::vector<std::uint32_t>;

  explicit PatternRunner(const Pattern& pattern) : elements_(pattern.elements()) {}

  States start() const {
    States s{0};
    close(s);
    return s;
  }

  bool accepts(const States& s) const {
    return !s.empty() && s.back() == elements_.size();
  }

  // True when some state can consume any symbol.
  bool has_wildcard(const States& s) const {
    for (auto p : s) {
      if (p < elements_.size() && elements_[p].wildcard) return true;
    }
    return false;
  }

  // Literals any state in `s` is waiting for (only meaningful without an
  // active wildcard).
  void wanted(const States& s, std::vector<Symbol>& out) const {
    out.clear();
    for (auto p : s) {
      if (p < elements_.size() && !elements_[p].wildcard) out.push_back(elements_[p].symbol);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  States step(const States& s, Symbol c) const {
    States next;
    for (auto p : s) {
      if (p >= elements_.size()) continue;
      const auto& e = elements_[p];
      if (e.wildcard) {
        next.push_back(p);
      } else if (e.symbol == c) {
        next.push_back(p + 1);
      }
    }
    close(next);
    return next;
  }

 private:
  void close(States& s) const {
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
      auto p = s[i];
      while (p < elements_.size() && elements_[p].wildcard) s.push_back(++p);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  const std::vector<PatternElement>& elements_;
};

}  // namespace

const char* to_string(DawgMode mode) {
  return mode == DawgMode::Deterministic ? "deterministic" : "nondeterministic";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Cycle: return "Cycle";
    case ViolationKind::Unreachable: return "Unreachable";
    case ViolationKind::DeadEnd: return "DeadEnd";
    case ViolationKind::Determinism: return "DeterminismViolation";
    case ViolationKind::StopSymbol: return "StopSymbol";
    case ViolationKind::Terminal: return "Terminal";
  }
  return "Unknown";
}

std::size_t IntegrityReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

Dawg::Dawg(DawgMode mode) : mode_(mode) {
  initial_ = new_node();
  terminal_ = new_node();
  set_final(terminal_, true);
}

// --- node and edge primitives -------------------------------------------

NodeId Dawg::new_node() {
  NodeId id;
  if (!free_list_.empty()) {
    id = free_list_.back();
    free_list_.pop_back();
  } else {
    id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[id].alive = true;
  ++live_nodes_;
  return id;
}

void Dawg::free_node(NodeId id) {
  Node& n = nodes_[id];
  for (const auto& [label, to] : n.out) remove_in_edge(to, label, id);
  core_edges_ -= n.out.size();
  n.out.clear();
  n.out.shrink_to_fit();
  n.in.clear();
  n.in.shrink_to_fit();
  set_final(id, false);
  n.alive = false;
  --live_nodes_;
  free_list_.push_back(id);
}

NodeId Dawg::clone_node(NodeId id) {
  const NodeId c = new_node();
  const auto out = nodes_[id].out;
  for (const auto& [label, to] : out) add_edge(c, label, to);
  set_final(c, nodes_[id].final);
  return c;
}

void Dawg::add_edge(NodeId from, Symbol label, NodeId to) {
  auto& out = nodes_[from].out;
  auto it = std::lower_bound(out.begin(), out.end(), label,
                             [](const auto& e, Symbol l) { return e.first < l; });
  out.insert(it, {label, to});
  nodes_[to].in.push_back({label, from});
  ++core_edges_;
}

void Dawg::redirect_edge(NodeId from, Symbol label, NodeId to) {
  auto& out = nodes_[from].out;
  auto it = std::lower_bound(out.begin(), out.end(), label,
                             [](const auto& e, Symbol l) { return e.first < l; });
  assert(it != out.end() && it->first == label);
  remove_in_edge(it->second, label, from);
  it->second = to;
  nodes_[to].in.push_back({label, from});
}

void Dawg::remove_in_edge(NodeId target, Symbol label, NodeId source) {
  auto& in = nodes_[target].in;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].label == label && in[i].source == source) {
      in[i] = in.back();
      in.pop_back();
      return;
    }
  }
  assert(false && "in-edge not found");
}

NodeId Dawg::target(NodeId from, Symbol label) const {
  const auto& out = nodes_[from].out;
  auto it = std::lower_bound(out.begin(), out.end(), label,
                             [](const auto& e, Symbol l) { return e.first < l; });
  return (it != out.end() && it->first == label) ? it->second : kNoNode;
}

void Dawg::set_final(NodeId id, bool value) {
  nodes_[id].final = value;
  if (value) {
    finals_.insert(id);
  } else {
    finals_.erase(id);
  }
}

// --- register of canonical nodes ------------------------------------------

std::size_t Dawg::signature_hash(NodeId id) const {
  const Node& n = nodes_[id];
  std::size_t seed = n.final ? 1 : 0;
  for (const auto& [label, to] : n.out) {
    hash_combine(seed, label);
    hash_combine(seed, to);
  }
  return seed;
}

bool Dawg::same_signature(NodeId a, NodeId b) const {
  return nodes_[a].final == nodes_[b].final && nodes_[a].out == nodes_[b].out;
}

void Dawg::register_node(NodeId id) {
  register_.emplace(signature_hash(id), id);
}

void Dawg::unregister_node(NodeId id) {
  auto [first, last] = register_.equal_range(signature_hash(id));
  for (auto it = first; it != last; ++it) {
    if (it->second == id) {
      register_.erase(it);
      return;
    }
  }
  assert(false && "node missing from register");
}

NodeId Dawg::find_equivalent(NodeId id) const {
  auto [first, last] = register_.equal_range(signature_hash(id));
  for (auto it = first; it != last; ++it) {
    if (it->second != id && same_signature(it->second, id)) return it->second;
  }
  return kNoNode;
}

// --- string forms -----------------------------------------------------------

void Dawg::check_symbols(SymbolView s) const {
  if (s.find(kStopSymbol) != SymbolView::npos) {
    throw Error(ErrorKind::RejectedSymbol, "string contains the reserved stop symbol U+0000");
  }
}

SymbolString Dawg::stored_form(SymbolView s) const {
  SymbolString w(s);
  if (mode_ == DawgMode::Deterministic) w.push_back(kStopSymbol);
  return w;
}

Pattern Dawg::stored_pattern(const Pattern& p) const {
  Pattern stored = p;
  if (mode_ == DawgMode::Deterministic) stored.push_literal(kStopSymbol);
  return stored;
}

SymbolString Dawg::visible_form(SymbolString stored) const {
  if (mode_ == DawgMode::Deterministic && !stored.empty() && stored.back() == kStopSymbol) {
    stored.pop_back();
  }
  return stored;
}

// --- insertion ----------------------------------------------------------------

bool Dawg::insert(std::string_view utf8_text) { return insert(SymbolView(utf8::decode(utf8_text))); }

bool Dawg::insert(SymbolView s) {
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "cannot insert the empty string");
  check_symbols(s);
  const SymbolString w = stored_form(s);

  // Stage 1: follow the longest prefix already in the graph.
  std::vector<NodeId> path{initial_};
  std::size_t matched = 0;
  while (matched < w.size()) {
    const NodeId next = target(path.back(), w[matched]);
    if (next == kNoNode) break;
    path.push_back(next);
    ++matched;
  }
  if (matched == w.size() && nodes_[path.back()].final) return false;

  // Every node on the prefix path changes its right language. Nodes up to the
  // first confluence are edited in place; from there on the path is cloned so
  // that other strings sharing those nodes keep their suffixes.
  std::size_t confluence = path.size();
  for (std::size_t j = 1; j < path.size(); ++j) {
    if (path[j] == terminal_ || nodes_[path[j]].in.size() > 1) {
      confluence = j;
      break;
    }
  }
  for (std::size_t j = 1; j < confluence; ++j) unregister_node(path[j]);
  for (std::size_t j = confluence; j < path.size(); ++j) {
    const NodeId copy = clone_node(path[j]);
    redirect_edge(path[j - 1], w[j - 1], copy);
    path[j] = copy;
  }

  // Stage 2: a fresh chain for the unmatched remainder, ending in the terminal.
  if (matched < w.size()) {
    NodeId last = path.back();
    for (std::size_t j = matched; j + 1 < w.size(); ++j) {
      const NodeId fresh = new_node();
      add_edge(last, w[j], fresh);
      path.push_back(fresh);
      last = fresh;
    }
    add_edge(last, w.back(), terminal_);
  } else {
    set_final(path.back(), true);
  }

  // Stage 3: merge new and edited nodes into equivalent registered ones,
  // bottom-up so that children are already canonical.
  for (std::size_t j = path.size() - 1; j >= 1; --j) {
    const NodeId node = path[j];
    const NodeId twin = find_equivalent(node);
    if (twin != kNoNode) {
      redirect_edge(path[j - 1], w[j - 1], twin);
      free_node(node);
    } else {
      register_node(node);
    }
  }

  ++string_count_;
  return true;
}

// --- queries --------------------------------------------------------------------

bool Dawg::contains(std::string_view utf8_text) const {
  if (!utf8::is_valid(utf8_text)) return false;
  return contains(SymbolView(utf8::decode(utf8_text)));
}

bool Dawg::contains(SymbolView s) const {
  if (s.empty() || s.find(kStopSymbol) != SymbolView::npos) return false;
  NodeId node = initial_;
  for (Symbol c : stored_form(s)) {
    node = target(node, c);
    if (node == kNoNode) return false;
  }
  return nodes_[node].final;
}

std::vector<SymbolString> Dawg::enumerate() const { return match_forward(Pattern::universal()); }

std::vector<SymbolString> Dawg::match_forward(const Pattern& pattern) const {
  std::vector<SymbolString> results;
  if (empty()) return results;
  const Pattern stored = stored_pattern(pattern);
  const PatternRunner runner(stored);
  SymbolString buffer;
  std::vector<Symbol> wanted;

  auto visit = [&](auto&& self, NodeId node, const PatternRunner::States& states) -> void {
    const Node& n = nodes_[node];
    if (n.final && runner.accepts(states)) results.push_back(visible_form(buffer));
    if (runner.has_wildcard(states)) {
      for (const auto& [label, to] : n.out) {
        auto next = runner.step(states, label);
        if (next.empty()) continue;
        buffer.push_back(label);
        self(self, to, next);
        buffer.pop_back();
      }
      return;
    }
    runner.wanted(states, wanted);
    const std::vector<Symbol> labels = wanted;
    for (Symbol label : labels) {
      const NodeId to = target(node, label);
      if (to == kNoNode) continue;
      auto next = runner.step(states, label);
      buffer.push_back(label);
      self(self, to, next);
      buffer.pop_back();
    }
  };
  visit(visit, initial_, runner.start());
  return results;
}

std::vector<SymbolString> Dawg::match_reverse(const Pattern& pattern) const {
  std::vector<SymbolString> results;
  if (empty()) return results;
  const Pattern stored = stored_pattern(pattern).reversed();
  const PatternRunner runner(stored);
  SymbolString buffer;

  auto visit = [&](auto&& self, NodeId node, const PatternRunner::States& states) -> void {
    if (node == initial_) {
      if (runner.accepts(states)) {
        SymbolString forward(buffer.rbegin(), buffer.rend());
        results.push_back(visible_form(std::move(forward)));
      }
      return;
    }
    for (const auto& edge : nodes_[node].in) {
      auto next = runner.step(states, edge.label);
      if (next.empty()) continue;
      buffer.push_back(edge.label);
      self(self, edge.source, next);
      buffer.pop_back();
    }
  };
  const auto start = runner.start();
  for (NodeId f : finals_) visit(visit, f, start);
  std::sort(results.begin(), results.end());
  return results;
}

// --- structure ----------------------------------------------------------------

std::vector<NodeId> Dawg::nodes() const {
  std::vector<NodeId> ids;
  ids.reserve(live_nodes_);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].alive) ids.push_back(id);
  }
  return ids;
}

std::vector<Edge> Dawg::edges() const {
  std::vector<Edge> result;
  result.reserve(core_edges_);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (!nodes_[id].alive) continue;
    for (const auto& [label, to] : nodes_[id].out) {
      result.push_back({id, label, to});
      if (mode_ == DawgMode::NonDeterministic && to != terminal_ && nodes_[to].final) {
        result.push_back({id, label, terminal_});
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<NodeId> Dawg::topological_order() const {
  std::vector<std::size_t> indegree(nodes_.size(), 0);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (!nodes_[id].alive) continue;
    for (const auto& e : nodes_[id].out) ++indegree[e.second];
  }
  std::vector<NodeId> order;
  order.reserve(live_nodes_);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].alive && indegree[id] == 0) order.push_back(id);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& e : nodes_[order[i]].out) {
      if (--indegree[e.second] == 0) order.push_back(e.second);
    }
  }
  return order;
}

DawgStats Dawg::stats() const {
  DawgStats s;
  s.mode = mode_;
  s.string_count = string_count_;
  if (empty()) return s;
  s.node_count = live_nodes_;
  s.edge_count = core_edges_;
  if (mode_ == DawgMode::NonDeterministic) {
    for (NodeId f : finals_) {
      if (f != terminal_) s.edge_count += nodes_[f].in.size();
    }
  }
  // Each distinct path from the initial node is one distinct prefix, i.e. one
  // trie node.
  std::vector<std::uint64_t> paths(nodes_.size(), 0);
  paths[initial_] = 1;
  for (NodeId id : topological_order()) {
    s.trie_node_count += paths[id];
    for (const auto& e : nodes_[id].out) paths[e.second] += paths[id];
  }
  return s;
}

IntegrityReport Dawg::check_integrity() const {
  IntegrityReport report;
  const auto live = nodes();
  const auto all_edges = edges();
  auto flag = [&](ViolationKind kind, NodeId node, std::string detail) {
    report.violations.push_back({kind, node, std::move(detail)});
  };

  std::vector<std::vector<std::pair<Symbol, NodeId>>> out(nodes_.size());
  std::vector<std::vector<NodeId>> in(nodes_.size());
  for (const auto& e : all_edges) {
    out[e.from].push_back({e.label, e.to});
    in[e.to].push_back(e.from);
  }

  // Acyclicity (Kahn).
  std::vector<std::size_t> indegree(nodes_.size(), 0);
  for (const auto& e : all_edges) ++indegree[e.to];
  std::deque<NodeId> queue;
  for (NodeId id : live) {
    if (indegree[id] == 0) queue.push_back(id);
  }
  std::size_t sorted = 0;
  std::vector<bool> emitted(nodes_.size(), false);
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    emitted[id] = true;
    ++sorted;
    for (const auto& [label, to] : out[id]) {
      if (--indegree[to] == 0) queue.push_back(to);
    }
  }
  if (sorted != live.size()) {
    // Peel sinks off the remainder too; what survives both passes is on a cycle.
    std::vector<std::size_t> outdegree(nodes_.size(), 0);
    for (const auto& e : all_edges) {
      if (!emitted[e.from] && !emitted[e.to]) ++outdegree[e.from];
    }
    for (NodeId id : live) {
      if (!emitted[id] && outdegree[id] == 0) queue.push_back(id);
    }
    while (!queue.empty()) {
      const NodeId id = queue.front();
      queue.pop_front();
      emitted[id] = true;
      for (NodeId from : in[id]) {
        if (!emitted[from] && --outdegree[from] == 0) queue.push_back(from);
      }
    }
    for (NodeId id : live) {
      if (!emitted[id]) flag(ViolationKind::Cycle, id, "node lies on a directed cycle");
    }
  }

  // Pruning: every node on some initial -> terminal path. The empty graph's
  // bare initial/terminal pair is exempt.
  if (!all_edges.empty()) {
    auto reach = [&](NodeId from, const auto& next) {
      std::vector<bool> seen(nodes_.size(), false);
      std::vector<NodeId> stack{from};
      seen[from] = true;
      while (!stack.empty()) {
        const NodeId id = stack.back();
        stack.pop_back();
        for (NodeId n : next(id)) {
          if (!seen[n]) {
            seen[n] = true;
            stack.push_back(n);
          }
        }
      }
      return seen;
    };
    const auto forward = reach(initial_, [&](NodeId id) {
      std::vector<NodeId> r;
      for (const auto& e : out[id]) r.push_back(e.second);
      return r;
    });
    const auto backward = reach(terminal_, [&](NodeId id) { return in[id]; });
    for (NodeId id : live) {
      if (!forward[id]) flag(ViolationKind::Unreachable, id, "not reachable from the initial node");
      if (!backward[id]) flag(ViolationKind::DeadEnd, id, "cannot reach the terminal node");
    }
  }

  for (NodeId id : live) {
    const auto& edges_out = out[id];
    if (mode_ == DawgMode::Deterministic) {
      for (std::size_t i = 1; i < edges_out.size(); ++i) {
        if (edges_out[i].first == edges_out[i - 1].first) {
          flag(ViolationKind::Determinism, id,
               "two departing edges labeled U+" + std::to_string(edges_out[i].first));
        }
      }
    }
    for (const auto& [label, to] : edges_out) {
      if (mode_ == DawgMode::Deterministic) {
        if ((label == kStopSymbol) != (to == terminal_)) {
          flag(ViolationKind::StopSymbol, id, "stop symbol must label exactly the edges into the terminal");
        }
      } else if (label == kStopSymbol) {
        flag(ViolationKind::StopSymbol, id, "stop symbol in a nondeterministic graph");
      }
    }
  }
  if (!out[terminal_].empty()) flag(ViolationKind::Terminal, terminal_, "terminal node has departing edges");
  if (!in[initial_].empty()) flag(ViolationKind::Terminal, initial_, "initial node has incoming edges");
  if (mode_ == DawgMode::Deterministic) {
    for (NodeId f : finals_) {
      if (f != terminal_) flag(ViolationKind::Terminal, f, "final flag on a non-terminal node");
    }
  }
  return report;
}

// --- storage form -------------------------------------------------------------

RawDawg Dawg::to_raw() const {
  std::vector<NodeId> renumber(nodes_.size(), kNoNode);
  std::vector<NodeId> order;
  order.reserve(live_nodes_);
  auto assign = [&](NodeId id) {
    if (renumber[id] == kNoNode) {
      renumber[id] = static_cast<NodeId>(order.size());
      order.push_back(id);
    }
  };
  assign(initial_);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& e : nodes_[order[i]].out) assign(e.second);
  }
  assign(terminal_);

  RawDawg raw;
  raw.mode = mode_;
  raw.initial = renumber[initial_];
  raw.terminal = renumber[terminal_];
  raw.string_count = string_count_;
  raw.final_flags.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Node& n = nodes_[order[i]];
    raw.final_flags[i] = n.final;
    for (const auto& [label, to] : n.out) {
      raw.edges.push_back({static_cast<NodeId>(i), label, renumber[to]});
    }
  }
  return raw;
}

Dawg Dawg::from_raw(const RawDawg& raw) {
  const std::size_t n = raw.final_flags.size();
  if (n < 2 || raw.initial >= n || raw.terminal >= n || raw.initial == raw.terminal) {
    throw Error(ErrorKind::CorruptImage, "initial/terminal node ids out of range");
  }
  Dawg d(raw.mode);
  d.nodes_.assign(n, Node{});
  d.free_list_.clear();
  d.finals_.clear();
  d.register_.clear();
  d.core_edges_ = 0;
  d.live_nodes_ = n;
  d.initial_ = raw.initial;
  d.terminal_ = raw.terminal;
  for (NodeId id = 0; id < n; ++id) {
    d.nodes_[id].alive = true;
    d.set_final(id, raw.final_flags[id]);
  }
  for (const auto& e : raw.edges) {
    if (e.from >= n || e.to >= n) throw Error(ErrorKind::CorruptImage, "edge endpoint out of range");
    d.add_edge(e.from, e.label, e.to);
  }
  for (NodeId id = 0; id < n; ++id) {
    if (id != d.initial_ && id != d.terminal_) d.register_node(id);
  }
  d.string_count_ = static_cast<std::size_t>(raw.string_count);
  return d;
}

}  // namespace mdawg
