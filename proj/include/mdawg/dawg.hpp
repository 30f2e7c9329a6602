#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mdawg/pattern.hpp"
#include "mdawg/utf8.hpp"

namespace mdawg {

enum class DawgMode : std::uint8_t { Deterministic = 0, NonDeterministic = 1 };

const char* to_string(DawgMode mode);

/// Terminates every stored string in Deterministic mode.
inline constexpr Symbol kStopSymbol = U'\0';

using NodeId = std::uint32_t;

struct Edge {
  NodeId from;
  Symbol label;
  NodeId to;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct DawgStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t string_count = 0;
  DawgMode mode = DawgMode::Deterministic;
  std::uint64_t trie_node_count = 0;
};

enum class ViolationKind { Cycle, Unreachable, DeadEnd, Determinism, StopSymbol, Terminal };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  NodeId node;
  std::string detail;
};

struct IntegrityReport {
  std::vector<Violation> violations;

  bool healthy() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

/// Raw storage form of a DAWG: the internal minimal DFA with per-node final
/// flags. This is what the compiled image persists and what `from_raw`
/// accepts; node ids are dense indices into `final_flags`.
struct RawDawg {
  DawgMode mode = DawgMode::Deterministic;
  std::vector<bool> final_flags;
  std::vector<Edge> edges;
  NodeId initial = 0;
  NodeId terminal = 1;
  std::uint64_t string_count = 0;
};

/// Directed acyclic word graph with one initial and one terminal node,
/// built incrementally from unsorted input.
///
/// Internally the graph is a minimal acyclic DFA whose accepting nodes carry
/// a final flag. In Deterministic mode every string is stored with a trailing
/// stop symbol, so the terminal node is the only final node and the exposed
/// graph is the DFA itself. In NonDeterministic mode strings are stored
/// without a stop symbol; the exposed graph turns each inner final flag into
/// a second, same-labeled edge into the terminal node.
///
/// Reads are const and safe to run concurrently on an unmodified graph.
/// Insertion needs exclusive access.
class Dawg {
 public:
  explicit Dawg(DawgMode mode = DawgMode::Deterministic);

  /// Rebuilds the internal indexes from storage form. No structural
  /// validation beyond index bounds; run check_integrity() on the result.
  static Dawg from_raw(const RawDawg& raw);
  /// Dense, canonical (BFS in label order) renumbering of the graph.
  RawDawg to_raw() const;

  DawgMode mode() const noexcept { return mode_; }
  NodeId initial() const noexcept { return initial_; }
  NodeId terminal() const noexcept { return terminal_; }
  std::size_t string_count() const noexcept { return string_count_; }
  bool empty() const noexcept { return string_count_ == 0; }

  /// Returns false if `s` was already present. Throws RejectedSymbol for the
  /// stop symbol, InvalidArgument for the empty string.
  bool insert(SymbolView s);
  bool insert(std::string_view utf8_text);

  bool contains(SymbolView s) const;
  bool contains(std::string_view utf8_text) const;

  /// All stored strings in lexicographic scalar order.
  std::vector<SymbolString> enumerate() const;

  /// Search from the initial node downwards.
  std::vector<SymbolString> match_forward(const Pattern& pattern) const;
  /// Search from the terminal node upwards along reversed edges; same result
  /// set and order as match_forward().
  std::vector<SymbolString> match_reverse(const Pattern& pattern) const;

  DawgStats stats() const;
  IntegrityReport check_integrity() const;

  /// Exposed graph view (stop edges included, mode-specific terminal edges
  /// materialised). Node ids are the internal, unstable ones.
  std::vector<NodeId> nodes() const;
  std::vector<Edge> edges() const;

 private:
  struct InEdge {
    Symbol label;
    NodeId source;
  };

  struct Node {
    std::vector<std::pair<Symbol, NodeId>> out;  // sorted by label
    std::vector<InEdge> in;
    bool final = false;
    bool alive = false;
  };

  NodeId new_node();
  void free_node(NodeId id);
  NodeId clone_node(NodeId id);
  void add_edge(NodeId from, Symbol label, NodeId to);
  void redirect_edge(NodeId from, Symbol label, NodeId to);
  void remove_in_edge(NodeId target, Symbol label, NodeId source);
  NodeId target(NodeId from, Symbol label) const;  // kNoNode if absent
  void set_final(NodeId id, bool value);

  std::size_t signature_hash(NodeId id) const;
  bool same_signature(NodeId a, NodeId b) const;
  void register_node(NodeId id);
  void unregister_node(NodeId id);
  NodeId find_equivalent(NodeId id) const;  // kNoNode if none

  SymbolString stored_form(SymbolView s) const;
  Pattern stored_pattern(const Pattern& p) const;
  SymbolString visible_form(SymbolString stored) const;
  void check_symbols(SymbolView s) const;
  std::vector<NodeId> topological_order() const;

  DawgMode mode_;
  std::vector<Node> nodes_;
  std::vector<NodeId> free_list_;
  std::unordered_multimap<std::size_t, NodeId> register_;
  std::unordered_set<NodeId> finals_;
  NodeId initial_ = 0;
  NodeId terminal_ = 0;
  std::size_t live_nodes_ = 0;
  std::size_t core_edges_ = 0;
  std::size_t string_count_ = 0;
};

}  // namespace mdawg
