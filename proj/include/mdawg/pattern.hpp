#pragma once

#include <string_view>
#include <vector>

#include "mdawg/utf8.hpp"

namespace mdawg {

/// One pattern element: a literal symbol or a wildcard matching any
/// (possibly empty) substring.
struct PatternElement {
  bool wildcard = false;
  Symbol symbol = 0;

  static PatternElement literal(Symbol s) { return {false, s}; }
  static PatternElement any() { return {true, 0}; }

  friend bool operator==(const PatternElement&, const PatternElement&) = default;
};

/// Sequence of literals and substring wildcards. Adjacent wildcards are
/// always collapsed into one.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<PatternElement> elements);

  /// `*` is a wildcard, `\*` and `\\` are the escaped literals.
  static Pattern parse(std::string_view utf8_text);
  static Pattern literals(SymbolView symbols);
  static Pattern universal();

  Pattern& push_literal(Symbol s);
  Pattern& push_literals(SymbolView symbols);
  Pattern& push_wildcard();
  Pattern& append(const Pattern& other);

  const std::vector<PatternElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::size_t wildcard_count() const noexcept;

  Pattern reversed() const;

  /// Reference matcher (glob backtracking over one string); used for
  /// post-filtering, not for graph search.
  bool matches(SymbolView text) const;

  std::string to_string() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<PatternElement> elements_;
};

}  // namespace mdawg
