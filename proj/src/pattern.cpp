#include "mdawg/pattern.hpp"

#include <algorithm>

#include "mdawg/error.hpp"

namespace mdawg {

Pattern::Pattern(std::vector<PatternElement> elements) {
  elements_.reserve(elements.size());
  for (const auto& e : elements) {
    if (e.wildcard) {
      push_wildcard();
    } else {
      elements_.push_back(e);
    }
  }
}

Pattern Pattern::parse(std::string_view utf8_text) {
  const SymbolString symbols = utf8::decode(utf8_text);
  Pattern p;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == U'\\') {
      if (i + 1 == symbols.size()) {
        throw Error(ErrorKind::InvalidArgument, "dangling escape at end of pattern");
      }
      p.push_literal(symbols[++i]);
    } else if (symbols[i] == U'*') {
      p.push_wildcard();
    } else {
      p.push_literal(symbols[i]);
    }
  }
  return p;
}

Pattern Pattern::literals(SymbolView symbols) {
  Pattern p;
  p.push_literals(symbols);
  return p;
}

Pattern Pattern::universal() {
  Pattern p;
  p.push_wildcard();
  return p;
}

Pattern& Pattern::push_literal(Symbol s) {
  elements_.push_back(PatternElement::literal(s));
  return *this;
}

Pattern& Pattern::push_literals(SymbolView symbols) {
  for (Symbol s : symbols) elements_.push_back(PatternElement::literal(s));
  return *this;
}

Pattern& Pattern::push_wildcard() {
  if (elements_.empty() || !elements_.back().wildcard) {
    elements_.push_back(PatternElement::any());
  }
  return *this;
}

Pattern& Pattern::append(const Pattern& other) {
  for (const auto& e : other.elements_) {
    if (e.wildcard) {
      push_wildcard();
    } else {
      elements_.push_back(e);
    }
  }
  return *this;
}

std::size_t Pattern::wildcard_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(elements_.begin(), elements_.end(), [](const auto& e) { return e.wildcard; }));
}

Pattern Pattern::reversed() const {
  Pattern p;
  p.elements_.assign(elements_.rbegin(), elements_.rend());
  return p;
}

bool Pattern::matches(SymbolView text) const {
  std::size_t p = 0;
  std::size_t t = 0;
  std::size_t star = elements_.size();
  std::size_t resume = 0;
  while (t < text.size()) {
    if (p < elements_.size() && !elements_[p].wildcard && elements_[p].symbol == text[t]) {
      ++p;
      ++t;
    } else if (p < elements_.size() && elements_[p].wildcard) {
      star = p++;
      resume = t;
    } else if (star != elements_.size()) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < elements_.size() && elements_[p].wildcard) ++p;
  return p == elements_.size();
}

std::string Pattern::to_string() const {
  std::string out;
  for (const auto& e : elements_) {
    if (e.wildcard) {
      out += '*';
    } else {
      if (e.symbol == U'*' || e.symbol == U'\\') out += '\\';
      out += utf8::encode(e.symbol);
    }
  }
  return out;
}

}  // namespace mdawg
