#pragma once

#include <string>
#include <string_view>

namespace mdawg {

/// Edge labels are Unicode scalar values; a stored string is a sequence of them.
using Symbol = char32_t;
using SymbolString = std::u32string;
using SymbolView = std::u32string_view;

namespace utf8 {

/// Throws Error(InvalidUtf8) on malformed input, overlongs and surrogates.
SymbolString decode(std::string_view text);

std::string encode(SymbolView symbols);
std::string encode(Symbol symbol);

bool is_valid(std::string_view text);

}  // namespace utf8
}  // namespace mdawg
