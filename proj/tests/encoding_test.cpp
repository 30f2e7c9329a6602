#include "mdawg/encoding.hpp"

#include <gtest/gtest.h>

#include <random>

#include "mdawg/error.hpp"

using namespace mdawg;

namespace {

const CodingTable& greek() { return CodingTable::greek(); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no mdawg::Error thrown";
  return ErrorKind::InvalidArgument;
}

FeatureSet comparative_features() {
  FeatureSet f;
  f.pos_word = U'E';
  f.pos_lemma = U'E';
  f.set(Dimension::Case, U'b').set(Dimension::Number, U'h').set(Dimension::Gender, U'l').set(Dimension::Degree, U's');
  return f;
}

}  // namespace

TEST(CodingTableTest, GreekTableLoadsFromDataFile) {
  const auto from_file = CodingTable::load(MDAWG_DATA_DIR "/greek_coding.json");
  EXPECT_EQ(greek().fingerprint(), from_file.fingerprint());
  EXPECT_EQ(greek().canonical_json(), from_file.canonical_json());
  EXPECT_EQ(13u, greek().parts_of_speech().size());
}

TEST(CodingTableTest, PosCodesAreUnique) {
  std::set<Symbol> codes;
  for (const auto& p : greek().parts_of_speech()) EXPECT_TRUE(codes.insert(p.code).second) << p.name;
}

TEST(CodingTableTest, TypeCodesArePosScoped) {
  EXPECT_EQ(U'λ', greek().code_of(Dimension::Type, "proper", U'N'));
  EXPECT_EQ(U'λ', greek().code_of(Dimension::Type, "co-ordinate", U'S'));
  EXPECT_FALSE(greek().code_of(Dimension::Type, "proper", U'S'));
  EXPECT_EQ("modal", greek().name_of(Dimension::Type, U'ν', U'R'));
  EXPECT_EQ("middle", greek().name_of(Dimension::Mode, U'ν', U'V'));
}

TEST(CodingTableTest, RejectsAmbiguousRows) {
  const char* bad = R"({"name":"x","version":1,
    "dimensions":{"case":{"nominative":"a"},"number":{"singular":"a"}},
    "parts_of_speech":[{"name":"noun","code":"N","types":{},
      "row":{"case":["nominative"],"number":["singular"]}}]})";
  EXPECT_EQ(ErrorKind::InvalidCodingTable, kind_of([&] { CodingTable::from_json(bad); }));
  EXPECT_EQ(ErrorKind::InvalidCodingTable, kind_of([&] { CodingTable::from_json("{"); }));
  const char* reserved = R"({"name":"x","version":1,"dimensions":{"case":{"nominative":"("}},
    "parts_of_speech":[{"name":"noun","code":"N","types":{},"row":{}}]})";
  EXPECT_EQ(ErrorKind::InvalidCodingTable, kind_of([&] { CodingTable::from_json(reserved); }));
}

TEST(EncodeFeaturesTest, ComparativeAdjective) {
  EXPECT_EQ("bhlsEE", encode_features_utf8(comparative_features(), greek()));
}

TEST(EncodeFeaturesTest, BarePreposition) {
  FeatureSet f;
  f.pos_word = f.pos_lemma = U'P';
  EXPECT_EQ("PP", encode_features_utf8(f, greek()));
}

TEST(EncodeFeaturesTest, VerbCanonicalOrder) {
  FeatureSet f;
  f.pos_word = f.pos_lemma = U'V';
  f.set(Dimension::Mood, U'm')
      .set(Dimension::Tense, U'v')
      .set(Dimension::Voice, U'γ')
      .set(Dimension::Mode, U'α')
      .set(Dimension::Type, U'θ')
      .set(Dimension::Number, U'h')
      .set(Dimension::Person, U'g');
  const std::string code = encode_features_utf8(f, greek());
  EXPECT_EQ("ghmvγαθVV", code);
  EXPECT_EQ(f, decode_features(code, greek()));
  EXPECT_EQ(9u, utf8::decode(code).size());  // 2 + present dimensions
}

TEST(EncodeFeaturesTest, StrictRejectsOffRowDimension) {
  FeatureSet f;
  f.pos_word = f.pos_lemma = U'V';
  f.set(Dimension::Case, U'b');
  EXPECT_EQ(ErrorKind::InvalidCombination,
            kind_of([&] { encode_features(f, greek(), Strictness::Strict); }));
  EXPECT_EQ(1u, validate_features(f, greek()).size());
  const auto code = encode_features_utf8(f, greek(), Strictness::Lenient);
  EXPECT_EQ("bVV", code);
  EXPECT_EQ(f, decode_features(code, greek()));
}

TEST(EncodeFeaturesTest, TypeOutsideItsPartOfSpeech) {
  FeatureSet f;
  f.pos_word = f.pos_lemma = U'V';
  f.set(Dimension::Type, U'λ');
  EXPECT_EQ(ErrorKind::InvalidCombination, kind_of([&] { encode_features(f, greek()); }));
  f.set(Dimension::Type, U'@');
  EXPECT_EQ(ErrorKind::UnknownCode, kind_of([&] { encode_features(f, greek()); }));
}

TEST(DecodeFeaturesTest, ComparativeAdjectiveCodes) {
  const auto f = decode_features(std::string_view("bhlsEE"), greek());
  EXPECT_EQ(comparative_features(), f);
  EXPECT_EQ(U'b', f.get(Dimension::Case));  // genitive
  EXPECT_EQ(U'h', f.get(Dimension::Number));  // singular
}

TEST(DecodeFeaturesTest, PrepositionOnly) {
  const auto f = decode_features(std::string_view("PP"), greek());
  EXPECT_EQ(U'P', f.pos_word);
  EXPECT_EQ(U'P', f.pos_lemma);
  EXPECT_EQ(0u, f.present_count());
}

TEST(DecodeFeaturesTest, SharedGlyphResolvedByPartOfSpeech) {
  EXPECT_EQ(U'ν', decode_features(std::string_view("νRR"), greek()).get(Dimension::Type));
  EXPECT_EQ(U'ν', decode_features(std::string_view("νVV"), greek()).get(Dimension::Mode));
  EXPECT_EQ(U'λ', decode_features(std::string_view("λSS"), greek()).get(Dimension::Type));
  EXPECT_EQ(U'λ', decode_features(std::string_view("λNN"), greek()).get(Dimension::Type));
}

TEST(DecodeFeaturesTest, Errors) {
  EXPECT_EQ(ErrorKind::UnknownCode, kind_of([] { decode_features(std::string_view("@EE"), greek()); }));
  EXPECT_EQ(ErrorKind::AmbiguousType, kind_of([] { decode_features(std::string_view("λVV"), greek()); }));
  EXPECT_EQ(ErrorKind::UnknownCode, kind_of([] { decode_features(std::string_view("bh"), greek()); }));
  EXPECT_EQ(ErrorKind::MalformedFeatures, kind_of([] { decode_features(std::string_view("E"), greek()); }));
  EXPECT_EQ(ErrorKind::MalformedFeatures, kind_of([] { decode_features(std::string_view("hbEE"), greek()); }));
}

TEST(DecodeFeaturesTest, AllNounCombinationsRoundTrip) {
  int count = 0;
  for (Symbol c : {U'a', U'b', U'c'}) {
    for (Symbol n : {U'h', U'i'}) {
      for (Symbol g : {U'j', U'k', U'l'}) {
        for (Symbol t : {U'λ', U'μ'}) {
          FeatureSet f;
          f.pos_word = f.pos_lemma = U'N';
          f.set(Dimension::Case, c).set(Dimension::Number, n).set(Dimension::Gender, g).set(Dimension::Type, t);
          EXPECT_EQ(f, decode_features(encode_features(f, greek(), Strictness::Strict), greek()));
          ++count;
        }
      }
    }
  }
  EXPECT_EQ(36, count);
}

TEST(ReverseStringTest, Examples) {
  EXPECT_EQ("ςομινόμ", reverse_string(std::string_view("μόνιμος")));
  EXPECT_EQ("", reverse_string(std::string_view("")));
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    SymbolString s(rng() % 12, U'a');
    for (auto& c : s) c = static_cast<Symbol>(0x20 + rng() % 0x500);
    EXPECT_EQ(s, reverse_string(SymbolView(reverse_string(SymbolView(s)))));
    EXPECT_EQ(s.size(), reverse_string(SymbolView(s)).size());
  }
}

TEST(EntryTest, ComparativeAdjectiveEntry) {
  const Entry e{"μονιμότερον", comparative_features(), "μόνιμος"};
  EXPECT_EQ("μονιμότερον(bhlsEE)ςομινόμ", encode_entry_utf8(e, greek()));
  EXPECT_EQ(e, decode_entry(std::string_view("μονιμότερον(bhlsEE)ςομινόμ"), greek()));
}

TEST(EntryTest, CoordinateConjunction) {
  FeatureSet f;
  f.pos_word = f.pos_lemma = U'S';
  f.set(Dimension::Type, U'λ');
  const Entry e{"και", f, "και"};
  const auto encoded = encode_entry_utf8(e, greek());
  EXPECT_EQ("και(λSS)ιακ", encoded);
  EXPECT_EQ(e, decode_entry(std::string_view(encoded), greek()));
}

TEST(EntryTest, MalformedEntries) {
  EXPECT_EQ(ErrorKind::MalformedEntry, kind_of([] { decode_entry(std::string_view("x()y"), greek()); }));
  EXPECT_EQ(ErrorKind::MalformedEntry, kind_of([] { decode_entry(std::string_view("xPP)y"), greek()); }));
  EXPECT_EQ(ErrorKind::MalformedEntry, kind_of([] { decode_entry(std::string_view("x(PP)(y"), greek()); }));
  EXPECT_EQ(ErrorKind::MalformedEntry, kind_of([] { decode_entry(std::string_view("x)PP(y"), greek()); }));
  EXPECT_EQ(ErrorKind::MalformedEntry, kind_of([] { decode_entry(std::string_view("(PP)y"), greek()); }));
  EXPECT_EQ(ErrorKind::UnknownCode, kind_of([] { decode_entry(std::string_view("x(@PP)y"), greek()); }));
}

TEST(EntryTest, ReservedSymbolsInWords) {
  FeatureSet f;
  f.pos_word = f.pos_lemma = U'X';
  EXPECT_EQ(ErrorKind::ReservedSymbol, kind_of([&] { encode_entry(Entry{"a(b", f, "x"}, greek()); }));
  EXPECT_EQ(ErrorKind::ReservedSymbol, kind_of([&] { encode_entry(Entry{"ab", f, "x)"}, greek()); }));
  EXPECT_EQ(ErrorKind::InvalidArgument, kind_of([&] { encode_entry(Entry{"", f, "x"}, greek()); }));
}

TEST(EntryTest, RandomRoundTrips) {
  std::mt19937 rng(11);
  const auto& parts = greek().parts_of_speech();
  const std::u32string letters = U"αβγδεζηθικλμνξοπρστυφχψωάέήίόύώς";
  for (int i = 0; i < 2000; ++i) {
    const auto& pos = parts[rng() % parts.size()];
    FeatureSet f;
    f.pos_word = pos.code;
    f.pos_lemma = parts[rng() % parts.size()].code;
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      const auto& row = pos.row[d];
      if (!row.empty() && rng() % 3 != 0) f.values[d] = row[rng() % row.size()];
    }
    auto word = [&] {
      SymbolString w(1 + rng() % 10, U'α');
      for (auto& c : w) c = letters[rng() % letters.size()];
      return utf8::encode(w);
    };
    const Entry e{word(), f, word()};
    EXPECT_EQ(e, decode_entry(SymbolView(encode_entry(e, greek(), Strictness::Strict)), greek()));
  }
}

TEST(NamedFeaturesTest, ParseAndFormat) {
  const auto f = parse_named_features("pos=adjective; degree=comparative; gender=neutral; number=singular; case=genitive",
                                      greek());
  EXPECT_EQ(comparative_features(), f);
  EXPECT_EQ("pos=adjective;degree=comparative;gender=neutral;number=singular;case=genitive",
            format_named_features(f, greek()));
  EXPECT_EQ(f, parse_named_features(format_named_features(f, greek()), greek()));

  const auto adverb = parse_named_features("type=local,pos=adverb,lemma_pos=adjective", greek());
  EXPECT_EQ(U'R', adverb.pos_word);
  EXPECT_EQ(U'E', adverb.pos_lemma);
  EXPECT_EQ(U'Α', adverb.get(Dimension::Type));
  EXPECT_EQ("pos=adverb;lemma_pos=adjective;type=local", format_named_features(adverb, greek()));
}

TEST(NamedFeaturesTest, ParseErrors) {
  EXPECT_EQ(ErrorKind::MalformedFeatures, kind_of([] { parse_named_features("case=genitive", greek()); }));
  EXPECT_EQ(ErrorKind::UnknownCode, kind_of([] { parse_named_features("pos=noun;case=ablative", greek()); }));
  EXPECT_EQ(ErrorKind::UnknownCode, kind_of([] { parse_named_features("pos=gerund", greek()); }));
  EXPECT_EQ(ErrorKind::AmbiguousType, kind_of([] { parse_named_features("pos=verb;type=proper", greek()); }));
  EXPECT_EQ(ErrorKind::MalformedFeatures, kind_of([] { parse_named_features("pos=noun;case", greek()); }));
  EXPECT_EQ(ErrorKind::MalformedFeatures, kind_of([] { parse_named_features("pos=noun;colour=red", greek()); }));
  EXPECT_EQ(ErrorKind::MalformedFeatures,
            kind_of([] { parse_named_features("pos=noun;case=genitive;case=nominative", greek()); }));
}

TEST(NamedFeaturesTest, Queries) {
  const auto q = parse_named_query("case=genitive,number=none", greek());
  EXPECT_FALSE(q.pos_word);
  EXPECT_EQ(Slot::value(U'b'), q.slots[index_of(Dimension::Case)]);
  EXPECT_EQ(Slot::absent(), q.slots[index_of(Dimension::Number)]);
  EXPECT_EQ(Slot::any(), q.slots[index_of(Dimension::Gender)]);
  EXPECT_TRUE(parse_named_query("", greek()) == FeatureQuery::any());

  const auto f = comparative_features();
  EXPECT_TRUE(FeatureQuery::exact(f).matches(f));
  EXPECT_TRUE(FeatureQuery::partial(f).matches(f));
  FeatureSet more = f;
  more.set(Dimension::Type, U'Α');
  EXPECT_FALSE(FeatureQuery::exact(f).matches(more));
  EXPECT_TRUE(FeatureQuery::partial(f).matches(more));
}
