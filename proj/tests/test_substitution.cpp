#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stegomark/errors.hpp"
#include "stegomark/substitution.hpp"
#include "stegomark/unicode.hpp"

#include "helpers.hpp"

using namespace stegomark;

namespace {

const CoverText &cover() {
  static CoverText c = CoverText::from_utf8(testutil::cover_utf8());
  return c;
}

}  // namespace

TEST_CASE("table cardinalities are pinned") {
  CHECK(lookalikes_table().size() == 23);
  CHECK(rizzo_table().size() == 24);
  CHECK(space_alphabet64().size() == 64);
  CHECK(space_alphabet16().size() == 16);
}

TEST_CASE("rizzo table covers symbols, letters and whitespaces") {
  std::size_t symbols = 0;
  std::size_t letters = 0;
  std::size_t whitespaces = 0;
  for (const auto &[original, variant] : rizzo_table().entries()) {
    if (original == U'-' || original == U';') ++symbols;
    else if ((original >= U'a' && original <= U'z') ||
             (original >= U'A' && original <= U'Z')) ++letters;
    else ++whitespaces;
  }
  CHECK(symbols == 2);
  CHECK(letters == 14);
  CHECK(whitespaces == 8);
}

TEST_CASE("space alphabets start with the plain space") {
  CHECK(space_alphabet64().entry(0) == U" ");
  CHECK(space_alphabet16().entry(0) == U" ");
  // 16-entry alphabet is a prefix of the 64-entry one.
  for (std::size_t i = 0; i < 16; ++i)
    CHECK(space_alphabet16().entry(i) == space_alphabet64().entry(i));
  // Values 16..63 are base + variation selector pairs.
  for (std::size_t i = 16; i < 64; ++i) {
    const std::u32string &e = space_alphabet64().entry(i);
    REQUIRE(e.size() == 2);
    CHECK((e[1] >= 0xFE00 && e[1] <= 0xFE0F));
  }
}

TEST_CASE("lookalikes roundtrip keeps the scalar count") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_lookalikes(cover(), p);
  CHECK(stego.text.size() == cover().text().size());
  CHECK(extract_lookalikes(stego.text) == p);
}

TEST_CASE("rizzo roundtrip keeps the scalar count") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_rizzo(cover(), p);
  CHECK(stego.text.size() == cover().text().size());
  CHECK(extract_rizzo(stego.text) == p);
}

TEST_CASE("shazzad roundtrip grows only by variation selectors") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_shazzad(cover(), p);
  std::size_t selectors = 0;
  for (char32_t c : stego.text)
    if (c >= 0xFE00 && c <= 0xFE0F) ++selectors;
  CHECK(stego.text.size() == cover().text().size() + selectors);
  CHECK(extract_shazzad(stego.text) == p);
}

TEST_CASE("substitution extractors reject clean text") {
  for (auto fn : {extract_lookalikes, extract_rizzo, extract_shazzad}) {
    try {
      fn(cover().text());
      FAIL("expected NoWatermarkFound");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::NoWatermarkFound);
    }
  }
}

TEST_CASE("shazzad rejects foreign exotic spaces") {
  std::u32string text = embed_shazzad(cover(), Payload{"hi"}).text;
  text[text.find(U' ')] = 0x3000;  // ideographic space is outside the alphabet
  try {
    extract_shazzad(text);
    FAIL("expected CorruptFrame");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::CorruptFrame);
  }
}

TEST_CASE("capacity errors are typed") {
  const CoverText tiny(U"oo ee oo");
  try {
    embed_lookalikes(tiny, Payload{"Secret Message"});
    FAIL("expected InsufficientCapacity");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::InsufficientCapacity);
  }
}

TEST_CASE("skeleton maps every variant back to its original") {
  const Payload p{"Secret Message"};
  CHECK(confusable_skeleton(embed_lookalikes(cover(), p).text) == cover().text());
  CHECK(confusable_skeleton(embed_rizzo(cover(), p).text) == cover().text());
  CHECK(confusable_skeleton(embed_shazzad(cover(), p).text) == cover().text());
  CHECK(confusable_skeleton(cover().text()) == cover().text());
}

TEST_CASE("longest match prefers the augmented entry") {
  const std::u32string text{U' ', char32_t(0xFE05)};
  const auto [value, consumed] = space_alphabet64().match(text, 0);
  CHECK(value == 16 + 5);
  CHECK(consumed == 2);
  const std::u32string bare{U' ', U'x'};
  const auto [v2, c2] = space_alphabet64().match(bare, 0);
  CHECK(v2 == 0);
  CHECK(c2 == 1);
}
