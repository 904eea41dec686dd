#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stegomark/errors.hpp"
#include "stegomark/substitution.hpp"
#include "stegomark/whitespace.hpp"

#include "helpers.hpp"

using namespace stegomark;

namespace {

const CoverText &cover() {
  static CoverText c = CoverText::from_utf8(testutil::cover_utf8());
  return c;
}

}  // namespace

TEST_CASE("snow appends one whitespace-only line") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_snow(cover(), p);
  // newline + 128 carrier characters
  CHECK(stego.text.size() == cover().text().size() + 1 + 128);
  for (std::size_t i = cover().text().size() + 1; i < stego.text.size(); ++i)
    CHECK((stego.text[i] == U' ' || stego.text[i] == U'\t'));
  CHECK(extract_snow(stego.text) == p);
}

TEST_CASE("snow rejects clean text and short runs") {
  try {
    extract_snow(cover().text());
    FAIL("expected NoWatermarkFound");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NoWatermarkFound);
  }
  try {
    extract_snow(U"text\n   \t   ");  // run shorter than a header
    FAIL("expected NoWatermarkFound");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NoWatermarkFound);
  }
}

TEST_CASE("unispach replaces spaces with small-space pairs") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_unispach(cover(), p);
  // 128 bits / 2 per space = 64 replaced spaces, each growing by one scalar.
  CHECK(stego.text.size() == cover().text().size() + 64);
  CHECK(extract_unispach(stego.text) == p);
}

TEST_CASE("unispach filler carries overflow bits") {
  const CoverText small = CoverText::from_utf8("one two three\n\nfour five six");
  CHECK(small.space_count() == 4);
  CHECK(small.paragraph_count() == 2);
  CHECK(unispach_filler_bits(small) ==
        2 * 2 * kUnispachFillerPairsPerParagraph);
  // 4 spaces * 2 + 32 filler = 40 bits capacity; "h" frames to 24 bits.
  const Payload p{"h"};
  const StegoText stego = embed_unispach(small, p);
  CHECK(extract_unispach(stego.text) == p);
}

TEST_CASE("unispach rejects odd small-space runs") {
  std::u32string text = embed_unispach(cover(), Payload{"hi"}).text;
  const std::size_t pos = text.find(kThinSpace);
  REQUIRE(pos != std::u32string::npos);
  text.erase(pos, 1);
  try {
    extract_unispach(text);
    FAIL("expected CorruptFrame");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::CorruptFrame);
  }
}

TEST_CASE("innamark keeps the scalar count and repeats the frame") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_innamark(cover(), p);
  CHECK(stego.text.size() == cover().text().size());
  CHECK(extract_innamark(stego.text) == p);
  // 198 spaces * 4 bits = 792 bits; the 128-bit frame repeats 6 full times.
  std::size_t alphabet_positions = 0;
  for (char32_t c : stego.text)
    if (space_alphabet16().is_base(c)) ++alphabet_positions;
  CHECK(alphabet_positions == cover().space_count());
}

TEST_CASE("innamark majority vote survives a flipped carrier") {
  const Payload p{"Secret Message"};
  std::u32string text = embed_innamark(cover(), p).text;
  // Damage one carrier in the middle: other repetitions outvote it.
  std::size_t seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (space_alphabet16().is_base(text[i])) {
      ++seen;
      if (seen == 40) {
        text[i] = space_alphabet16().entry(15)[0];
        break;
      }
    }
  }
  CHECK(extract_innamark(text) == p);
}

TEST_CASE("shiu capacity and roundtrip at width 12") {
  CHECK(shiu_capacity_bits(cover(), 12) >= 128);
  const Payload p{"Secret Message"};
  const StegoText stego = embed_shiu(cover(), p, 12);
  CHECK(extract_shiu(stego.text, 12) == p);
  // Every produced line fits the width (plus an optional trailing space).
  std::size_t line_len = 0;
  for (char32_t c : stego.text) {
    if (c == U'\n') {
      CHECK(line_len <= 13);
      line_len = 0;
    } else {
      ++line_len;
    }
  }
}

TEST_CASE("shiu default width cannot hold the standard payload here") {
  CHECK(shiu_capacity_bits(cover(), 40) < 128);
  try {
    embed_shiu(cover(), Payload{"Secret Message"}, 40);
    FAIL("expected InsufficientCapacity");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::InsufficientCapacity);
  }
}

TEST_CASE("shiu wrong width is a config mismatch") {
  const StegoText stego = embed_shiu(cover(), Payload{"Secret Message"}, 12);
  try {
    extract_shiu(stego.text, 8);  // narrower than some produced lines
    FAIL("expected ConfigMismatch");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ConfigMismatch);
  }
}

TEST_CASE("whitespace extractors reject clean text") {
  try {
    extract_unispach(cover().text());
    FAIL("expected NoWatermarkFound");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NoWatermarkFound);
  }
  try {
    extract_innamark(cover().text());
    FAIL("expected NoWatermarkFound");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NoWatermarkFound);
  }
  try {
    extract_shiu(cover().text(), 12);
    FAIL("expected NoWatermarkFound");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NoWatermarkFound);
  }
}
