#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stegomark/errors.hpp"
#include "stegomark/unicode.hpp"
#include "stegomark/zerowidth.hpp"

#include "helpers.hpp"

using namespace stegomark;

namespace {

const CoverText &cover() {
  static CoverText c = CoverText::from_utf8(testutil::cover_utf8());
  return c;
}

}  // namespace

TEST_CASE("aitsteg prepends a framed zero-width block") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_aitsteg(cover(), p, 1700000000);
  // marker + 32 timestamp bits + 128 frame bits + marker; the 48 header
  // bits are the timestamp plus the 16-bit length inside the frame.
  CHECK(stego.text.size() == cover().text().size() + 2 + 32 + 128);
  CHECK(stego.text.front() == zw::kStartMarker);
  CHECK(stego.text[1 + 32 + 128] == zw::kEndMarker);
  CHECK(extract_aitsteg(stego.text) == p);
}

TEST_CASE("aitsteg output is stable for a fixed timestamp") {
  const Payload p{"hi"};
  const StegoText a = embed_aitsteg(cover(), p, 42);
  const StegoText b = embed_aitsteg(cover(), p, 42);
  CHECK(a.text == b.text);
  const StegoText c = embed_aitsteg(cover(), p, 43);
  CHECK(a.text != c.text);
  CHECK(extract_aitsteg(c.text) == p);  // timestamp not validated
}

TEST_CASE("covertsys appends a framed zero-width block") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_covertsys(cover(), p);
  CHECK(stego.text.size() == cover().text().size() + 2 + 128);
  CHECK(stego.text.back() == zw::kEndMarker);
  CHECK(stego.text[cover().text().size()] == zw::kStartMarker);
  CHECK(extract_covertsys(stego.text) == p);
}

TEST_CASE("stegcloak inserts a quaternary run after the first space") {
  const Payload p{"Secret Message"};
  const StegoText stego = embed_stegcloak(cover(), p);
  CHECK(stego.text.size() == cover().text().size() + 128 / 2);
  const std::size_t gap = cover().text().find(U' ');
  CHECK(stego.text[gap] == U' ');
  for (std::size_t i = 0; i < 64; ++i) CHECK(zw::is_invisible(stego.text[gap + 1 + i]));
  CHECK(extract_stegcloak(stego.text) == p);
}

TEST_CASE("stegcloak needs an insertion point") {
  const CoverText no_space(U"nospace");
  try {
    embed_stegcloak(no_space, Payload{"x"});
    FAIL("expected NoInsertionPoint");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NoInsertionPoint);
  }
}

TEST_CASE("extractors reject clean text") {
  for (auto fn : {extract_aitsteg, extract_covertsys, extract_stegcloak}) {
    try {
      fn(cover().text());
      FAIL("expected NoWatermarkFound");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::NoWatermarkFound);
    }
  }
}

TEST_CASE("damaged runs raise CorruptFrame") {
  const StegoText stego = embed_stegcloak(cover(), Payload{"Secret Message"});
  std::u32string cut = stego.text;
  const std::size_t gap = cover().text().find(U' ');
  cut.erase(gap + 1, 40);  // drop most of the run
  try {
    extract_stegcloak(cut);
    FAIL("expected CorruptFrame");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::CorruptFrame);
  }
}

TEST_CASE("strip_zero_width restores the cover") {
  for (const Payload p : {Payload{"x"}, Payload{"Secret Message"}}) {
    CHECK(strip_zero_width(embed_aitsteg(cover(), p, 7).text) == cover().text());
    CHECK(strip_zero_width(embed_covertsys(cover(), p).text) == cover().text());
    CHECK(strip_zero_width(embed_stegcloak(cover(), p).text) == cover().text());
  }
}

TEST_CASE("empty payload roundtrips on zero-width schemes") {
  // The markers make even a zero-byte frame recoverable.
  const Payload empty{""};
  CHECK(extract_aitsteg(embed_aitsteg(cover(), empty, 0).text) == empty);
  CHECK(extract_covertsys(embed_covertsys(cover(), empty).text) == empty);
  CHECK(extract_stegcloak(embed_stegcloak(cover(), empty).text) == empty);
}
