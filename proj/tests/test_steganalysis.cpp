#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stegomark/errors.hpp"
#include "stegomark/scheme.hpp"
#include "stegomark/steganalysis.hpp"

#include "helpers.hpp"

using namespace stegomark;

namespace {

const CoverText &cover() {
  static CoverText c = CoverText::from_utf8(testutil::cover_utf8());
  return c;
}

EmbedOptions options() {
  EmbedOptions o;
  o.timestamp = 1700000000;
  o.wrap_width = 12;
  return o;
}

}  // namespace

TEST_CASE("the cover itself is clean") {
  const DetectionReport report = scan(cover().text());
  CHECK(report.verdict == Verdict::clean);
  CHECK(report.census.zero_width_count == 0);
  CHECK(report.census.confusable_count == 0);
  CHECK(report.census.exotic_space_count == 0);
  CHECK(report.census.trailing_ws_lines == 0);
  CHECK_THROWS_AS(attribute(report), Error);
}

TEST_CASE("every scheme is detected and attributed") {
  const Payload p{"Secret Message"};
  for (SchemeId id : kAllSchemes) {
    CAPTURE(scheme_name(id));
    const StegoText stego = embed(id, cover(), p, options());
    const DetectionReport report = scan(stego.text);
    CHECK(report.verdict == Verdict::watermarked);
    REQUIRE(!report.attributions.empty());
    CHECK(report.attributions.front().first == id);
  }
}

TEST_CASE("census counts the carrier classes") {
  const Payload p{"Secret Message"};
  const CharCensus zw = census(embed(SchemeId::covertsys, cover(), p).text);
  CHECK(zw.zero_width_count == 2 + 128);
  const CharCensus conf = census(embed(SchemeId::lookalikes, cover(), p).text);
  CHECK(conf.confusable_count > 0);
  CHECK(conf.zero_width_count == 0);
  const CharCensus sp = census(embed(SchemeId::innamark, cover(), p).text);
  CHECK(sp.exotic_space_count > 0);
  const CharCensus snow = census(embed(SchemeId::snow, cover(), p).text);
  CHECK(snow.trailing_ws_lines == 1);
}

TEST_CASE("short plain texts stay clean") {
  CHECK(scan(U"Hello there, nothing to see.").verdict == Verdict::clean);
  CHECK(scan(U"line one\nline two\nline three").verdict == Verdict::clean);
}

TEST_CASE("json report has stable fields") {
  const DetectionReport report = scan(embed(SchemeId::snow, cover(),
                                            Payload{"x"}).text);
  const std::string j = report.to_json();
  CHECK(j.find("\"verdict\"") != std::string::npos);
  CHECK(j.find("\"watermarked\"") != std::string::npos);
  CHECK(j.find("\"zero_width_count\"") != std::string::npos);
  CHECK(j.find("\"attributions\"") != std::string::npos);
  CHECK(j.find("\"snow\"") != std::string::npos);
}
