#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stegomark/bitstring.hpp"
#include "stegomark/errors.hpp"
#include "stegomark/unicode.hpp"

#include <random>

using namespace stegomark;

namespace {

std::string bits_as_string(const BitString &b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) s.push_back(b[i] ? '1' : '0');
  return s;
}

}  // namespace

TEST_CASE("byte A encodes MSB-first") {
  const BitString bits = BitString::from_bytes("A");
  CHECK(bits_as_string(bits) == "01000001");
}

TEST_CASE("payload Secret Message is 112 bits") {
  const BitString bits = bytes_to_bits(Payload{"Secret Message"});
  CHECK(bits.size() == 112);
  // 'S' = 0x53
  CHECK(bits_as_string(bits).substr(0, 8) == "01010011");
}

TEST_CASE("frame sizes are header plus payload") {
  CHECK(frame_payload(Payload{"A"}).size() == 24);
  CHECK(frame_payload(Payload{""}).size() == 16);
  CHECK(frame_payload(Payload{"Secret Message"}).size() == 128);
  CHECK(framed_bits(14) == 128);
}

TEST_CASE("frame header is big-endian byte length") {
  const BitString frame = frame_payload(Payload{"A"});
  CHECK(bits_as_string(frame) == "0000000000000001" "01000001");
}

TEST_CASE("unframe ignores trailing slack bits") {
  BitString frame = frame_payload(Payload{"hi"});
  for (int i = 0; i < 13; ++i) frame.push_back(i % 2 == 0);
  CHECK(unframe_payload(frame) == Payload{"hi"});
}

TEST_CASE("unframe rejects truncated frames") {
  const BitString frame = frame_payload(Payload{"hi"});
  const BitString cut = frame.slice(0, frame.size() - 1);
  CHECK_THROWS_AS(unframe_payload(cut), Error);
  try {
    unframe_payload(cut);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::TruncatedFrame);
  }
  const BitString tiny = frame.slice(0, 7);
  try {
    unframe_payload(tiny);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::TruncatedFrame);
  }
}

TEST_CASE("to_bytes requires octet alignment") {
  BitString b;
  for (int i = 0; i < 9; ++i) b.push_back(true);
  try {
    b.to_bytes();
    FAIL("expected NonOctetLength");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NonOctetLength);
  }
}

TEST_CASE("append_uint and read_uint are inverse") {
  BitString b;
  b.append_uint(0xDEADBEEF, 32);
  b.append_uint(5, 3);
  CHECK(b.read_uint(0, 32) == 0xDEADBEEF);
  CHECK(b.read_uint(32, 3) == 5);
}

TEST_CASE("frame roundtrip over random payloads") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> len(0, 200);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int trial = 0; trial < 200; ++trial) {
    std::string bytes;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) bytes.push_back(static_cast<char>(byte(rng)));
    const Payload p{bytes};
    CHECK(unframe_payload(frame_payload(p)) == p);
  }
}

TEST_CASE("utf8 decode rejects malformed input") {
  CHECK(utf8_encode(utf8_decode("h\xC3\xA9llo")) == "h\xC3\xA9llo");
  CHECK_THROWS_AS(utf8_decode("\xC0\xAF"), Error);        // overlong
  CHECK_THROWS_AS(utf8_decode("\xED\xA0\x80"), Error);    // surrogate
  CHECK_THROWS_AS(utf8_decode("\xF5\x80\x80\x80"), Error);// beyond U+10FFFF
  CHECK_THROWS_AS(utf8_decode("\x80"), Error);            // stray continuation
}
