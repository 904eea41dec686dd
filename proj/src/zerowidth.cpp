#include "stegomark/zerowidth.hpp"

#include <algorithm>

#include "stegomark/errors.hpp"

namespace stegomark {

namespace zw {

bool is_invisible(char32_t c) {
  return std::find(kInvisible.begin(), kInvisible.end(), c) != kInvisible.end();
}

}  // namespace zw

namespace {

void append_binary_run(std::u32string &out, const BitString &bits) {
  for (std::size_t i = 0; i < bits.size(); ++i)
    out.push_back(bits[i] ? zw::kOne : zw::kZero);
}

// Decodes a ZWSP/ZWNJ run starting at `pos`, stopping at the first other
// character.
BitString read_binary_run(const std::u32string &text, std::size_t pos,
                          std::size_t *end = nullptr) {
  BitString bits;
  while (pos < text.size() && (text[pos] == zw::kZero || text[pos] == zw::kOne)) {
    bits.push_back(text[pos] == zw::kOne);
    ++pos;
  }
  if (end) *end = pos;
  return bits;
}

bool is_quaternary(char32_t c) {
  return std::find(zw::kQuaternary.begin(), zw::kQuaternary.end(), c) !=
         zw::kQuaternary.end();
}

}  // namespace

std::u32string strip_zero_width(const std::u32string &text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text)
    if (!zw::is_invisible(c)) out.push_back(c);
  return out;
}

StegoText embed_aitsteg(const CoverText &cover, const Payload &payload,
                        std::uint32_t timestamp) {
  if (payload.bytes.size() > kMaxPayloadBytes)
    throw Error(ErrorCode::PayloadTooLarge, "payload exceeds 65535 bytes");
  BitString bits;
  bits.append_uint(timestamp, 32);
  bits.append_uint(payload.bytes.size(), 16);
  bits.append(bytes_to_bits(payload));

  std::u32string text;
  text.push_back(zw::kStartMarker);
  append_binary_run(text, bits);
  text.push_back(zw::kEndMarker);
  const std::size_t inserted = text.size();
  text.append(cover.text());

  StegoText stego;
  stego.text = std::move(text);
  stego.scheme = SchemeId::aitsteg;
  stego.embedded_bits = bits.size();
  stego.insertion_spans = {{0, inserted}};
  return stego;
}

Payload extract_aitsteg(const std::u32string &text) {
  if (text.empty() || text[0] != zw::kStartMarker)
    throw Error(ErrorCode::NoWatermarkFound, "no leading AITSteg marker");
  std::size_t end = 0;
  const BitString bits = read_binary_run(text, 1, &end);
  if (end >= text.size() || text[end] != zw::kEndMarker)
    throw Error(ErrorCode::CorruptFrame, "unterminated AITSteg bit run");
  if (bits.size() < kAitstegHeaderBits)
    throw Error(ErrorCode::CorruptFrame, "AITSteg run shorter than its header");
  // Timestamp (bits 0..31) is carried but not validated.
  const auto byte_count = static_cast<std::size_t>(bits.read_uint(32, 16));
  if (bits.size() != kAitstegHeaderBits + byte_count * 8)
    throw Error(ErrorCode::CorruptFrame,
                "AITSteg payload length does not match its header");
  return bits_to_bytes(bits.slice(kAitstegHeaderBits, byte_count * 8));
}

StegoText embed_covertsys(const CoverText &cover, const Payload &payload) {
  const BitString frame = frame_payload(payload);

  std::u32string text = cover.text();
  const std::size_t start = text.size();
  text.push_back(zw::kStartMarker);
  append_binary_run(text, frame);
  text.push_back(zw::kEndMarker);

  StegoText stego;
  stego.text = std::move(text);
  stego.scheme = SchemeId::covertsys;
  stego.embedded_bits = frame.size();
  stego.insertion_spans = {{start, stego.text.size()}};
  return stego;
}

Payload extract_covertsys(const std::u32string &text) {
  if (text.empty() || text.back() != zw::kEndMarker)
    throw Error(ErrorCode::NoWatermarkFound, "no trailing CovertSYS marker");
  std::size_t start = text.size() - 1;
  while (start > 0 &&
         (text[start - 1] == zw::kZero || text[start - 1] == zw::kOne))
    --start;
  if (start == 0 || text[start - 1] != zw::kStartMarker)
    throw Error(ErrorCode::CorruptFrame, "CovertSYS run has no start marker");
  BitString bits;
  for (std::size_t i = start; i + 1 < text.size(); ++i)
    bits.push_back(text[i] == zw::kOne);
  const auto byte_count = static_cast<std::size_t>(
      bits.size() >= kFrameHeaderBits ? bits.read_uint(0, kFrameHeaderBits) : 0);
  if (bits.size() < kFrameHeaderBits ||
      bits.size() != kFrameHeaderBits + byte_count * 8)
    throw Error(ErrorCode::CorruptFrame,
                "CovertSYS frame length does not match its header");
  return unframe_payload(bits);
}

StegoText embed_stegcloak(const CoverText &cover, const Payload &payload) {
  const std::size_t space = cover.text().find(U' ');
  if (space == std::u32string::npos)
    throw Error(ErrorCode::NoInsertionPoint, "cover has no space character");
  const BitString frame = frame_payload(payload);

  std::u32string run;
  run.reserve(frame.size() / 2);
  for (std::size_t i = 0; i < frame.size(); i += 2) {
    run.push_back(zw::kQuaternary[frame.read_uint(i, 2)]);
  }

  std::u32string text = cover.text();
  text.insert(space + 1, run);

  StegoText stego;
  stego.text = std::move(text);
  stego.scheme = SchemeId::stegcloak;
  stego.embedded_bits = frame.size();
  stego.insertion_spans = {{space + 1, space + 1 + run.size()}};
  return stego;
}

Payload extract_stegcloak(const std::u32string &text) {
  std::size_t start = 0;
  while (start < text.size() && !is_quaternary(text[start])) ++start;
  if (start == text.size())
    throw Error(ErrorCode::NoWatermarkFound, "no zero-width run present");
  BitString bits;
  std::size_t i = start;
  while (i < text.size() && is_quaternary(text[i])) {
    const auto it =
        std::find(zw::kQuaternary.begin(), zw::kQuaternary.end(), text[i]);
    const auto value =
        static_cast<std::uint64_t>(it - zw::kQuaternary.begin());
    bits.append_uint(value, 2);
    ++i;
  }
  try {
    return unframe_payload(bits);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::TruncatedFrame)
      throw Error(ErrorCode::CorruptFrame, e.what());
    throw;
  }
}

}  // namespace stegomark
