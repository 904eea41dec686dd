#include "stegomark/bitstring.hpp"

#include "stegomark/errors.hpp"

namespace stegomark {

BitString BitString::from_bytes(const std::string &bytes) {
  BitString out;
  out.bits_.reserve(bytes.size() * 8);
  for (char c : bytes) {
    const auto b = static_cast<std::uint8_t>(c);
    for (int i = 7; i >= 0; --i) out.bits_.push_back((b >> i) & 1);
  }
  return out;
}

std::string BitString::to_bytes() const {
  if (bits_.size() % 8 != 0)
    throw Error(ErrorCode::NonOctetLength,
                "bit length " + std::to_string(bits_.size()) +
                    " is not a multiple of 8");
  std::string out;
  out.reserve(bits_.size() / 8);
  for (std::size_t i = 0; i < bits_.size(); i += 8) {
    std::uint8_t b = 0;
    for (std::size_t k = 0; k < 8; ++k) b = static_cast<std::uint8_t>((b << 1) | bits_[i + k]);
    out.push_back(static_cast<char>(b));
  }
  return out;
}

void BitString::append(const BitString &other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitString::append_uint(std::uint64_t value, unsigned count) {
  for (unsigned i = count; i-- > 0;) bits_.push_back((value >> i) & 1);
}

std::uint64_t BitString::read_uint(std::size_t pos, unsigned count) const {
  if (pos + count > bits_.size())
    throw Error(ErrorCode::TruncatedFrame, "bit read past end of stream");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < count; ++i) v = (v << 1) | bits_[pos + i];
  return v;
}

BitString BitString::slice(std::size_t pos, std::size_t count) const {
  if (pos + count > bits_.size())
    throw Error(ErrorCode::TruncatedFrame, "bit slice past end of stream");
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + count));
  return out;
}

BitString bytes_to_bits(const Payload &payload) {
  return BitString::from_bytes(payload.bytes);
}

Payload bits_to_bytes(const BitString &bits) { return Payload{bits.to_bytes()}; }

BitString frame_payload(const Payload &payload) {
  if (payload.bytes.size() > kMaxPayloadBytes)
    throw Error(ErrorCode::PayloadTooLarge,
                "payload of " + std::to_string(payload.bytes.size()) +
                    " bytes exceeds the 65535-byte frame limit");
  BitString out;
  out.append_uint(payload.bytes.size(), kFrameHeaderBits);
  out.append(bytes_to_bits(payload));
  return out;
}

Payload unframe_payload(const BitString &bits) {
  if (bits.size() < kFrameHeaderBits)
    throw Error(ErrorCode::TruncatedFrame, "frame shorter than its header");
  const auto byte_count = static_cast<std::size_t>(bits.read_uint(0, kFrameHeaderBits));
  if (bits.size() < kFrameHeaderBits + byte_count * 8)
    throw Error(ErrorCode::TruncatedFrame,
                "frame declares " + std::to_string(byte_count) +
                    " bytes but the stream is shorter");
  return bits_to_bytes(bits.slice(kFrameHeaderBits, byte_count * 8));
}

}  // namespace stegomark
