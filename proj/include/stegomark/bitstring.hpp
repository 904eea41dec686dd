#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stegomark {

// Ordered bit sequence. Byte conversions are MSB-first within each byte.
class BitString {
public:
  BitString() = default;

  static BitString from_bytes(const std::string &bytes);

  // Requires size() % 8 == 0; throws NonOctetLength otherwise.
  std::string to_bytes() const;

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const BitString &other);

  // Appends `count` bits of `value`, most significant first.
  void append_uint(std::uint64_t value, unsigned count);

  // Reads `count` bits starting at `pos` as an MSB-first integer.
  std::uint64_t read_uint(std::size_t pos, unsigned count) const;

  BitString slice(std::size_t pos, std::size_t count) const;

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool operator==(const BitString &other) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

// Watermark payload: UTF-8 bytes of the watermark text.
struct Payload {
  std::string bytes;

  const std::string &as_text() const { return bytes; }
  bool operator==(const Payload &other) const = default;
};

BitString bytes_to_bits(const Payload &payload);
Payload bits_to_bytes(const BitString &bits);

inline constexpr std::size_t kMaxPayloadBytes = 65535;
inline constexpr std::size_t kFrameHeaderBits = 16;

// Prefixes the payload bits with a 16-bit big-endian byte-length header.
BitString frame_payload(const Payload &payload);

// Inverse of frame_payload; trailing slack bits beyond the declared length
// are ignored. Throws TruncatedFrame when bits run out.
Payload unframe_payload(const BitString &bits);

// Framed size in bits for a payload of `payload_bytes` bytes.
inline std::size_t framed_bits(std::size_t payload_bytes) {
  return kFrameHeaderBits + 8 * payload_bytes;
}

}  // namespace stegomark
