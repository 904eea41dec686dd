#pragma once

#include <array>

#include "stegomark/scheme.hpp"

namespace stegomark {

// Invisible carrier characters shared by the zero-width schemes.
namespace zw {
inline constexpr char32_t kZero = U'\u200B';         // ZWSP encodes bit 0
inline constexpr char32_t kOne = U'\u200C';          // ZWNJ encodes bit 1
inline constexpr char32_t kStartMarker = U'\u200D';   // ZWJ
inline constexpr char32_t kEndMarker = U'\u2060';      // word joiner
// 2 bits per character, index = value.
inline constexpr std::array<char32_t, 4> kQuaternary = {U'\u200B', U'\u200C',
                                                        U'\u200D', U'\u2060'};
// Characters the detector treats as zero-width; BOM included.
inline constexpr std::array<char32_t, 5> kInvisible = {
    U'\u200B', U'\u200C', U'\u200D', U'\u2060', U'\uFEFF'};

bool is_invisible(char32_t c);
}  // namespace zw

// AITSteg header: 32-bit Unix timestamp + 16-bit payload byte count,
// 48 bits in front of the payload bits.
inline constexpr unsigned kAitstegHeaderBits = 48;

StegoText embed_aitsteg(const CoverText &cover, const Payload &payload,
                        std::uint32_t timestamp);
Payload extract_aitsteg(const std::u32string &text);

StegoText embed_covertsys(const CoverText &cover, const Payload &payload);
Payload extract_covertsys(const std::u32string &text);

StegoText embed_stegcloak(const CoverText &cover, const Payload &payload);
Payload extract_stegcloak(const std::u32string &text);

// Removes every zero-width character; used by the visual-invariance checks.
std::u32string strip_zero_width(const std::u32string &text);

}  // namespace stegomark
