#pragma once

#include <cstdint>

#include "stegomark/scheme.hpp"

namespace stegomark {

// SNOW-style trailing run: bit 0 -> space, bit 1 -> tab, appended after the
// text on its own line.
StegoText embed_snow(const CoverText &cover, const Payload &payload);
Payload extract_snow(const std::u32string &text);

// UniSpaCh: each carrier space becomes a two-character small-space pair
// (thin space / hair space) encoding 2 bits; leftover bits go into filler
// runs at paragraph ends.
inline constexpr char32_t kThinSpace = 0x2009;
inline constexpr char32_t kHairSpace = 0x200A;
inline constexpr std::size_t kUnispachFillerPairsPerParagraph = 8;

std::uint64_t unispach_filler_bits(const CoverText &cover);
StegoText embed_unispach(const CoverText &cover, const Payload &payload);
Payload extract_unispach(const std::u32string &text);

// Innamark: 4 bits per space via the 16-entry space alphabet, frame repeated
// cyclically over every space; decode takes a bitwise majority across
// complete repetitions.
StegoText embed_innamark(const CoverText &cover, const Payload &payload);
Payload extract_innamark(const std::u32string &text);

// Shiu: rewraps the text at wrap_width; a line with four admissible break
// candidates carries 3 bits (2 select the break, 1 toggles a trailing
// space), narrower lines carry only the trailing-space bit.
std::uint64_t shiu_capacity_bits(const CoverText &cover, std::size_t wrap_width);
StegoText embed_shiu(const CoverText &cover, const Payload &payload,
                     std::size_t wrap_width);
Payload extract_shiu(const std::u32string &text, std::size_t wrap_width);

}  // namespace stegomark
