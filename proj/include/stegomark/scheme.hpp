#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stegomark/bitstring.hpp"

namespace stegomark {

enum class SchemeId {
  aitsteg,
  covertsys,
  innamark,
  lookalikes,
  rizzo,
  shazzad,
  shiu,
  snow,
  stegcloak,
  unispach,
};

inline constexpr std::array<SchemeId, 10> kAllSchemes = {
    SchemeId::aitsteg,   SchemeId::covertsys, SchemeId::innamark,
    SchemeId::lookalikes, SchemeId::rizzo,    SchemeId::shazzad,
    SchemeId::shiu,      SchemeId::snow,      SchemeId::stegcloak,
    SchemeId::unispach,
};

std::string_view scheme_name(SchemeId id);
SchemeId scheme_from_name(std::string_view name);  // throws UnknownScheme

// Cover text with derived counts. char_count excludes line-break scalars,
// matching how character totals are reported for multi-paragraph text;
// spaces count, CR/LF do not.
class CoverText {
public:
  explicit CoverText(std::u32string text);
  static CoverText from_utf8(std::string_view utf8);

  const std::u32string &text() const { return text_; }
  std::size_t scalar_count() const { return text_.size(); }
  std::size_t char_count() const { return char_count_; }
  std::size_t space_count() const { return space_count_; }
  std::size_t line_count() const { return line_count_; }
  std::size_t paragraph_count() const { return paragraph_count_; }

private:
  std::u32string text_;
  std::size_t char_count_ = 0;
  std::size_t space_count_ = 0;
  std::size_t line_count_ = 0;
  std::size_t paragraph_count_ = 0;
};

struct StegoText {
  std::u32string text;
  SchemeId scheme;
  std::size_t embedded_bits = 0;
  // Disjoint (start, end) scalar-index ranges that were modified or inserted.
  std::vector<std::pair<std::size_t, std::size_t>> insertion_spans;

  std::string to_utf8() const;
};

enum class LimitingResource { unbounded_append, eligible_chars, whitespaces, lines };

struct CapacityEstimate {
  SchemeId scheme;
  std::uint64_t max_payload_bits = 0;
  LimitingResource limiting_resource = LimitingResource::unbounded_append;
  // UniSpaCh paragraph filler, reported separately from the space carrier.
  std::uint64_t filler_bits = 0;
  bool unlimited = false;

  std::uint64_t total_bits() const { return max_payload_bits + filler_bits; }
  bool fits(std::uint64_t bits) const { return unlimited || bits <= total_bits(); }
};

struct EmbedOptions {
  // AITSteg header timestamp; fixed value makes output byte-stable.
  std::optional<std::uint32_t> timestamp;
  // Shiu line geometry.
  std::size_t wrap_width = 40;
};

StegoText embed(SchemeId scheme, const CoverText &cover, const Payload &payload,
                const EmbedOptions &options = {});
Payload extract(SchemeId scheme, const std::u32string &text,
                const EmbedOptions &options = {});
CapacityEstimate capacity(SchemeId scheme, const CoverText &cover,
                          const EmbedOptions &options = {});

}  // namespace stegomark
