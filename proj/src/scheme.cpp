#include "stegomark/scheme.hpp"

#include <utility>

#include "stegomark/errors.hpp"
#include "stegomark/substitution.hpp"
#include "stegomark/unicode.hpp"
#include "stegomark/whitespace.hpp"
#include "stegomark/zerowidth.hpp"

namespace stegomark {

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::aitsteg: return "aitsteg";
    case SchemeId::covertsys: return "covertsys";
    case SchemeId::innamark: return "innamark";
    case SchemeId::lookalikes: return "lookalikes";
    case SchemeId::rizzo: return "rizzo";
    case SchemeId::shazzad: return "shazzad";
    case SchemeId::shiu: return "shiu";
    case SchemeId::snow: return "snow";
    case SchemeId::stegcloak: return "stegcloak";
    case SchemeId::unispach: return "unispach";
  }
  throw Error(ErrorCode::UnknownScheme, "invalid scheme id");
}

SchemeId scheme_from_name(std::string_view name) {
  for (SchemeId id : kAllSchemes)
    if (scheme_name(id) == name) return id;
  throw Error(ErrorCode::UnknownScheme, "unknown scheme: " + std::string(name));
}

CoverText::CoverText(std::u32string text) : text_(std::move(text)) {
  for (char32_t c : text_) {
    if (c == U'\n' || c == U'\r') continue;
    ++char_count_;
    if (c == U' ') ++space_count_;
  }
  // Lines are '\n'-separated segments; a paragraph is a maximal run of
  // nonblank lines.
  bool line_open = false;
  bool line_nonblank = false;
  bool in_paragraph = false;
  auto close_line = [&] {
    ++line_count_;
    if (line_nonblank) {
      if (!in_paragraph) {
        ++paragraph_count_;
        in_paragraph = true;
      }
    } else {
      in_paragraph = false;
    }
    line_open = false;
    line_nonblank = false;
  };
  for (char32_t c : text_) {
    if (c == U'\n') {
      close_line();
    } else {
      line_open = true;
      if (c != U'\r') line_nonblank = true;
    }
  }
  if (line_open) close_line();
}

CoverText CoverText::from_utf8(std::string_view utf8) {
  return CoverText(utf8_decode(utf8));
}

std::string StegoText::to_utf8() const { return utf8_encode(text); }

StegoText embed(SchemeId scheme, const CoverText &cover, const Payload &payload,
                const EmbedOptions &options) {
  switch (scheme) {
    case SchemeId::aitsteg:
      return embed_aitsteg(cover, payload, options.timestamp.value_or(0));
    case SchemeId::covertsys: return embed_covertsys(cover, payload);
    case SchemeId::stegcloak: return embed_stegcloak(cover, payload);
    case SchemeId::lookalikes: return embed_lookalikes(cover, payload);
    case SchemeId::rizzo: return embed_rizzo(cover, payload);
    case SchemeId::shazzad: return embed_shazzad(cover, payload);
    case SchemeId::snow: return embed_snow(cover, payload);
    case SchemeId::unispach: return embed_unispach(cover, payload);
    case SchemeId::innamark: return embed_innamark(cover, payload);
    case SchemeId::shiu: return embed_shiu(cover, payload, options.wrap_width);
  }
  throw Error(ErrorCode::UnknownScheme, "invalid scheme id");
}

Payload extract(SchemeId scheme, const std::u32string &text,
                const EmbedOptions &options) {
  switch (scheme) {
    case SchemeId::aitsteg: return extract_aitsteg(text);
    case SchemeId::covertsys: return extract_covertsys(text);
    case SchemeId::stegcloak: return extract_stegcloak(text);
    case SchemeId::lookalikes: return extract_lookalikes(text);
    case SchemeId::rizzo: return extract_rizzo(text);
    case SchemeId::shazzad: return extract_shazzad(text);
    case SchemeId::snow: return extract_snow(text);
    case SchemeId::unispach: return extract_unispach(text);
    case SchemeId::innamark: return extract_innamark(text);
    case SchemeId::shiu: return extract_shiu(text, options.wrap_width);
  }
  throw Error(ErrorCode::UnknownScheme, "invalid scheme id");
}

CapacityEstimate capacity(SchemeId scheme, const CoverText &cover,
                          const EmbedOptions &options) {
  CapacityEstimate est;
  est.scheme = scheme;
  switch (scheme) {
    case SchemeId::aitsteg:
    case SchemeId::covertsys:
    case SchemeId::snow:
    case SchemeId::stegcloak:
      est.limiting_resource = LimitingResource::unbounded_append;
      est.unlimited = true;
      est.max_payload_bits = UINT64_MAX;
      return est;
    case SchemeId::shazzad:
      est.limiting_resource = LimitingResource::whitespaces;
      est.max_payload_bits = 6 * static_cast<std::uint64_t>(cover.space_count());
      return est;
    case SchemeId::innamark:
      est.limiting_resource = LimitingResource::whitespaces;
      est.max_payload_bits = 4 * static_cast<std::uint64_t>(cover.space_count());
      return est;
    case SchemeId::unispach:
      est.limiting_resource = LimitingResource::whitespaces;
      est.max_payload_bits = 2 * static_cast<std::uint64_t>(cover.space_count());
      est.filler_bits = unispach_filler_bits(cover);
      return est;
    case SchemeId::lookalikes:
      est.limiting_resource = LimitingResource::eligible_chars;
      est.max_payload_bits = count_eligible(lookalikes_table(), cover.text());
      return est;
    case SchemeId::rizzo:
      est.limiting_resource = LimitingResource::eligible_chars;
      est.max_payload_bits = count_eligible(rizzo_table(), cover.text());
      return est;
    case SchemeId::shiu:
      est.limiting_resource = LimitingResource::lines;
      est.max_payload_bits = shiu_capacity_bits(cover, options.wrap_width);
      return est;
  }
  throw Error(ErrorCode::UnknownScheme, "invalid scheme id");
}

}  // namespace stegomark
