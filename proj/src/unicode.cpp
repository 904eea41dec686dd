#include "stegomark/unicode.hpp"

#include "stegomark/errors.hpp"

namespace stegomark {

namespace {

[[noreturn]] void bad(std::size_t pos) {
  throw Error(ErrorCode::InvalidInput,
              "malformed UTF-8 at byte offset " + std::to_string(pos));
}

}  // namespace

std::u32string utf8_decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const auto b0 = static_cast<std::uint8_t>(utf8[i]);
    std::uint32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      bad(i);
    }
    if (i + len > utf8.size()) bad(i);
    for (std::size_t k = 1; k < len; ++k) {
      const auto bk = static_cast<std::uint8_t>(utf8[i + k]);
      if ((bk & 0xC0) != 0x80) bad(i + k);
      cp = (cp << 6) | (bk & 0x3F);
    }
    static constexpr std::uint32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (len > 1 && cp < kMinByLen[len]) bad(i);           // overlong
    if (cp >= 0xD800 && cp <= 0xDFFF) bad(i);             // surrogate
    if (cp > 0x10FFFF) bad(i);
    out.push_back(static_cast<char32_t>(cp));
    i += len;
  }
  return out;
}

std::string utf8_encode(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size());
  for (char32_t c : scalars) {
    const auto cp = static_cast<std::uint32_t>(c);
    if ((cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
      throw Error(ErrorCode::InvalidInput, "invalid scalar value");
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

bool is_valid_utf8(std::string_view utf8) {
  try {
    utf8_decode(utf8);
    return true;
  } catch (const Error &) {
    return false;
  }
}

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonOctetLength: return "NonOctetLength";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::TruncatedFrame: return "TruncatedFrame";
    case ErrorCode::CorruptFrame: return "CorruptFrame";
    case ErrorCode::InsufficientCapacity: return "InsufficientCapacity";
    case ErrorCode::UnknownScheme: return "UnknownScheme";
    case ErrorCode::NoWatermarkFound: return "NoWatermarkFound";
    case ErrorCode::NoInsertionPoint: return "NoInsertionPoint";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::NotWatermarked: return "NotWatermarked";
    case ErrorCode::MixedExperiments: return "MixedExperiments";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::OversizePrompt: return "OversizePrompt";
    case ErrorCode::EmptySource: return "EmptySource";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace stegomark
