#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace stegomark {

// Decodes UTF-8 into Unicode scalar values. Throws InvalidInput on malformed
// sequences, overlong encodings, or surrogate codepoints.
std::u32string utf8_decode(std::string_view utf8);

std::string utf8_encode(std::u32string_view scalars);

bool is_valid_utf8(std::string_view utf8);

}  // namespace stegomark
