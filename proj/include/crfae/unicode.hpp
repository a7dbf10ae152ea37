#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace crfae::unicode {

/// Splits UTF-8 text into one view per code point. Malformed bytes come back
/// as single-byte units so the split is always lossless.
std::vector<std::string_view> split_code_points(std::string_view text);

/// Decodes one code point; returns U+FFFD for malformed input.
char32_t decode(std::string_view unit);

bool is_punctuation(char32_t cp);
bool is_uppercase(char32_t cp);

}  // namespace crfae::unicode
