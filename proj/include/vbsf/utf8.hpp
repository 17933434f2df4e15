#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vbsf::utf8 {

inline constexpr char32_t kReplacement = U'�';

/// Replace every invalid or overlong sequence with U+FFFD.
std::string sanitize(std::string_view bytes);

/// Decode valid UTF-8 (invalid bytes decode to U+FFFD).
std::u32string decode(std::string_view s);

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);
std::string encode(std::u32string_view s);

/// Decodes one codepoint at `pos` and advances it.
char32_t next(std::string_view s, std::size_t& pos);

}  // namespace vbsf::utf8
