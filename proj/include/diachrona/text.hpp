#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diachrona::text {

/// Decodes the code point at `pos` and advances it. Invalid sequences yield
/// U+FFFD and consume one byte.
char32_t next_code_point(std::string_view s, std::size_t& pos) noexcept;

void append_utf8(std::string& out, char32_t cp);

/// Letters of the scripts a historical corpus plausibly contains (Latin,
/// Greek, Cyrillic, Armenian, Hebrew, Arabic, Indic, CJK, kana, Hangul).
bool is_alphabetic(char32_t cp) noexcept;

/// Combining diacritics; they extend a word but never start one.
bool is_combining_mark(char32_t cp) noexcept;

/// Simple one-to-one lowercase mapping for Latin, Greek and Cyrillic.
char32_t fold_code_point(char32_t cp) noexcept;
std::string fold_case(std::string_view s);

/// Splits `s` on `sep`, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Integer parse of the whole string; empty on any junk.
std::optional<long long> parse_int(std::string_view s) noexcept;

}  // namespace diachrona::text
