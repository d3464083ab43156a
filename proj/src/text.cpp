#include "diachrona/text.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <utility>

namespace diachrona::text {

char32_t next_code_point(std::string_view s, std::size_t& pos) noexcept {
  constexpr char32_t kReplacement = 0xFFFD;
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kReplacement;
  }
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacement;
  }
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
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

namespace {

using Range = std::pair<char32_t, char32_t>;

// Sorted, non-overlapping, inclusive.
constexpr std::array kLetterRanges = {
    Range{0x0041, 0x005A}, Range{0x0061, 0x007A}, Range{0x00AA, 0x00AA},
    Range{0x00B5, 0x00B5}, Range{0x00BA, 0x00BA}, Range{0x00C0, 0x00D6},
    Range{0x00D8, 0x00F6}, Range{0x00F8, 0x02C1}, Range{0x02C6, 0x02D1},
    Range{0x02E0, 0x02E4}, Range{0x0370, 0x0374}, Range{0x0376, 0x0377},
    Range{0x037A, 0x037D}, Range{0x037F, 0x037F}, Range{0x0386, 0x0386},
    Range{0x0388, 0x03FF}, Range{0x0400, 0x0481}, Range{0x048A, 0x052F},
    Range{0x0531, 0x0556}, Range{0x0561, 0x0587}, Range{0x05D0, 0x05EA},
    Range{0x0620, 0x064A}, Range{0x0671, 0x06D3}, Range{0x0904, 0x0939},
    Range{0x0958, 0x0961}, Range{0x10A0, 0x10FF}, Range{0x1E00, 0x1FBC},
    Range{0x1FC2, 0x1FCC}, Range{0x1FD0, 0x1FDB}, Range{0x1FE0, 0x1FEC},
    Range{0x1FF2, 0x1FFC}, Range{0x2C00, 0x2CE4}, Range{0x3041, 0x3096},
    Range{0x30A1, 0x30FA}, Range{0x3400, 0x4DBF}, Range{0x4E00, 0x9FFF},
    Range{0xA640, 0xA66E}, Range{0xA722, 0xA788}, Range{0xA78B, 0xA7CA},
    Range{0xAB30, 0xAB5A}, Range{0xAC00, 0xD7A3}, Range{0xFB00, 0xFB06},
    Range{0xFF21, 0xFF3A}, Range{0xFF41, 0xFF5A},
};

constexpr std::array kCombiningRanges = {
    Range{0x0300, 0x036F}, Range{0x0483, 0x0489}, Range{0x1AB0, 0x1AFF},
    Range{0x1DC0, 0x1DFF}, Range{0x20D0, 0x20FF}, Range{0xFE20, 0xFE2F},
};

template <std::size_t N>
bool in_ranges(const std::array<Range, N>& ranges, char32_t cp) noexcept {
  auto it = std::upper_bound(
      ranges.begin(), ranges.end(), cp,
      [](char32_t v, const Range& r) { return v < r.first; });
  if (it == ranges.begin()) return false;
  --it;
  return cp <= it->second;
}

}  // namespace

bool is_alphabetic(char32_t cp) noexcept { return in_ranges(kLetterRanges, cp); }

bool is_combining_mark(char32_t cp) noexcept {
  return in_ranges(kCombiningRanges, cp);
}

char32_t fold_code_point(char32_t cp) noexcept {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
  if ((cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)) return cp + 0x20;
  if (cp >= 0x0100 && cp <= 0x017F) {
    if (cp == 0x0130) return 'i';
    if (cp == 0x0178) return 0x00FF;
    if (cp == 0x017F) return 's';  // long s
    if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E))
      return (cp & 1) ? cp + 1 : cp;
    if (cp == 0x0131 || cp == 0x0138 || cp == 0x0149) return cp;
    return (cp & 1) ? cp : cp + 1;
  }
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
  if (cp == 0x0386) return 0x03AC;
  if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
  if (cp == 0x038C) return 0x03CC;
  if (cp == 0x038E || cp == 0x038F) return cp + 0x3F;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  if (cp >= 0x1E00 && cp <= 0x1EFF && cp != 0x1E9E) return (cp & 1) ? cp : cp + 1;
  return cp;
}

std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto start = pos;
    auto cp = next_code_point(s, pos);
    if (cp == 0xFFFD && !(pos - start == 3)) {
      // keep invalid bytes verbatim
      out.append(s.substr(start, pos - start));
      continue;
    }
    append_utf8(out, fold_code_point(cp));
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto p = s.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

std::optional<long long> parse_int(std::string_view s) noexcept {
  if (s.empty()) return std::nullopt;
  long long v = 0;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace diachrona::text
