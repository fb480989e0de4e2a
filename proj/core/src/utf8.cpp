#include "csw/utf8.hpp"

namespace csw::utf8 {

Decoded decode(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return {};
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {static_cast<char32_t>(b0), 1};

  int len;
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
    return {};
  }
  if (pos + static_cast<std::size_t>(len) > s.size()) return {};
  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + static_cast<std::size_t>(i)]);
    if ((b & 0xC0) != 0x80) return {};
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings, surrogates, and out-of-range values.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {};
  }
  return {cp, len};
}

bool is_boundary(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return pos == s.size();
  return (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

bool valid(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    Decoded d = decode(s, pos);
    if (d.len == 0) return false;
    pos += static_cast<std::size_t>(d.len);
  }
  return true;
}

std::size_t count_codepoints(std::string_view s) {
  std::size_t n = 0;
  for_each(s, [&](char32_t, std::size_t, std::size_t) { ++n; });
  return n;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace csw::utf8
