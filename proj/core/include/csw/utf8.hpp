#pragma once

#include <cstddef>
#include <string_view>

namespace csw::utf8 {

struct Decoded {
  char32_t cp = 0;
  int len = 0;  // 0 on invalid sequence
};

/// Decode the codepoint starting at byte offset pos. Returns len 0 if the
/// sequence is invalid or pos is past the end.
Decoded decode(std::string_view s, std::size_t pos);

/// True if pos is the start of a codepoint (or s.size()).
bool is_boundary(std::string_view s, std::size_t pos);

/// True if the whole string is well-formed UTF-8.
bool valid(std::string_view s);

std::size_t count_codepoints(std::string_view s);

/// Unicode whitespace (ASCII controls, NBSP, general punctuation spaces,
/// ideographic space).
bool is_space(char32_t cp);

/// Visit codepoints in order: f(cp, byte_pos, byte_len). Invalid bytes are
/// visited as U+FFFD with len 1 so offsets always advance.
template <typename F>
void for_each(std::string_view s, F&& f) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    Decoded d = decode(s, pos);
    if (d.len == 0) {
      f(static_cast<char32_t>(0xFFFD), pos, std::size_t{1});
      ++pos;
    } else {
      f(d.cp, pos, static_cast<std::size_t>(d.len));
      pos += static_cast<std::size_t>(d.len);
    }
  }
}

}  // namespace csw::utf8
