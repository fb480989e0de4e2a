#include "csw/tokens.hpp"

#include "csw/utf8.hpp"

namespace csw {

namespace {

bool latin_letter(char32_t cp) {
  return (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z') ||
         (cp >= 0x00C0 && cp <= 0x024F);
}

bool cjk_ideograph(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF);
}

bool bengali_base(char32_t cp) {
  if (cp < 0x0980 || cp > 0x09FF) return false;
  // Skip dependent vowel signs, virama, nukta, and length marks so a base
  // consonant plus its signs counts once, approximating grapheme clusters.
  if (cp >= 0x09BE && cp <= 0x09CD) return false;                // signs, virama
  if (cp == 0x09BC || cp == 0x09D7) return false;                // nukta, AU mark
  if (cp == 0x0981 || cp == 0x0982 || cp == 0x0983) return false;  // candrabindu etc.
  return true;
}

std::uint64_t count_latin_words(std::string_view text) {
  std::uint64_t words = 0;
  bool in_chunk = false;
  bool chunk_has_letter = false;
  utf8::for_each(text, [&](char32_t cp, std::size_t, std::size_t) {
    if (utf8::is_space(cp)) {
      if (in_chunk && chunk_has_letter) ++words;
      in_chunk = false;
      chunk_has_letter = false;
    } else {
      in_chunk = true;
      if (latin_letter(cp)) chunk_has_letter = true;
    }
  });
  if (in_chunk && chunk_has_letter) ++words;
  return words;
}

template <typename Pred>
std::uint64_t count_codepoints_if(std::string_view text, Pred pred) {
  std::uint64_t n = 0;
  utf8::for_each(text, [&](char32_t cp, std::size_t, std::size_t) {
    if (pred(cp)) ++n;
  });
  return n;
}

}  // namespace

std::uint64_t ScriptTokenCounter::count(std::string_view text,
                                        std::string_view lang) const {
  if (text.empty()) return 0;
  if (lang == "zh") return count_codepoints_if(text, cjk_ideograph);
  if (lang == "bn") return count_codepoints_if(text, bengali_base);
  return count_latin_words(text);
}

}  // namespace csw
