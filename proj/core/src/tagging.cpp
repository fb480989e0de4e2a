#include "csw/tagging.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <unordered_set>

#include "csw/utf8.hpp"

namespace csw {

namespace {

bool is_terminator(char32_t cp) {
  switch (cp) {
    case U'.':
    case U'!':
    case U'?':
    case 0x2026:  // …
    case 0x3002:  // 。
    case 0xFF01:  // ！
    case 0xFF1F:  // ？
    case 0xFF1B:  // ；
    case 0x0964:  // ।
    case 0x0965:  // ॥
      return true;
    default:
      return false;
  }
}

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case U'}':
    case 0x2019:  // ’
    case 0x201D:  // ”
    case 0x3009:  // 〉
    case 0x300B:  // 》
    case 0x300D:  // 」
    case 0x300F:  // 』
    case 0x3011:  // 】
    case 0x3015:  // 〕
    case 0xFF09:  // ）
    case 0xFF3D:  // ］
    case 0xFF5D:  // ｝
      return true;
    default:
      return false;
  }
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> abbr = {
      "mr.",   "mrs.",  "ms.",  "dr.",   "prof.", "st.",  "vs.",
      "etc.",  "e.g.",  "i.e.", "u.s.",  "u.k.",  "fig.", "eq.",
      "al.",   "jr.",   "sr.",  "inc.",  "ltd.",  "co.",  "dept.",
      "approx.", "cf.", "ca."};
  return abbr;
}

bool ascii_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// The word ending at the '.' at dot_pos, lowercased, including internal
// periods ("U.S." scans back to the full token).
bool abbreviation_before(std::string_view text, std::size_t dot_pos) {
  std::size_t begin = dot_pos;
  while (begin > 0) {
    const char c = text[begin - 1];
    if (ascii_letter(c) || c == '.') {
      --begin;
      if (dot_pos - begin > 16) return false;
    } else {
      break;
    }
  }
  if (begin == dot_pos) return false;
  std::string token;
  token.reserve(dot_pos - begin + 1);
  for (std::size_t i = begin; i < dot_pos; ++i) {
    token.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(text[i]))));
  }
  token.push_back('.');
  return abbreviations().count(token) > 0;
}

// A '.' directly followed by an ASCII letter or digit is word-internal
// ("U.S.", "e.g.", "3.14", "example.com") and never ends a sentence.
bool word_internal_dot(std::string_view text, std::size_t dot_pos) {
  if (dot_pos + 1 >= text.size()) return false;
  const char next = text[dot_pos + 1];
  return ascii_letter(next) || (next >= '0' && next <= '9');
}

}  // namespace

std::vector<ByteSpan> split_sentences(std::string_view text) {
  std::vector<ByteSpan> spans;
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t cur_start = npos;
  std::size_t last_nonspace_end = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    const auto d = utf8::decode(text, pos);
    const std::size_t len = d.len > 0 ? static_cast<std::size_t>(d.len) : 1;
    const char32_t cp = d.len > 0 ? d.cp : 0xFFFD;

    if (utf8::is_space(cp)) {
      if (cp == U'\n' && cur_start != npos) {
        spans.push_back({cur_start, last_nonspace_end});
        cur_start = npos;
      }
      pos += len;
      continue;
    }

    if (cur_start == npos) cur_start = pos;
    last_nonspace_end = pos + len;

    if (is_terminator(cp) &&
        !(cp == U'.' &&
          (word_internal_dot(text, pos) || abbreviation_before(text, pos)))) {
      // Absorb immediately following terminators and closing marks.
      std::size_t j = pos + len;
      while (j < text.size()) {
        const auto dn = utf8::decode(text, j);
        if (dn.len == 0) break;
        if (is_terminator(dn.cp) || is_closer(dn.cp)) {
          j += static_cast<std::size_t>(dn.len);
        } else {
          break;
        }
      }
      spans.push_back({cur_start, j});
      cur_start = npos;
      pos = j;
      continue;
    }

    pos += len;
  }
  if (cur_start != npos) {
    spans.push_back({cur_start, last_nonspace_end});
  }
  return spans;
}

std::pair<std::string, double> RomanianDiacriticClassifier::classify(
    std::string_view text) const {
  static const std::array<char32_t, 14> diacritics = {
      0x0103, 0x0102,  // ă Ă
      0x00E2, 0x00C2,  // â Â
      0x00EE, 0x00CE,  // î Î
      0x0219, 0x0218,  // ș Ș
      0x021B, 0x021A,  // ț Ț
      0x015F, 0x015E,  // ş Ş (legacy cedilla forms)
      0x0163, 0x0162,  // ţ Ţ
  };
  std::size_t letters = 0;
  std::size_t hits = 0;
  utf8::for_each(text, [&](char32_t cp, std::size_t, std::size_t) {
    const bool basic = (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z');
    const bool extended = (cp >= 0x00C0 && cp <= 0x024F);
    if (basic || extended) ++letters;
    for (char32_t dc : diacritics) {
      if (cp == dc) {
        ++hits;
        break;
      }
    }
  });
  if (letters == 0) return {"und", 0.0};
  if (hits > 0) {
    const double ratio = static_cast<double>(hits) / static_cast<double>(letters);
    return {"ro", std::min(1.0, 0.5 + 10.0 * ratio)};
  }
  return {"en", 0.55};
}

LanguageTag tag_sentence_language(std::string_view text,
                                  const ScriptProfile& profile,
                                  const SentenceClassifier* fallback,
                                  const LanguagePair* pair) {
  std::size_t p = 0;
  std::size_t s = 0;
  utf8::for_each(text, [&](char32_t cp, std::size_t, std::size_t) {
    switch (profile.classify(cp)) {
      case CharClass::Primary: ++p; break;
      case CharClass::Secondary: ++s; break;
      default: break;
    }
  });
  const auto min_chars = static_cast<std::size_t>(profile.min_chars);
  if (p >= min_chars && s == 0) return LanguageTag::PurePrimary;
  if (s >= min_chars && p == 0) return LanguageTag::PureSecondary;
  if (p >= 1 && s >= 1) return LanguageTag::Mixed;
  if (fallback != nullptr && pair != nullptr) {
    const auto [lang, confidence] = fallback->classify(text);
    if (confidence >= 0.5) {
      if (lang == pair->primary_lang) return LanguageTag::PurePrimary;
      if (lang == pair->secondary_lang) return LanguageTag::PureSecondary;
    }
  }
  return LanguageTag::Other;
}

std::vector<Sentence> tag_document(const Document& doc,
                                   const LanguagePair& pair,
                                   const SentenceClassifier* fallback) {
  const ScriptProfile& profile = ScriptProfile::resolve(pair.script_profile);
  const auto spans = split_sentences(doc.text);
  std::vector<Sentence> sentences;
  sentences.reserve(spans.size());
  for (const auto& span : spans) {
    const std::string_view s(doc.text.data() + span.begin, span.size());
    sentences.push_back({span, tag_sentence_language(s, profile, fallback, &pair)});
  }
  return sentences;
}

}  // namespace csw
