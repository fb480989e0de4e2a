#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "csw/corpus.hpp"
#include "csw/script_profile.hpp"

namespace csw {

/// Per-sentence language classifier for pairs the script rule cannot
/// separate. Must be deterministic for a fixed input.
class SentenceClassifier {
 public:
  virtual ~SentenceClassifier() = default;

  /// Returns (language code, confidence in [0,1]).
  virtual std::pair<std::string, double> classify(std::string_view text) const = 0;
};

/// Weak default backend for en-ro: sentences carrying Romanian diacritics
/// are tagged "ro", everything else leans "en" with low confidence.
class RomanianDiacriticClassifier : public SentenceClassifier {
 public:
  std::pair<std::string, double> classify(std::string_view text) const override;
};

/// Split text into sentence spans. Terminators are . ! ? and their
/// fullwidth/CJK forms plus ellipsis, danda, and newline; a run of closing
/// quotes/brackets straight after a terminator stays with the sentence;
/// known abbreviations ("Mr.", "e.g.", "U.S.") and decimal points do not
/// split. Parenthesized material is only separated when the preceding text
/// already ended with a terminator. Non-empty input yields at least one
/// span, and spans cover all non-whitespace text in order.
std::vector<ByteSpan> split_sentences(std::string_view text);

/// Tag one sentence: count primary-script (p) and secondary-script (s)
/// letters, ignoring neutrals. p >= min_chars and s == 0 gives PurePrimary;
/// the mirror gives PureSecondary; both scripts present gives Mixed;
/// otherwise the fallback classifier decides (confidence >= 0.5), else
/// Other.
LanguageTag tag_sentence_language(std::string_view text,
                                  const ScriptProfile& profile,
                                  const SentenceClassifier* fallback = nullptr,
                                  const LanguagePair* pair = nullptr);

/// split_sentences + tag_sentence_language over a whole document, in text
/// order.
std::vector<Sentence> tag_document(const Document& doc,
                                   const LanguagePair& pair,
                                   const SentenceClassifier* fallback = nullptr);

}  // namespace csw
