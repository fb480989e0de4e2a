#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "csw/corpus.hpp"
#include "csw/script_profile.hpp"
#include "csw/tagging.hpp"

namespace csw {

/// Embeds text into a fixed-dimension vector such that translations land
/// close together. Must be deterministic.
class CrossLingualEncoder {
 public:
  virtual ~CrossLingualEncoder() = default;
  virtual std::vector<float> embed(std::string_view text) const = 0;
  virtual std::size_t dimension() const = 0;
};

/// Decides Annotation vs Replacement (or Unrelated) for a token-level
/// segment given its sentence context.
class TokenLevelClassifier {
 public:
  struct Verdict {
    SegmentCategory category = SegmentCategory::Replacement;
    double confidence = 0.0;
  };

  virtual ~TokenLevelClassifier() = default;
  virtual Verdict classify(std::string_view segment_text,
                           std::string_view sentence_context) const = 0;
};

struct DetectorConfig {
  /// Min cosine similarity for a sentence segment to count as a translation
  /// of a neighbor (Annotation).
  double annt_similarity_threshold = 0.70;
  /// How many sentences on each side to search for the translation source.
  int alignment_window = 2;
  /// Unrelated when third-script chars reach this share of script letters.
  double unrelated_other_script_ratio = 0.30;
  /// Unrelated when symbol/garbled chars reach this share of the enclosing
  /// sentence's non-whitespace chars.
  double unrelated_symbol_ratio = 0.50;

  void validate() const;
};

/// Segment spans with levels for one tagged document; categories are filled
/// in later. In a primary-language document every PureSecondary sentence
/// becomes one sentence-level segment and every maximal foreign-script run
/// inside a Mixed sentence becomes one token-level segment (runs absorb
/// single neutral characters and secondary punctuation between foreign
/// characters); symmetric for secondary-language documents.
std::vector<CsSegment> detect_segments(const Document& doc,
                                       const std::vector<Sentence>& sentences,
                                       const LanguagePair& pair);

/// True when the segment is unrelated noise: kana-style third-script
/// material dominating the segment, or a symbol-garbled enclosing sentence.
bool screen_unrelated(const CsSegment& segment, const Document& doc,
                      const std::vector<Sentence>& sentences,
                      const ScriptProfile& profile, const DetectorConfig& cfg,
                      double* trigger_ratio = nullptr);

/// Category for a sentence-level segment: Annotation iff some
/// opposite-language sentence within the alignment window embeds with
/// cosine >= threshold (partner = the argmax, ties to the lowest index),
/// else Replacement with confidence 1 - best similarity.
CsSegment classify_sentence_segment(CsSegment segment,
                                    const std::vector<Sentence>& sentences,
                                    const Document& doc,
                                    const CrossLingualEncoder& encoder,
                                    const DetectorConfig& cfg);

/// Category for a token-level segment. Built-in heuristic: a bracketed
/// segment straight after document-language content is an Annotation whose
/// partner is the preceding run; anything else is a Replacement. A backend
/// classifier, when given, overrides the heuristic; on backend failure the
/// heuristic answer stands and *degraded is set.
CsSegment classify_token_segment(CsSegment segment, const Document& doc,
                                 const std::vector<Sentence>& sentences,
                                 const LanguagePair& pair,
                                 const TokenLevelClassifier* classifier,
                                 const DetectorConfig& cfg,
                                 bool* degraded = nullptr);

struct DocDetection {
  std::vector<Sentence> sentences;
  std::vector<CsSegment> segments;
  bool degraded = false;
};

/// Immutable per-run detector bundling the pair, config, and backends;
/// safe to share across worker threads.
class Detector {
 public:
  Detector(LanguagePair pair, DetectorConfig cfg,
           const CrossLingualEncoder* encoder,
           const TokenLevelClassifier* token_classifier = nullptr,
           const SentenceClassifier* sentence_fallback = nullptr);

  /// Full pipeline for one document: tag, segment, screen, classify.
  DocDetection detect(const Document& doc) const;

  const LanguagePair& pair() const { return pair_; }
  const DetectorConfig& config() const { return cfg_; }

 private:
  LanguagePair pair_;
  DetectorConfig cfg_;
  const ScriptProfile* profile_;
  const CrossLingualEncoder* encoder_;
  const TokenLevelClassifier* token_classifier_;
  const SentenceClassifier* sentence_fallback_;
};

struct DetectRunReport {
  std::uint64_t docs = 0;
  std::uint64_t docs_with_segments = 0;
  std::uint64_t segments = 0;
  bool degraded = false;
  std::vector<std::string> errors;
};

/// In-memory corpus detection preserving input order; per-document errors
/// are collected, not thrown.
std::vector<DetectedDocument> detect_corpus(const std::vector<Document>& docs,
                                            const Detector& detector,
                                            DetectRunReport* report = nullptr);

}  // namespace csw
