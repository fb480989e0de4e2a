#include "csw/detector.hpp"

#include <algorithm>
#include <cmath>

#include "csw/errors.hpp"
#include "csw/utf8.hpp"

namespace csw {

namespace {

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string_view span_text(const Document& doc, const ByteSpan& span) {
  return std::string_view(doc.text).substr(span.begin, span.size());
}

// Index of the sentence containing the span, or npos.
std::size_t sentence_of(const std::vector<Sentence>& sentences,
                        const ByteSpan& span) {
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (span.begin >= sentences[i].span.begin &&
        span.end <= sentences[i].span.end) {
      return i;
    }
  }
  return static_cast<std::size_t>(-1);
}

bool is_opener(char32_t cp) {
  switch (cp) {
    case U'(':
    case U'[':
    case 0xFF08:  // （
    case 0xFF3B:  // ［
    case 0x3008:  // 〈
    case 0x300A:  // 《
    case 0x300C:  // 「
    case 0x300E:  // 『
    case 0x3010:  // 【
    case 0x3014:  // 〔
      return true;
    default:
      return false;
  }
}

bool is_closer_bracket(char32_t cp) {
  switch (cp) {
    case U')':
    case U']':
    case 0xFF09:  // ）
    case 0xFF3D:  // ］
    case 0x3009:  // 〉
    case 0x300B:  // 》
    case 0x300D:  // 」
    case 0x300F:  // 』
    case 0x3011:  // 】
    case 0x3015:  // 〕
      return true;
    default:
      return false;
  }
}

bool partner_boundary_punct(char32_t cp) {
  switch (cp) {
    case U'.':
    case U'!':
    case U'?':
    case U':':
    case U';':
    case U',':
    case 0x3002:  // 。
    case 0xFF0C:  // ，
    case 0xFF01:  // ！
    case 0xFF1F:  // ？
    case 0xFF1B:  // ；
    case 0xFF1A:  // ：
    case 0x3001:  // 、
      return true;
    default:
      return false;
  }
}

struct Decoded {
  char32_t cp;
  std::size_t begin;
  std::size_t len;
};

std::vector<Decoded> decode_all(std::string_view text) {
  std::vector<Decoded> cps;
  utf8::for_each(text, [&](char32_t cp, std::size_t pos, std::size_t len) {
    cps.push_back({cp, pos, len});
  });
  return cps;
}

}  // namespace

void DetectorConfig::validate() const {
  if (annt_similarity_threshold <= 0.0 || annt_similarity_threshold > 1.0) {
    throw ConfigError("annt_similarity_threshold must be in (0, 1]");
  }
  if (alignment_window < 1) throw ConfigError("alignment_window must be >= 1");
  for (double r : {unrelated_other_script_ratio, unrelated_symbol_ratio}) {
    if (r < 0.0 || r > 1.0) throw ConfigError("unrelated ratios must be in [0, 1]");
  }
}

std::vector<CsSegment> detect_segments(const Document& doc,
                                       const std::vector<Sentence>& sentences,
                                       const LanguagePair& pair) {
  if (!pair.contains(doc.lang)) {
    throw ConfigError("document " + doc.id + " lang \"" + doc.lang +
                      "\" not in pair " + pair.name());
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto& span = sentences[i].span;
    if (span.begin >= span.end || span.end > doc.text.size() ||
        (i > 0 && span.begin < sentences[i - 1].span.end)) {
      throw ConfigError("document " + doc.id + ": sentence spans do not match");
    }
  }

  const ScriptProfile& profile = ScriptProfile::resolve(pair.script_profile);
  const bool doc_is_primary = doc.lang == pair.primary_lang;
  const LanguageTag foreign_sentence =
      doc_is_primary ? LanguageTag::PureSecondary : LanguageTag::PurePrimary;

  const auto is_foreign = [&](char32_t cp) {
    const CharClass c = profile.classify(cp);
    if (c == CharClass::OtherScript) return true;
    return doc_is_primary ? c == CharClass::Secondary : c == CharClass::Primary;
  };
  const auto is_joiner = [&](char32_t cp) {
    if (utf8::is_space(cp)) return true;
    const CharClass c = profile.classify(cp);
    return c == CharClass::Neutral || c == CharClass::SecondaryNeutral;
  };

  std::vector<CsSegment> segments;
  for (const auto& sentence : sentences) {
    if (sentence.tag == foreign_sentence) {
      CsSegment seg;
      seg.doc_id = doc.id;
      seg.span = sentence.span;
      seg.level = SegmentLevel::Sentence;
      segments.push_back(std::move(seg));
      continue;
    }
    if (sentence.tag != LanguageTag::Mixed) continue;

    const auto cps = decode_all(span_text(doc, sentence.span));
    const std::size_t base = sentence.span.begin;
    std::size_t i = 0;
    while (i < cps.size()) {
      if (!is_foreign(cps[i].cp)) {
        ++i;
        continue;
      }
      // Maximal foreign run; a single joiner between foreign chars does not
      // break it.
      std::size_t last = i;
      std::size_t j = i + 1;
      while (j < cps.size()) {
        if (is_foreign(cps[j].cp)) {
          last = j;
          ++j;
        } else if (is_joiner(cps[j].cp) && j + 1 < cps.size() &&
                   is_foreign(cps[j + 1].cp)) {
          last = j + 1;
          j += 2;
        } else {
          break;
        }
      }
      CsSegment seg;
      seg.doc_id = doc.id;
      seg.span = {base + cps[i].begin, base + cps[last].begin + cps[last].len};
      seg.level = SegmentLevel::Token;
      segments.push_back(std::move(seg));
      i = j;
    }
  }
  return segments;
}

bool screen_unrelated(const CsSegment& segment, const Document& doc,
                      const std::vector<Sentence>& sentences,
                      const ScriptProfile& profile, const DetectorConfig& cfg,
                      double* trigger_ratio) {
  const std::string_view seg_text = span_text(doc, segment.span);

  std::size_t other = 0;
  std::size_t script_letters = 0;
  utf8::for_each(seg_text, [&](char32_t cp, std::size_t, std::size_t) {
    switch (profile.classify(cp)) {
      case CharClass::OtherScript:
        ++other;
        ++script_letters;
        break;
      case CharClass::Primary:
      case CharClass::Secondary:
        ++script_letters;
        break;
      default:
        break;
    }
  });
  if (script_letters > 0) {
    const double ratio =
        static_cast<double>(other) / static_cast<double>(script_letters);
    if (ratio >= cfg.unrelated_other_script_ratio) {
      if (trigger_ratio) *trigger_ratio = clamp01(ratio);
      return true;
    }
  }

  // Garbled check runs over the enclosing sentence so that a symbol-soup
  // context flags the runs inside it.
  std::string_view context = seg_text;
  const std::size_t si = sentence_of(sentences, segment.span);
  if (si != static_cast<std::size_t>(-1)) {
    context = span_text(doc, sentences[si].span);
  }
  std::size_t garbled = 0;
  std::size_t non_ws = 0;
  utf8::for_each(context, [&](char32_t cp, std::size_t, std::size_t) {
    if (utf8::is_space(cp)) return;
    ++non_ws;
    if (profile.classify(cp) == CharClass::Neutral) ++garbled;
  });
  if (non_ws > 0) {
    const double ratio =
        static_cast<double>(garbled) / static_cast<double>(non_ws);
    if (ratio >= cfg.unrelated_symbol_ratio) {
      if (trigger_ratio) *trigger_ratio = clamp01(ratio);
      return true;
    }
  }
  return false;
}

CsSegment classify_sentence_segment(CsSegment segment,
                                    const std::vector<Sentence>& sentences,
                                    const Document& doc,
                                    const CrossLingualEncoder& encoder,
                                    const DetectorConfig& cfg) {
  const std::size_t self = sentence_of(sentences, segment.span);
  const LanguageTag own_tag =
      self != static_cast<std::size_t>(-1) ? sentences[self].tag
                                           : LanguageTag::Other;
  // Candidates carry the document's own language: the tag opposite to the
  // segment's.
  const LanguageTag wanted = own_tag == LanguageTag::PureSecondary
                                 ? LanguageTag::PurePrimary
                                 : LanguageTag::PureSecondary;

  std::vector<float> seg_vec;
  try {
    seg_vec = encoder.embed(span_text(doc, segment.span));
  } catch (const std::exception& e) {
    throw BackendError("encoder failed on document " + doc.id + ": " +
                       e.what());
  }

  double best = -2.0;
  std::size_t best_idx = static_cast<std::size_t>(-1);
  if (self != static_cast<std::size_t>(-1)) {
    const auto w = static_cast<std::size_t>(cfg.alignment_window);
    const std::size_t lo = self >= w ? self - w : 0;
    const std::size_t hi = std::min(sentences.size(), self + w + 1);
    for (std::size_t i = lo; i < hi; ++i) {
      if (i == self || sentences[i].tag != wanted) continue;
      std::vector<float> cand_vec;
      try {
        cand_vec = encoder.embed(span_text(doc, sentences[i].span));
      } catch (const std::exception& e) {
        throw BackendError("encoder failed on document " + doc.id + ": " +
                           e.what());
      }
      const double sim = cosine(seg_vec, cand_vec);
      if (sim > best) {  // ties keep the lowest index
        best = sim;
        best_idx = i;
      }
    }
  }

  if (best_idx != static_cast<std::size_t>(-1) &&
      best >= cfg.annt_similarity_threshold) {
    segment.category = SegmentCategory::Annotation;
    segment.partner_span = sentences[best_idx].span;
    segment.confidence = clamp01(best);
  } else {
    segment.category = SegmentCategory::Replacement;
    segment.partner_span.reset();
    segment.confidence = clamp01(1.0 - std::max(best, 0.0));
  }
  return segment;
}

namespace {

constexpr double kHeuristicAnnotationConfidence = 0.9;
constexpr double kHeuristicReplacementConfidence = 0.8;

/// Heuristic Annotation check: segment bracketed and preceded by
/// document-language content. Returns the partner span (absolute offsets)
/// when it applies.
std::optional<ByteSpan> annotation_partner(const CsSegment& segment,
                                           const Document& doc,
                                           const std::vector<Sentence>& sentences,
                                           const ScriptProfile& profile,
                                           bool doc_is_primary) {
  const std::size_t si = sentence_of(sentences, segment.span);
  if (si == static_cast<std::size_t>(-1)) return std::nullopt;
  const auto& sent_span = sentences[si].span;
  const auto cps = decode_all(span_text(doc, sent_span));
  const std::size_t rel_begin = segment.span.begin - sent_span.begin;
  const std::size_t rel_end = segment.span.end - sent_span.begin;

  const auto own_class =
      doc_is_primary ? CharClass::Primary : CharClass::Secondary;

  // Opener straight before the segment (whitespace allowed).
  std::size_t open_idx = static_cast<std::size_t>(-1);
  for (std::size_t i = cps.size(); i-- > 0;) {
    if (cps[i].begin + cps[i].len > rel_begin) continue;
    if (utf8::is_space(cps[i].cp)) continue;
    if (is_opener(cps[i].cp)) open_idx = i;
    break;
  }
  if (open_idx == static_cast<std::size_t>(-1)) return std::nullopt;

  // Closer straight after (whitespace allowed).
  bool closed = false;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i].begin < rel_end) continue;
    if (utf8::is_space(cps[i].cp)) continue;
    closed = is_closer_bracket(cps[i].cp);
    break;
  }
  if (!closed) return std::nullopt;

  // The preceding maximal document-language run, bounded by sentence start,
  // a previous bracket, punctuation, or foreign material.
  std::size_t first = open_idx;  // exclusive partner range [first, open_idx)
  bool has_own = false;
  for (std::size_t i = open_idx; i-- > 0;) {
    const char32_t cp = cps[i].cp;
    const CharClass c = profile.classify(cp);
    if (is_closer_bracket(cp) || is_opener(cp) || partner_boundary_punct(cp) ||
        c == CharClass::OtherScript ||
        (doc_is_primary ? c == CharClass::Secondary : c == CharClass::Primary)) {
      break;
    }
    first = i;
    if (c == own_class) has_own = true;
  }
  if (!has_own) return std::nullopt;

  // Trim whitespace on both ends of [first, open_idx).
  std::size_t last = open_idx;
  while (first < last && utf8::is_space(cps[first].cp)) ++first;
  while (last > first && utf8::is_space(cps[last - 1].cp)) --last;
  if (first >= last) return std::nullopt;

  return ByteSpan{sent_span.begin + cps[first].begin,
                  sent_span.begin + cps[last - 1].begin + cps[last - 1].len};
}

}  // namespace

CsSegment classify_token_segment(CsSegment segment, const Document& doc,
                                 const std::vector<Sentence>& sentences,
                                 const LanguagePair& pair,
                                 const TokenLevelClassifier* classifier,
                                 const DetectorConfig& cfg,
                                 bool* degraded) {
  (void)cfg;
  const ScriptProfile& profile = ScriptProfile::resolve(pair.script_profile);
  const bool doc_is_primary = doc.lang == pair.primary_lang;

  const auto partner =
      annotation_partner(segment, doc, sentences, profile, doc_is_primary);
  if (partner) {
    segment.category = SegmentCategory::Annotation;
    segment.partner_span = partner;
    segment.confidence = kHeuristicAnnotationConfidence;
  } else {
    segment.category = SegmentCategory::Replacement;
    segment.partner_span.reset();
    segment.confidence = kHeuristicReplacementConfidence;
  }

  if (classifier != nullptr) {
    const std::size_t si = sentence_of(sentences, segment.span);
    const std::string_view context =
        si != static_cast<std::size_t>(-1)
            ? span_text(doc, sentences[si].span)
            : std::string_view(doc.text);
    try {
      const auto verdict =
          classifier->classify(span_text(doc, segment.span), context);
      if (verdict.category == SegmentCategory::Annotation && !partner) {
        // No derivable partner: an Annotation verdict cannot be honored, so
        // the replacement answer stands.
      } else {
        segment.category = verdict.category;
        segment.confidence = clamp01(verdict.confidence);
        if (verdict.category != SegmentCategory::Annotation) {
          segment.partner_span.reset();
        }
      }
    } catch (const std::exception&) {
      if (degraded) *degraded = true;
    }
  }
  return segment;
}

Detector::Detector(LanguagePair pair, DetectorConfig cfg,
                   const CrossLingualEncoder* encoder,
                   const TokenLevelClassifier* token_classifier,
                   const SentenceClassifier* sentence_fallback)
    : pair_(std::move(pair)),
      cfg_(cfg),
      profile_(&ScriptProfile::resolve(pair_.script_profile)),
      encoder_(encoder),
      token_classifier_(token_classifier),
      sentence_fallback_(sentence_fallback) {
  cfg_.validate();
}

DocDetection Detector::detect(const Document& doc) const {
  DocDetection out;
  out.sentences = tag_document(doc, pair_, sentence_fallback_);
  auto segments = detect_segments(doc, out.sentences, pair_);
  out.segments.reserve(segments.size());
  for (auto& seg : segments) {
    double ratio = 0.0;
    if (screen_unrelated(seg, doc, out.sentences, *profile_, cfg_, &ratio)) {
      seg.category = SegmentCategory::Unrelated;
      seg.partner_span.reset();
      seg.confidence = ratio;
      out.segments.push_back(std::move(seg));
      continue;
    }
    if (seg.level == SegmentLevel::Sentence) {
      if (encoder_ == nullptr) {
        throw ConfigError(
            "sentence-level segment found but no encoder configured (doc " +
            doc.id + ")");
      }
      out.segments.push_back(classify_sentence_segment(
          std::move(seg), out.sentences, doc, *encoder_, cfg_));
    } else {
      bool degraded = false;
      out.segments.push_back(classify_token_segment(std::move(seg), doc,
                                                    out.sentences, pair_,
                                                    token_classifier_, cfg_,
                                                    &degraded));
      out.degraded = out.degraded || degraded;
    }
  }
  return out;
}

std::vector<DetectedDocument> detect_corpus(const std::vector<Document>& docs,
                                            const Detector& detector,
                                            DetectRunReport* report) {
  std::vector<DetectedDocument> out;
  out.reserve(docs.size());
  DetectRunReport local;
  for (const auto& doc : docs) {
    DetectedDocument item;
    item.doc = doc;
    try {
      auto detection = detector.detect(doc);
      item.segments = std::move(detection.segments);
      local.degraded = local.degraded || detection.degraded;
    } catch (const std::exception& e) {
      local.errors.push_back(doc.id + ": " + e.what());
    }
    ++local.docs;
    if (!item.segments.empty()) ++local.docs_with_segments;
    local.segments += item.segments.size();
    out.push_back(std::move(item));
  }
  if (report) *report = std::move(local);
  return out;
}

}  // namespace csw
