#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "csw/errors.hpp"

namespace csw {

/// Half-open byte range [begin, end) into a document's text. Offsets always
/// fall on UTF-8 codepoint boundaries.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const ByteSpan&) const = default;
};

enum class LanguageTag { PurePrimary, PureSecondary, Mixed, Other };

std::string_view to_string(LanguageTag tag);

/// A high-resource / low-resource language pairing. The script profile names
/// the character-range rule used to tell the two languages apart.
struct LanguagePair {
  std::string primary_lang;
  std::string secondary_lang;
  std::string script_profile;

  /// Parse "en-zh" style names; the profile defaults to the pair name.
  /// Throws ConfigError for equal languages or an unregistered profile.
  static LanguagePair parse(std::string_view name);

  void validate() const;
  bool contains(std::string_view lang) const {
    return lang == primary_lang || lang == secondary_lang;
  }
  std::string name() const { return primary_lang + "-" + secondary_lang; }
};

/// One corpus record. `meta_json` holds the optional "meta" object as JSON
/// text ("" when absent); it is carried through every pipeline untouched.
struct Document {
  std::string id;
  std::string lang;
  std::string text;
  std::string meta_json;

  bool operator==(const Document&) const = default;
};

struct Sentence {
  ByteSpan span;
  LanguageTag tag = LanguageTag::Other;
};

enum class SegmentLevel { Sentence, Token };
enum class SegmentCategory { Annotation, Replacement, Unrelated };

std::string_view to_string(SegmentLevel level);
std::string_view to_string(SegmentCategory category);
SegmentLevel segment_level_from(std::string_view s);
SegmentCategory segment_category_from(std::string_view s);

/// A detected code-switching span. `partner_span` is present exactly when
/// the category is Annotation and points at the annotated source text.
struct CsSegment {
  std::string doc_id;
  ByteSpan span;
  SegmentLevel level = SegmentLevel::Token;
  SegmentCategory category = SegmentCategory::Replacement;
  std::optional<ByteSpan> partner_span;
  double confidence = 0.0;

  bool operator==(const CsSegment&) const = default;
};

struct DetectedDocument {
  Document doc;
  std::vector<CsSegment> segments;
};

// --- JSONL serialization -------------------------------------------------

/// Canonical one-line JSON for a document: keys id, lang, text, meta in that
/// order, meta omitted when empty. Output is byte-stable for equal input.
std::string to_json_line(const Document& doc);

/// Same, with a trailing "segments" array.
std::string to_json_line(const DetectedDocument& detected);

/// Parse a corpus line. Throws FormatError naming the line number.
Document document_from_json_line(std::string_view line, std::size_t line_no);

/// Parse a detection-output line (a document plus optional "segments").
DetectedDocument detected_from_json_line(std::string_view line,
                                         std::size_t line_no);

struct ReadIssue {
  std::size_t line_no = 0;
  std::string message;
};

struct ReadOptions {
  bool strict = false;
  /// When set, documents whose lang is outside the pair are rejected.
  std::optional<LanguagePair> pair;
};

/// Streaming JSONL reader. In lenient mode malformed lines are counted and
/// skipped; in strict mode the first violation throws.
class CorpusReader {
 public:
  CorpusReader(const std::string& path, ReadOptions options = {});

  /// Next well-formed document, or nullopt at end of file.
  std::optional<Document> next();

  const std::vector<ReadIssue>& issues() const { return issues_; }
  std::size_t warnings() const { return issues_.size(); }

 private:
  std::ifstream in_;
  std::string path_;
  ReadOptions options_;
  std::size_t line_no_ = 0;
  std::unordered_set<std::string> seen_ids_;
  std::vector<ReadIssue> issues_;

  void reject(std::size_t line_no, const std::string& message);
};

/// Streaming JSONL writer with the canonical key order.
class CorpusWriter {
 public:
  explicit CorpusWriter(const std::string& path);

  void write(const Document& doc);
  void write(const DetectedDocument& detected);
  void write_raw_line(std::string_view line);
  std::size_t count() const { return count_; }
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t count_ = 0;
};

// Convenience whole-file helpers for small corpora and tests.
std::vector<Document> read_corpus_file(const std::string& path,
                                       ReadOptions options = {},
                                       std::vector<ReadIssue>* issues = nullptr);
std::size_t write_corpus_file(const std::vector<Document>& docs,
                              const std::string& path);

std::vector<DetectedDocument> read_detected_file(const std::string& path);

}  // namespace csw
