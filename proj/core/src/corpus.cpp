#include "csw/corpus.hpp"

#include <nlohmann/json.hpp>

#include "csw/script_profile.hpp"
#include "csw/utf8.hpp"

namespace csw {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(LanguageTag tag) {
  switch (tag) {
    case LanguageTag::PurePrimary: return "pure_primary";
    case LanguageTag::PureSecondary: return "pure_secondary";
    case LanguageTag::Mixed: return "mixed";
    case LanguageTag::Other: return "other";
  }
  return "other";
}

std::string_view to_string(SegmentLevel level) {
  return level == SegmentLevel::Sentence ? "sentence" : "token";
}

std::string_view to_string(SegmentCategory category) {
  switch (category) {
    case SegmentCategory::Annotation: return "annotation";
    case SegmentCategory::Replacement: return "replacement";
    case SegmentCategory::Unrelated: return "unrelated";
  }
  return "replacement";
}

SegmentLevel segment_level_from(std::string_view s) {
  if (s == "sentence") return SegmentLevel::Sentence;
  if (s == "token") return SegmentLevel::Token;
  throw FormatError("unknown segment level: " + std::string(s));
}

SegmentCategory segment_category_from(std::string_view s) {
  if (s == "annotation") return SegmentCategory::Annotation;
  if (s == "replacement") return SegmentCategory::Replacement;
  if (s == "unrelated") return SegmentCategory::Unrelated;
  throw FormatError("unknown segment category: " + std::string(s));
}

LanguagePair LanguagePair::parse(std::string_view name) {
  const auto dash = name.find('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 >= name.size()) {
    throw ConfigError("language pair must look like \"en-zh\", got \"" +
                      std::string(name) + "\"");
  }
  LanguagePair pair;
  pair.primary_lang = std::string(name.substr(0, dash));
  pair.secondary_lang = std::string(name.substr(dash + 1));
  pair.script_profile = std::string(name);
  pair.validate();
  return pair;
}

void LanguagePair::validate() const {
  if (primary_lang == secondary_lang) {
    throw ConfigError("language pair has equal sides: " + primary_lang);
  }
  if (!ScriptProfile::is_registered(script_profile)) {
    throw ConfigError("script profile not registered: " + script_profile);
  }
}

namespace {

bool blank_after_trim(std::string_view text) {
  bool non_space = false;
  utf8::for_each(text, [&](char32_t cp, std::size_t, std::size_t) {
    if (!utf8::is_space(cp)) non_space = true;
  });
  return !non_space;
}

ordered_json span_to_json(const ByteSpan& span) {
  return ordered_json::array({span.begin, span.end});
}

ByteSpan span_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("bad span");
  return ByteSpan{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

ordered_json document_to_json(const Document& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["lang"] = doc.lang;
  j["text"] = doc.text;
  if (!doc.meta_json.empty()) {
    j["meta"] = ordered_json::parse(doc.meta_json);
  }
  return j;
}

}  // namespace

std::string to_json_line(const Document& doc) {
  return document_to_json(doc).dump();
}

std::string to_json_line(const DetectedDocument& detected) {
  ordered_json j = document_to_json(detected.doc);
  ordered_json segs = ordered_json::array();
  for (const auto& seg : detected.segments) {
    ordered_json s;
    s["span"] = span_to_json(seg.span);
    s["level"] = to_string(seg.level);
    s["category"] = to_string(seg.category);
    if (seg.partner_span) s["partner_span"] = span_to_json(*seg.partner_span);
    s["confidence"] = seg.confidence;
    segs.push_back(std::move(s));
  }
  j["segments"] = std::move(segs);
  return j.dump();
}

Document document_from_json_line(std::string_view line, std::size_t line_no) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    throw FormatError("line " + std::to_string(line_no) +
                      ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw FormatError("line " + std::to_string(line_no) + ": not an object");
  }
  Document doc;
  for (const char* key : {"id", "lang", "text"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": missing or non-string \"" + key + "\"");
    }
  }
  doc.id = j["id"].get<std::string>();
  doc.lang = j["lang"].get<std::string>();
  doc.text = j["text"].get<std::string>();
  if (!utf8::valid(doc.text)) {
    throw FormatError("line " + std::to_string(line_no) +
                      ": text is not valid UTF-8");
  }
  if (blank_after_trim(doc.text)) {
    throw FormatError("line " + std::to_string(line_no) +
                      ": text is empty after trimming");
  }
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": \"meta\" is not an object");
    }
    doc.meta_json = j["meta"].dump();
  }
  return doc;
}

DetectedDocument detected_from_json_line(std::string_view line,
                                         std::size_t line_no) {
  DetectedDocument out;
  out.doc = document_from_json_line(line, line_no);
  ordered_json j = ordered_json::parse(line);
  if (!j.contains("segments")) return out;
  if (!j["segments"].is_array()) {
    throw FormatError("line " + std::to_string(line_no) +
                      ": \"segments\" is not an array");
  }
  for (const auto& s : j["segments"]) {
    CsSegment seg;
    seg.doc_id = out.doc.id;
    seg.span = span_from_json(s.at("span"));
    seg.level = segment_level_from(s.at("level").get<std::string>());
    seg.category = segment_category_from(s.at("category").get<std::string>());
    if (s.contains("partner_span")) {
      seg.partner_span = span_from_json(s["partner_span"]);
    }
    seg.confidence = s.value("confidence", 0.0);
    out.segments.push_back(std::move(seg));
  }
  return out;
}

CorpusReader::CorpusReader(const std::string& path, ReadOptions options)
    : in_(path, std::ios::binary), path_(path), options_(std::move(options)) {
  if (!in_) throw IoError("cannot open corpus file: " + path);
}

void CorpusReader::reject(std::size_t line_no, const std::string& message) {
  if (options_.strict) {
    throw FormatError(path_ + ": " + message);
  }
  issues_.push_back({line_no, message});
}

std::optional<Document> CorpusReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Document doc;
    try {
      doc = document_from_json_line(line, line_no_);
    } catch (const FormatError& e) {
      reject(line_no_, e.what());
      continue;
    }
    if (!seen_ids_.insert(doc.id).second) {
      reject(line_no_, "line " + std::to_string(line_no_) +
                           ": duplicate document id \"" + doc.id + "\"");
      continue;
    }
    if (options_.pair && !options_.pair->contains(doc.lang)) {
      reject(line_no_, "line " + std::to_string(line_no_) + ": lang \"" +
                           doc.lang + "\" not in pair " +
                           options_.pair->name());
      continue;
    }
    return doc;
  }
  if (in_.bad()) throw IoError("read failure on " + path_);
  return std::nullopt;
}

CorpusWriter::CorpusWriter(const std::string& path)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw IoError("cannot open output file: " + path);
}

void CorpusWriter::write(const Document& doc) {
  write_raw_line(to_json_line(doc));
}

void CorpusWriter::write(const DetectedDocument& detected) {
  write_raw_line(to_json_line(detected));
}

void CorpusWriter::write_raw_line(std::string_view line) {
  out_ << line << '\n';
  if (!out_) throw IoError("write failure on " + path_);
  ++count_;
}

void CorpusWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("close failure on " + path_);
}

std::vector<Document> read_corpus_file(const std::string& path,
                                       ReadOptions options,
                                       std::vector<ReadIssue>* issues) {
  CorpusReader reader(path, std::move(options));
  std::vector<Document> docs;
  while (auto doc = reader.next()) docs.push_back(std::move(*doc));
  if (issues) *issues = reader.issues();
  return docs;
}

std::size_t write_corpus_file(const std::vector<Document>& docs,
                              const std::string& path) {
  CorpusWriter writer(path);
  for (const auto& doc : docs) writer.write(doc);
  writer.close();
  return writer.count();
}

std::vector<DetectedDocument> read_detected_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);
  std::vector<DetectedDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    docs.push_back(detected_from_json_line(line, line_no));
  }
  return docs;
}

}  // namespace csw
