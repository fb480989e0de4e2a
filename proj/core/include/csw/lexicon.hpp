#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace csw {

/// A bilingual term list with concept identities. File format is TSV with
/// three columns: src_term, tgt_term, concept_id. The src column holds the
/// pair's primary-language term, tgt the secondary-language term.
class Lexicon {
 public:
  struct Entry {
    std::string src_term;
    std::string tgt_term;
    std::uint32_t concept_id = 0;
  };

  /// A term occurrence inside a piece of text.
  struct Match {
    std::size_t begin = 0;  // byte offsets into the scanned text
    std::size_t end = 0;
    std::uint32_t concept_id = 0;
    const Entry* entry = nullptr;
  };

  static Lexicon load(const std::string& path);

  void add(std::string src_term, std::string tgt_term,
           std::uint32_t concept_id);

  std::size_t size() const { return entries_.size(); }

  /// One past the largest concept id; the dimension of concept-bag vectors.
  std::size_t concept_space() const { return concept_space_; }

  /// Longest-match occurrences of src terms (case-insensitive, word
  /// aligned; multi-word terms match across single spaces).
  std::vector<Match> match_src(std::string_view text) const;

  /// Greedy longest-match occurrences of tgt terms (byte-aligned scan, no
  /// word boundaries; suits scriptio continua such as Chinese).
  std::vector<Match> match_tgt(std::string_view text) const;

  /// Concept multiset of both sides' matches, for bag-of-concepts encoding.
  std::vector<std::uint32_t> concepts(std::string_view text) const;

  std::optional<std::string> translate_src(std::string_view src_term) const;
  std::optional<std::string> translate_tgt(std::string_view tgt_term) const;

 private:
  std::vector<Entry> entries_;
  std::size_t concept_space_ = 0;
  // src lookup: normalized term -> entry index; multi-word keys joined by
  // single spaces.
  std::unordered_map<std::string, std::size_t> by_src_;
  std::size_t max_src_words_ = 1;
  // tgt lookup: bucketed by first codepoint, candidates longest-first.
  std::unordered_map<char32_t, std::vector<std::size_t>> tgt_buckets_;
  std::unordered_map<std::string, std::size_t> by_tgt_exact_;
};

/// Lowercase ASCII and map curly apostrophe U+2019 to '\''; used to
/// normalize source-side words before lookup.
std::string normalize_src_word(std::string_view word);

}  // namespace csw
