#include "csw/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "csw/errors.hpp"
#include "csw/utf8.hpp"

namespace csw {

namespace {

bool src_word_char(char32_t cp) {
  return (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z') ||
         cp == U'\'' || cp == 0x2019;
}

struct Word {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string normalized;
};

std::vector<Word> source_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t start = std::string_view::npos;
  std::size_t end = 0;
  utf8::for_each(text, [&](char32_t cp, std::size_t pos, std::size_t len) {
    if (src_word_char(cp)) {
      if (start == std::string_view::npos) start = pos;
      end = pos + len;
    } else if (start != std::string_view::npos) {
      words.push_back({start, end,
                       normalize_src_word(text.substr(start, end - start))});
      start = std::string_view::npos;
    }
  });
  if (start != std::string_view::npos) {
    words.push_back({start, end,
                     normalize_src_word(text.substr(start, end - start))});
  }
  return words;
}

}  // namespace

std::string normalize_src_word(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  utf8::for_each(word, [&](char32_t cp, std::size_t pos, std::size_t len) {
    if (cp == 0x2019) {
      out.push_back('\'');
    } else if (cp >= U'A' && cp <= U'Z') {
      out.push_back(static_cast<char>(cp - U'A' + U'a'));
    } else {
      out.append(word.substr(pos, len));
    }
  });
  return out;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon: " + path);
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos
                                            : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": expected src<TAB>tgt<TAB>concept_id");
    }
    const std::string src = line.substr(0, t1);
    const std::string tgt = line.substr(t1 + 1, t2 - t1 - 1);
    std::uint32_t concept_id;
    try {
      concept_id = static_cast<std::uint32_t>(std::stoul(line.substr(t2 + 1)));
    } catch (const std::exception&) {
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": bad concept id");
    }
    if (src.empty() || tgt.empty()) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": empty term");
    }
    lex.add(src, tgt, concept_id);
  }
  return lex;
}

void Lexicon::add(std::string src_term, std::string tgt_term,
                  std::uint32_t concept_id) {
  const std::size_t idx = entries_.size();
  entries_.push_back({std::move(src_term), std::move(tgt_term), concept_id});
  const Entry& e = entries_.back();

  concept_space_ = std::max(concept_space_,
                            static_cast<std::size_t>(concept_id) + 1);

  // Normalize the source key: lowercase words joined by single spaces.
  std::string key;
  for (const auto& w : source_words(e.src_term)) {
    if (!key.empty()) key.push_back(' ');
    key += w.normalized;
  }
  if (!key.empty()) {
    by_src_[key] = idx;
    max_src_words_ = std::max(
        max_src_words_,
        static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1);
  }

  const auto first = utf8::decode(e.tgt_term, 0);
  if (first.len > 0) {
    auto& bucket = tgt_buckets_[first.cp];
    bucket.push_back(idx);
    std::sort(bucket.begin(), bucket.end(), [this](std::size_t a, std::size_t b) {
      if (entries_[a].tgt_term.size() != entries_[b].tgt_term.size()) {
        return entries_[a].tgt_term.size() > entries_[b].tgt_term.size();
      }
      return a < b;
    });
  }
  by_tgt_exact_[e.tgt_term] = idx;
}

std::vector<Lexicon::Match> Lexicon::match_src(std::string_view text) const {
  std::vector<Match> matches;
  const auto words = source_words(text);
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t taken = 0;
    std::size_t found = 0;
    std::string key;
    std::string best_key;
    for (std::size_t n = 0; n < max_src_words_ && i + n < words.size(); ++n) {
      if (n > 0) key.push_back(' ');
      key += words[i + n].normalized;
      if (by_src_.count(key)) {
        taken = n + 1;
        best_key = key;
      }
    }
    if (taken > 0) {
      const std::size_t idx = by_src_.at(best_key);
      matches.push_back({words[i].begin, words[i + taken - 1].end,
                         entries_[idx].concept_id, &entries_[idx]});
      i += taken;
    } else {
      ++i;
    }
  }
  return matches;
}

std::vector<Lexicon::Match> Lexicon::match_tgt(std::string_view text) const {
  std::vector<Match> matches;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto d = utf8::decode(text, pos);
    const std::size_t len = d.len > 0 ? static_cast<std::size_t>(d.len) : 1;
    if (d.len > 0) {
      const auto bucket = tgt_buckets_.find(d.cp);
      if (bucket != tgt_buckets_.end()) {
        bool matched = false;
        for (std::size_t idx : bucket->second) {
          const std::string& term = entries_[idx].tgt_term;
          if (text.substr(pos, term.size()) == term) {
            matches.push_back({pos, pos + term.size(),
                               entries_[idx].concept_id, &entries_[idx]});
            pos += term.size();
            matched = true;
            break;
          }
        }
        if (matched) continue;
      }
    }
    pos += len;
  }
  return matches;
}

std::vector<std::uint32_t> Lexicon::concepts(std::string_view text) const {
  std::vector<std::uint32_t> ids;
  for (const auto& m : match_src(text)) ids.push_back(m.concept_id);
  for (const auto& m : match_tgt(text)) ids.push_back(m.concept_id);
  return ids;
}

std::optional<std::string> Lexicon::translate_src(std::string_view src_term) const {
  std::string key;
  for (const auto& w : source_words(src_term)) {
    if (!key.empty()) key.push_back(' ');
    key += w.normalized;
  }
  const auto it = by_src_.find(key);
  if (it == by_src_.end()) return std::nullopt;
  return entries_[it->second].tgt_term;
}

std::optional<std::string> Lexicon::translate_tgt(std::string_view tgt_term) const {
  const auto it = by_tgt_exact_.find(std::string(tgt_term));
  if (it == by_tgt_exact_.end()) return std::nullopt;
  return entries_[it->second].src_term;
}

}  // namespace csw
