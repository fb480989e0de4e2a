#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "csw/corpus.hpp"
#include "csw/detector.hpp"
#include "csw/lexicon.hpp"
#include "csw/synthesis.hpp"

namespace csw {

/// Term-by-term translator over a bilingual lexicon. Deterministic and
/// offline; the test and desk-scale backend. Primary-to-secondary walks
/// source words (longest match first) and joins translations with spaces,
/// mapping terminal punctuation to the target script; the reverse direction
/// greedily matches target terms. Unknown material is kept verbatim.
class DictionaryTranslator : public Translator {
 public:
  DictionaryTranslator(const Lexicon& lexicon, LanguagePair pair);

  std::string translate(std::string_view text, std::string_view src_lang,
                        std::string_view tgt_lang) const override;

 private:
  const Lexicon* lexicon_;
  LanguagePair pair_;
};

/// Token-level generator selecting the k longest lexicon terms per sentence
/// (ties to the earliest occurrence). annotate() inserts " (translation)"
/// after each chosen term; replace() swaps the term for its translation.
/// Throws BackendError when the sentence has no lexicon matches.
class DictionaryTokenGenerator : public TokenCsGenerator {
 public:
  DictionaryTokenGenerator(const Lexicon& lexicon, LanguagePair pair,
                           std::size_t terms_per_sentence = 1);

  std::string annotate(std::string_view sentence,
                       std::string_view tgt_lang) const override;
  std::string replace(std::string_view sentence,
                      std::string_view tgt_lang) const override;

 private:
  std::vector<Lexicon::Match> pick_terms(std::string_view sentence,
                                         std::string_view tgt_lang) const;

  const Lexicon* lexicon_;
  LanguagePair pair_;
  std::size_t terms_per_sentence_;
};

/// Bag-of-concepts encoder: the vector counts lexicon concept ids found in
/// the text, so a sentence and its dictionary translation embed identically
/// (cosine 1) while concept-disjoint sentences are orthogonal. Dimension is
/// the lexicon's concept space.
class ConceptBagEncoder : public CrossLingualEncoder {
 public:
  explicit ConceptBagEncoder(const Lexicon& lexicon);

  std::vector<float> embed(std::string_view text) const override;
  std::size_t dimension() const override;

 private:
  const Lexicon* lexicon_;
};

}  // namespace csw
