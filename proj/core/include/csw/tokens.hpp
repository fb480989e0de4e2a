#pragma once

#include <cstdint>
#include <string_view>

namespace csw {

/// Counts the tokens a given language contributes to a piece of text
/// (which may mix languages). count("") is 0 and counting is additive over
/// concatenation except when a source-side word is split across the joint.
class TokenCounter {
 public:
  virtual ~TokenCounter() = default;
  virtual std::uint64_t count(std::string_view text,
                              std::string_view lang) const = 0;
};

/// Script-based counter: whitespace-delimited Latin words for en/ro/...,
/// one token per CJK ideograph for zh, one per grapheme cluster for bn
/// (base letters, skipping dependent signs). Any tokenizer can replace it
/// behind the TokenCounter interface.
class ScriptTokenCounter : public TokenCounter {
 public:
  std::uint64_t count(std::string_view text,
                      std::string_view lang) const override;
};

}  // namespace csw
