#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace csw {

/// How a codepoint counts when telling the pair's two languages apart.
///   Primary / Secondary   - letters of either side's script
///   SecondaryNeutral      - punctuation belonging to the secondary script
///                           (never counted, but can join token runs)
///   OtherScript           - a third script (e.g. kana); feeds the
///                           unrelated-segment filter
///   Neutral               - digits, ASCII punctuation, symbols, whitespace
enum class CharClass { Primary, Secondary, SecondaryNeutral, OtherScript, Neutral };

struct CodepointRange {
  char32_t first = 0;
  char32_t last = 0;

  bool contains(char32_t cp) const { return cp >= first && cp <= last; }
};

/// Script-discrimination rule for a language pair. Same-script pairs (en-ro)
/// keep both letter sets empty, which routes every sentence to the fallback
/// classifier.
struct ScriptProfile {
  std::string name;
  std::vector<CodepointRange> primary;
  std::vector<CodepointRange> secondary;
  std::vector<CodepointRange> secondary_neutral;
  std::vector<CodepointRange> other_script;
  int min_chars = 2;

  CharClass classify(char32_t cp) const;
  bool script_blind() const { return primary.empty() && secondary.empty(); }
  void validate() const;

  /// Look up a registered profile (built-ins: en-zh, en-bn, en-ro).
  /// Throws ConfigError for unknown names.
  static const ScriptProfile& resolve(std::string_view name);
  static bool is_registered(std::string_view name);

  /// Register a custom profile (replaces an existing one with the same name).
  static void register_profile(ScriptProfile profile);

  /// Load from a key = value config file. Range lists use U+XXXX..U+YYYY
  /// notation, separated by spaces or commas:
  ///
  ///   name = my-pair
  ///   min_chars = 2
  ///   primary = U+0041..U+005A, U+0061..U+007A
  ///   secondary = U+4E00..U+9FFF
  ///   secondary_neutral = U+3000..U+303F
  ///   other_script = U+3040..U+309F U+30A0..U+30FF
  static ScriptProfile load_file(const std::string& path);
};

}  // namespace csw
