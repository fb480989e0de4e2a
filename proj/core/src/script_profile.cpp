#include "csw/script_profile.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "csw/errors.hpp"

namespace csw {

namespace {

bool in_ranges(const std::vector<CodepointRange>& ranges, char32_t cp) {
  for (const auto& r : ranges) {
    if (r.contains(cp)) return true;
  }
  return false;
}

ScriptProfile make_en_zh() {
  ScriptProfile p;
  p.name = "en-zh";
  p.primary = {{U'A', U'Z'}, {U'a', U'z'}};
  p.secondary = {{0x4E00, 0x9FFF}};
  // CJK symbols/punctuation plus the fullwidth punctuation blocks,
  // excluding fullwidth alphanumerics (U+FF10..U+FF5A).
  p.secondary_neutral = {{0x3000, 0x303F}, {0xFF01, 0xFF0F},
                         {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40},
                         {0xFF5B, 0xFF65}};
  p.other_script = {{0x3040, 0x309F}, {0x30A0, 0x30FF}};
  return p;
}

ScriptProfile make_en_bn() {
  ScriptProfile p;
  p.name = "en-bn";
  p.primary = {{U'A', U'Z'}, {U'a', U'z'}};
  p.secondary = {{0x0980, 0x09FF}};
  p.secondary_neutral = {{0x0964, 0x0965}};  // danda, double danda
  p.other_script = {{0x3040, 0x309F}, {0x30A0, 0x30FF}};
  return p;
}

ScriptProfile make_en_ro() {
  // English and Romanian share the Latin script, so character counting has
  // no signal; both letter sets stay empty and tagging always consults the
  // sentence classifier.
  ScriptProfile p;
  p.name = "en-ro";
  p.other_script = {{0x3040, 0x309F}, {0x30A0, 0x30FF}};
  return p;
}

std::map<std::string, ScriptProfile, std::less<>>& registry() {
  static std::map<std::string, ScriptProfile, std::less<>> reg = [] {
    std::map<std::string, ScriptProfile, std::less<>> m;
    for (auto&& p : {make_en_zh(), make_en_bn(), make_en_ro()}) {
      m.emplace(p.name, p);
    }
    return m;
  }();
  return reg;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

char32_t parse_codepoint(const std::string& token, const std::string& path) {
  if (token.size() < 3 || (token[0] != 'U' && token[0] != 'u') ||
      token[1] != '+') {
    throw FormatError(path + ": expected U+XXXX codepoint, got \"" + token +
                      "\"");
  }
  char32_t cp = 0;
  for (std::size_t i = 2; i < token.size(); ++i) {
    const char c = token[i];
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else throw FormatError(path + ": bad hex digit in \"" + token + "\"");
    cp = cp * 16 + static_cast<char32_t>(digit);
  }
  if (cp > 0x10FFFF) throw FormatError(path + ": codepoint out of range");
  return cp;
}

std::vector<CodepointRange> parse_ranges(const std::string& value,
                                         const std::string& path) {
  std::vector<CodepointRange> ranges;
  std::string normalized = value;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream iss(normalized);
  std::string token;
  while (iss >> token) {
    const auto dots = token.find("..");
    CodepointRange r;
    if (dots == std::string::npos) {
      r.first = r.last = parse_codepoint(token, path);
    } else {
      r.first = parse_codepoint(token.substr(0, dots), path);
      r.last = parse_codepoint(token.substr(dots + 2), path);
    }
    if (r.last < r.first) {
      throw FormatError(path + ": descending range \"" + token + "\"");
    }
    ranges.push_back(r);
  }
  return ranges;
}

}  // namespace

CharClass ScriptProfile::classify(char32_t cp) const {
  if (in_ranges(primary, cp)) return CharClass::Primary;
  if (in_ranges(secondary, cp)) return CharClass::Secondary;
  if (in_ranges(secondary_neutral, cp)) return CharClass::SecondaryNeutral;
  if (in_ranges(other_script, cp)) return CharClass::OtherScript;
  return CharClass::Neutral;
}

void ScriptProfile::validate() const {
  if (name.empty()) throw ConfigError("script profile has no name");
  if (min_chars < 1) throw ConfigError(name + ": min_chars must be >= 1");
  for (const auto& pr : primary) {
    for (const auto& sr : secondary) {
      if (pr.first <= sr.last && sr.first <= pr.last) {
        throw ConfigError(name + ": primary and secondary ranges overlap");
      }
    }
  }
}

const ScriptProfile& ScriptProfile::resolve(std::string_view name) {
  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) {
    throw ConfigError("script profile not registered: " + std::string(name));
  }
  return it->second;
}

bool ScriptProfile::is_registered(std::string_view name) {
  std::lock_guard lock(registry_mutex());
  const auto& reg = registry();
  return reg.find(name) != reg.end();
}

void ScriptProfile::register_profile(ScriptProfile profile) {
  profile.validate();
  std::lock_guard lock(registry_mutex());
  registry()[profile.name] = std::move(profile);
}

ScriptProfile ScriptProfile::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile config: " + path);
  ScriptProfile p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "name") {
      p.name = value;
    } else if (key == "min_chars") {
      p.min_chars = std::stoi(value);
    } else if (key == "primary") {
      p.primary = parse_ranges(value, path);
    } else if (key == "secondary") {
      p.secondary = parse_ranges(value, path);
    } else if (key == "secondary_neutral") {
      p.secondary_neutral = parse_ranges(value, path);
    } else if (key == "other_script") {
      p.other_script = parse_ranges(value, path);
    } else {
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": unknown key \"" + key + "\"");
    }
  }
  p.validate();
  return p;
}

}  // namespace csw
