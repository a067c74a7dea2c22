#pragma once

// Character inventory of the Arabic-based (AbO) and Latin-based (LbO)
// Sorani orthographies, their classification, and the grapheme mapping.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <unicode/uchar.h>

#include "sorani/unicode.hpp"

namespace sorani {

enum class Orthography { ArabicBased, LatinBased };

enum class Direction { ArabicToLatin, LatinToArabic };

constexpr Orthography source_orthography(Direction d) {
  return d == Direction::ArabicToLatin ? Orthography::ArabicBased : Orthography::LatinBased;
}

constexpr Orthography target_orthography(Direction d) {
  return d == Direction::ArabicToLatin ? Orthography::LatinBased : Orthography::ArabicBased;
}

enum class CharClass { Vowel, Consonant, DualUse, Auxiliary, Bizroke, NoEquivalent, Separator, Foreign };

constexpr std::string_view to_string(CharClass c) {
  switch (c) {
    case CharClass::Vowel: return "Vowel";
    case CharClass::Consonant: return "Consonant";
    case CharClass::DualUse: return "DualUse";
    case CharClass::Auxiliary: return "Auxiliary";
    case CharClass::Bizroke: return "Bizroke";
    case CharClass::NoEquivalent: return "NoEquivalent";
    case CharClass::Separator: return "Separator";
    case CharClass::Foreign: return "Foreign";
  }
  return "?";
}

namespace cp {
inline constexpr char32_t kWaw = U'و';
inline constexpr char32_t kYeh = U'ی';         // Farsi yeh, the Kurdish form
inline constexpr char32_t kHamza = U'ئ';       // yeh with hamza above, the vowel carrier
inline constexpr char32_t kArabicYeh = U'ي';
inline constexpr char32_t kArabicKaf = U'ك';
inline constexpr char32_t kKeheh = U'ک';
inline constexpr char32_t kHeh = U'ه';
inline constexpr char32_t kAe = U'ە';
inline constexpr char32_t kZwnj = U'\u200C';
inline constexpr char32_t kEnDash = U'\u2013';
inline constexpr char32_t kArabicComma = U'،';
inline constexpr char32_t kArabicSemicolon = U'؛';
inline constexpr char32_t kArabicQuestion = U'؟';
inline constexpr char32_t kArabicIndicZero = U'٠';
inline constexpr char32_t kExtendedArabicIndicZero = U'۰';

inline constexpr char32_t kBizroke = U'i';
inline constexpr char32_t kLongU = U'û';
inline constexpr char32_t kLongI = U'î';
}  // namespace cp

/// Raised by map_char when a dual-use letter reaches the mapper without a role.
class UnresolvedDualUse : public std::logic_error {
 public:
  explicit UnresolvedDualUse(char32_t c)
      : std::logic_error("dual-use letter " + unicode::codepoint_label(c) +
                         " mapped without a resolved vowel/consonant role"),
        codepoint_(c) {}

  char32_t codepoint() const noexcept { return codepoint_; }

 private:
  char32_t codepoint_;
};

class OverrideError : public std::runtime_error {
 public:
  OverrideError(std::size_t line, const std::string& what)
      : std::runtime_error("override line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One row of the mapping table. Dual-use letters appear twice, once per reading.
struct AlphabetEntry {
  std::u32string abo;
  std::u32string lbo;
  CharClass cls;
};

/// One line of an override file: `<source> TAB <target>`.
struct OverrideRule {
  std::u32string source;
  std::u32string target;
  std::size_t line = 0;
};

namespace detail {

inline bool is_arabic_script(char32_t c) {
  return (c >= 0x0600 && c <= 0x06FF) || (c >= 0x0750 && c <= 0x077F) ||
         (c >= 0xFB50 && c <= 0xFDFF) || (c >= 0xFE70 && c <= 0xFEFF);
}

inline bool is_ascii_symbol(char32_t c) {
  return c < 0x80 && (c == U'$' || c == U'+' || c == U'<' || c == U'=' || c == U'>' || c == U'^' ||
                      c == U'`' || c == U'|' || c == U'~');
}

inline std::vector<AlphabetEntry> standard_entries() {
  using enum CharClass;
  return {
      // Letters with a one-to-one counterpart.
      {U"ا", U"a", Vowel},             // alef
      {U"ە", U"e", Vowel},             // ae
      {U"ێ", U"ê", Vowel},        // yeh with small v -> ê
      {U"ۆ", U"o", Vowel},             // waw with small v
      {U"ب", U"b", Consonant},
      {U"ج", U"c", Consonant},
      {U"چ", U"ç", Consonant},    // tcheh -> ç
      {U"د", U"d", Consonant},
      {U"ف", U"f", Consonant},
      {U"گ", U"g", Consonant},
      {U"ه", U"h", Consonant},
      {U"ژ", U"j", Consonant},
      {U"ک", U"k", Consonant},
      {U"ل", U"l", Consonant},
      {U"ڵ", U"ł", Consonant},    // lam with small v -> ł
      {U"م", U"m", Consonant},
      {U"ن", U"n", Consonant},
      {U"پ", U"p", Consonant},
      {U"ق", U"q", Consonant},
      {U"ر", U"r", Consonant},
      {U"ڕ", U"ř", Consonant},    // reh with small v below -> ř
      {U"س", U"s", Consonant},
      {U"ش", U"ş", Consonant},    // sheen -> ş
      {U"ت", U"t", Consonant},
      {U"ڤ", U"v", Consonant},
      {U"خ", U"x", Consonant},
      {U"ز", U"z", Consonant},
      // Dual-use letters, one row per reading.
      {U"و", U"w", DualUse},
      {U"و", U"u", DualUse},
      {U"ی", U"y", DualUse},
      {U"ی", U"î", DualUse},
      {U"وو", U"û", Vowel},  // double waw -> û
      {U"", U"i", Bizroke},
      {U"ئ", U"", Auxiliary},
      // Letters without a native Latin counterpart.
      {U"ح", U"ḧ", NoEquivalent},  // hah -> ḧ
      {U"غ", U"ẍ", NoEquivalent},  // ghain -> ẍ
      {U"ع", U"'", NoEquivalent},       // ain -> apostrophe
      {U"ط", U"t", NoEquivalent},       // Arabic loan letters, one-way
      {U"ص", U"s", NoEquivalent},
      {U"ض", U"z", NoEquivalent},
      {U"ظ", U"z", NoEquivalent},
      {U"ث", U"s", NoEquivalent},
      {U"ذ", U"z", NoEquivalent},
  };
}

// Latin letters whose reverse mapping is defined by a NoEquivalent row.
inline constexpr std::u32string_view kReversibleNoEquivalent = U"ḧẍ'";

inline bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }

}  // namespace detail

/// Whitespace, punctuation, digits, and invisible format controls. Shared by both orthographies.
inline bool is_separator(char32_t c) {
  if (unicode::is_whitespace(c)) return true;
  const auto u = static_cast<UChar32>(c);
  if (u_isdigit(u) || u_ispunct(u) || detail::is_ascii_symbol(c)) return true;
  return u_charType(u) == U_FORMAT_CHAR;
}

/// Unifies Unicode assignment variants in AbO text: Arabic yeh and kaf become their
/// Kurdish forms, and zero-width non-joiners disappear. An en dash right after a
/// word-final heh is a consonant-h marker and is consumed as well. Idempotent.
inline std::u32string normalize_abo(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (c == cp::kArabicYeh) {
      out.push_back(cp::kYeh);
    } else if (c == cp::kArabicKaf) {
      out.push_back(cp::kKeheh);
    } else if (c == cp::kZwnj) {
      continue;
    } else if (c == cp::kEnDash && !out.empty() && out.back() == cp::kHeh) {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] == cp::kZwnj) ++j;
      if (j < text.size() && detail::is_letter(text[j])) out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

/// Immutable mapping table for both directions, optionally amended by overrides.
class AlphabetTable {
 public:
  AlphabetTable() : AlphabetTable(detail::standard_entries()) {}

  static const AlphabetTable& standard() {
    static const AlphabetTable table;
    return table;
  }

  /// A copy of this table with `rules` applied in order; later rules shadow earlier ones.
  AlphabetTable with_overrides(std::span<const OverrideRule> rules) const {
    AlphabetTable copy = *this;
    for (const OverrideRule& rule : rules) copy.apply(rule);
    return copy;
  }

  std::span<const AlphabetEntry> entries() const { return entries_; }
  std::span<const OverrideRule> overrides() const { return overrides_; }

  CharClass classify(char32_t c, Orthography o) const {
    if (o == Orthography::ArabicBased) {
      if (c == cp::kWaw || c == cp::kYeh) return CharClass::DualUse;
      if (c == cp::kHamza) return CharClass::Auxiliary;
      if (auto it = abo_class_.find(c); it != abo_class_.end()) return it->second;
    } else {
      const char32_t lower = unicode::to_lower(c);
      if (lower == cp::kBizroke) return CharClass::Bizroke;
      if (auto it = lbo_class_.find(lower); it != lbo_class_.end()) return it->second;
    }
    return is_separator(c) ? CharClass::Separator : CharClass::Foreign;
  }

  /// True for codepoints that belong inside a word of orthography `o`.
  bool is_alphabet(char32_t c, Orthography o) const {
    switch (classify(c, o)) {
      case CharClass::Separator:
      case CharClass::Foreign: return false;
      default: return true;
    }
  }

  /// Target-orthography rendering of one source codepoint. `role` matters only for
  /// AbO dual-use letters, where it must be Vowel or Consonant.
  std::u32string map_char(char32_t c, CharClass role, Direction d) const {
    if (d == Direction::ArabicToLatin) {
      if (c == cp::kWaw || c == cp::kYeh) {
        if (role != CharClass::Vowel && role != CharClass::Consonant) throw UnresolvedDualUse(c);
        const bool vowel = role == CharClass::Vowel;
        if (c == cp::kWaw) return vowel ? U"u" : U"w";
        return vowel ? std::u32string(1, cp::kLongI) : U"y";
      }
      if (c == cp::kHamza) return {};
      if (auto it = abo_to_lbo_.find(c); it != abo_to_lbo_.end()) return it->second;
      return std::u32string(1, map_separator(c, d));
    }
    const char32_t lower = unicode::to_lower(c);
    if (auto it = lbo_to_abo_.find(lower); it != lbo_to_abo_.end()) return it->second;
    return std::u32string(1, map_separator(c, d));
  }

  /// Whole-word override for an already normalized (AbO) or case-folded (LbO) word.
  const std::u32string* word_exception(std::u32string_view word, Direction d) const {
    const auto& table = d == Direction::ArabicToLatin ? ar2la_words_ : la2ar_words_;
    auto it = table.find(std::u32string(word));
    return it == table.end() ? nullptr : &it->second;
  }

  /// Digits and the three Arabic punctuation marks; everything else is unchanged.
  static char32_t map_separator(char32_t c, Direction d) {
    if (d == Direction::ArabicToLatin) {
      if (c >= cp::kArabicIndicZero && c <= cp::kArabicIndicZero + 9)
        return U'0' + (c - cp::kArabicIndicZero);
      if (c >= cp::kExtendedArabicIndicZero && c <= cp::kExtendedArabicIndicZero + 9)
        return U'0' + (c - cp::kExtendedArabicIndicZero);
      switch (c) {
        case cp::kArabicComma: return U',';
        case cp::kArabicSemicolon: return U';';
        case cp::kArabicQuestion: return U'?';
        default: return c;
      }
    }
    if (c >= U'0' && c <= U'9') return cp::kExtendedArabicIndicZero + (c - U'0');
    switch (c) {
      case U',': return cp::kArabicComma;
      case U';': return cp::kArabicSemicolon;
      case U'?': return cp::kArabicQuestion;
      default: return c;
    }
  }

 private:
  explicit AlphabetTable(std::vector<AlphabetEntry> entries) : entries_(std::move(entries)) {
    for (const AlphabetEntry& e : entries_) {
      switch (e.cls) {
        case CharClass::Vowel:
        case CharClass::Consonant:
          if (e.abo.size() == 1) {
            abo_to_lbo_[e.abo[0]] = e.lbo;
            abo_class_[e.abo[0]] = e.cls;
          }
          lbo_to_abo_[e.lbo[0]] = e.abo;
          lbo_class_[e.lbo[0]] = e.cls;
          break;
        case CharClass::DualUse:
          lbo_to_abo_[e.lbo[0]] = e.abo;
          lbo_class_[e.lbo[0]] = e.lbo[0] == U'w' || e.lbo[0] == U'y' ? CharClass::Consonant
                                                                       : CharClass::Vowel;
          break;
        case CharClass::Bizroke:
          lbo_to_abo_[e.lbo[0]] = e.abo;
          break;
        case CharClass::NoEquivalent:
          abo_to_lbo_[e.abo[0]] = e.lbo;
          abo_class_[e.abo[0]] = e.cls;
          if (e.lbo.size() == 1 && detail::kReversibleNoEquivalent.find(e.lbo[0]) !=
                                       std::u32string_view::npos) {
            lbo_to_abo_[e.lbo[0]] = e.abo;
            lbo_class_[e.lbo[0]] = CharClass::Consonant;
          }
          break;
        default:
          break;
      }
    }
  }

  void apply(const OverrideRule& rule) {
    if (rule.source.empty()) throw OverrideError(rule.line, "empty source");
    const bool arabic = detail::is_arabic_script(rule.source[0]);
    if (rule.source.size() > 1) {
      if (arabic) {
        ar2la_words_[normalize_abo(rule.source)] = rule.target;
      } else {
        std::u32string folded;
        for (char32_t c : rule.source) folded.push_back(unicode::to_lower(c));
        la2ar_words_[folded] = rule.target;
      }
    } else if (arabic) {
      const char32_t c = rule.source[0];
      if (c == cp::kWaw || c == cp::kYeh || c == cp::kHamza)
        throw OverrideError(rule.line, "dual-use letters and hamza are resolved by context");
      abo_to_lbo_[c] = rule.target;
      abo_class_.try_emplace(c, CharClass::NoEquivalent);
    } else {
      const char32_t c = unicode::to_lower(rule.source[0]);
      if (is_separator(c) && !lbo_to_abo_.contains(c))
        throw OverrideError(rule.line, "separators cannot be remapped");
      lbo_to_abo_[c] = rule.target;
      if (c != cp::kBizroke) lbo_class_.try_emplace(c, CharClass::Consonant);
    }
    overrides_.push_back(rule);
  }

  std::vector<AlphabetEntry> entries_;
  std::vector<OverrideRule> overrides_;
  std::unordered_map<char32_t, std::u32string> abo_to_lbo_;
  std::unordered_map<char32_t, CharClass> abo_class_;
  std::unordered_map<char32_t, std::u32string> lbo_to_abo_;
  std::unordered_map<char32_t, CharClass> lbo_class_;
  std::unordered_map<std::u32string, std::u32string> ar2la_words_;
  std::unordered_map<std::u32string, std::u32string> la2ar_words_;
};

inline CharClass classify(char32_t c, Orthography o) {
  return AlphabetTable::standard().classify(c, o);
}

inline std::u32string map_char(char32_t c, CharClass role, Direction d) {
  return AlphabetTable::standard().map_char(c, role, d);
}

/// Parses override rules. Blank lines and `#` comments are skipped.
inline std::vector<OverrideRule> parse_overrides(std::string_view text) {
  std::vector<OverrideRule> rules;
  text = unicode::strip_bom(text);
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw OverrideError(line_no, "expected <source> TAB <target>");
    std::string_view source = line.substr(0, tab);
    std::string_view target = line.substr(tab + 1);
    while (!source.empty() && source.front() == ' ') source.remove_prefix(1);
    while (!source.empty() && source.back() == ' ') source.remove_suffix(1);
    while (!target.empty() && (target.back() == ' ' || target.back() == '\t')) target.remove_suffix(1);
    if (source.empty()) throw OverrideError(line_no, "empty source");
    try {
      rules.push_back({unicode::decode_utf8(source), unicode::decode_utf8(target), line_no});
    } catch (const unicode::EncodingError&) {
      throw OverrideError(line_no, "invalid UTF-8");
    }
  }
  return rules;
}

inline std::vector<OverrideRule> load_overrides(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open override file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_overrides(buffer.str());
}

}  // namespace sorani
