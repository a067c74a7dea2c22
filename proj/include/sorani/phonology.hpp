#pragma once

// Context-driven disambiguation of AbO words: vowel/consonant readings of the
// dual-use letters, double-waw merging, and Bizroke recovery. Also a syllabifier
// over the resulting phoneme units.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sorani/alphabet.hpp"

namespace sorani {

/// One phoneme of a resolved word.
struct Unit {
  std::u32string source;   // AbO codepoints it came from; empty for inserted units
  std::u32string phoneme;  // LbO spelling
  CharClass role = CharClass::Consonant;  // Vowel, Consonant, or Bizroke

  friend bool operator==(const Unit&, const Unit&) = default;
};

constexpr bool is_nucleus(CharClass role) {
  return role == CharClass::Vowel || role == CharClass::Bizroke;
}

/// A word as a sequence of phonemes with roles. Hamza never appears in `units`.
/// No two adjacent units are vowels whenever the source word has no adjacent vowel letters.
struct ResolvedWord {
  std::vector<Unit> units;
  std::u32string source_word;

  std::u32string render() const {
    std::u32string out;
    for (const Unit& u : units) out += u.phoneme;
    return out;
  }

  /// "CVC"-style consonant/vowel skeleton; Bizroke counts as a vowel.
  std::string skeleton() const {
    std::string out;
    out.reserve(units.size());
    for (const Unit& u : units) out.push_back(is_nucleus(u.role) ? 'V' : 'C');
    return out;
  }

  friend bool operator==(const ResolvedWord&, const ResolvedWord&) = default;
};

constexpr bool is_dual_use(char32_t c) { return c == cp::kWaw || c == cp::kYeh; }

/// Resolves every waw and yeh of a normalized AbO word to its vowel or consonant
/// reading in a single left-to-right pass over both letters:
///   - a word that is just the letter reads as the consonant;
///   - right after hamza it is the vowel (hamza only carries word-initial vowels);
///   - word-initially, or after a vowel, it is the consonant;
///   - otherwise it is the consonant before a vowel letter and the vowel elsewhere.
/// A letter resolved as a vowel counts as a vowel for the letters after it.
/// Hamza is dropped from the result.
inline ResolvedWord resolve_dual_use(std::u32string_view word,
                                     const AlphabetTable& table = AlphabetTable::standard()) {
  ResolvedWord rw;
  rw.source_word = word;

  auto push_letter = [&](char32_t c, CharClass role) {
    rw.units.push_back({std::u32string(1, c), table.map_char(c, role, Direction::ArabicToLatin), role});
  };

  if (word.size() == 1 && is_dual_use(word[0])) {
    push_letter(word[0], CharClass::Consonant);
    return rw;
  }

  const std::size_t n = word.size();
  std::vector<bool> vowel_at(n, false);
  auto is_vowel_letter = [&](char32_t c) {
    return table.classify(c, Orthography::ArabicBased) == CharClass::Vowel;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const char32_t c = word[i];
    if (c == cp::kHamza) {
      if (i + 1 < n && is_dual_use(word[i + 1])) {
        push_letter(word[i + 1], CharClass::Vowel);
        vowel_at[i + 1] = true;
        ++i;
      }
      continue;
    }
    if (is_dual_use(c)) {
      bool vowel;
      if (i == 0 || vowel_at[i - 1]) {
        vowel = false;
      } else if (i + 1 < n) {
        vowel = !is_vowel_letter(word[i + 1]);
      } else {
        vowel = true;
      }
      push_letter(c, vowel ? CharClass::Vowel : CharClass::Consonant);
      vowel_at[i] = vowel;
      continue;
    }
    const bool vowel = is_vowel_letter(c);
    vowel_at[i] = vowel;
    push_letter(c, vowel ? CharClass::Vowel : CharClass::Consonant);
  }
  return rw;
}

namespace detail {

inline bool is_waw_reading(const Unit& u, std::u32string_view phoneme, CharClass role) {
  return u.source.size() == 1 && u.source[0] == cp::kWaw && u.phoneme == phoneme && u.role == role;
}

inline bool is_sonorant(const Unit& u) {
  static constexpr std::u32string_view kSonorants = U"lłmnrř";
  return u.role == CharClass::Consonant && u.phoneme.size() == 1 &&
         kSonorants.find(u.phoneme[0]) != std::u32string_view::npos;
}

inline bool is_glide(const Unit& u) { return u.phoneme == U"y" || u.phoneme == U"w"; }

}  // namespace detail

/// Merges each (u, w) pair read from a double waw into a single û. A w is
/// inserted between û and a following vowel.
inline ResolvedWord merge_double_waw(ResolvedWord rw) {
  std::vector<Unit> out;
  out.reserve(rw.units.size() + 1);
  const auto& units = rw.units;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i + 1 < units.size() && detail::is_waw_reading(units[i], U"u", CharClass::Vowel) &&
        detail::is_waw_reading(units[i + 1], U"w", CharClass::Consonant)) {
      out.push_back({std::u32string(2, cp::kWaw), std::u32string(1, cp::kLongU), CharClass::Vowel});
      ++i;
      if (i + 1 < units.size() && units[i + 1].role == CharClass::Vowel)
        out.push_back({U"", U"w", CharClass::Consonant});
      continue;
    }
    out.push_back(units[i]);
  }
  rw.units = std::move(out);
  return rw;
}

/// Recovers at most one Bizroke, and only in the first syllable:
///   - a word opening with two consonants gets "i" between them unless the second is y or w;
///   - a one-vowel word ending in obstruent (or glide) + liquid/nasal gets "i" inside
///     that final cluster, which is otherwise not a possible coda.
inline ResolvedWord insert_bizroke(ResolvedWord rw) {
  auto& units = rw.units;
  const Unit bizroke{U"", U"i", CharClass::Bizroke};
  const std::size_t n = units.size();

  if (n >= 2 && units[0].role == CharClass::Consonant && units[1].role == CharClass::Consonant) {
    if (!detail::is_glide(units[1])) units.insert(units.begin() + 1, bizroke);
    return rw;
  }

  const auto vowels = std::count_if(units.begin(), units.end(),
                                    [](const Unit& u) { return u.role == CharClass::Vowel; });
  if (vowels == 1 && n >= 3 && units[n - 3].role == CharClass::Vowel &&
      units[n - 2].role == CharClass::Consonant && detail::is_sonorant(units[n - 1]) &&
      !detail::is_sonorant(units[n - 2])) {
    units.insert(units.begin() + static_cast<std::ptrdiff_t>(n - 1), bizroke);
  }
  return rw;
}

/// The whole disambiguation chain for one normalized AbO word.
inline ResolvedWord resolve_word(std::u32string_view normalized_word,
                                 const AlphabetTable& table = AlphabetTable::standard()) {
  return insert_bizroke(merge_double_waw(resolve_dual_use(normalized_word, table)));
}

/// Builds units straight from an LbO word, where every letter is unambiguous.
inline ResolvedWord units_from_latin(std::u32string_view word,
                                     const AlphabetTable& table = AlphabetTable::standard()) {
  ResolvedWord rw;
  for (char32_t c : word) {
    const char32_t lower = unicode::to_lower(c);
    CharClass role = table.classify(lower, Orthography::LatinBased);
    if (role != CharClass::Vowel && role != CharClass::Bizroke) role = CharClass::Consonant;
    rw.units.push_back({U"", std::u32string(1, lower), role});
  }
  return rw;
}

struct Syllable {
  std::size_t begin = 0;  // unit index range [begin, end)
  std::size_t end = 0;
  std::string shape;  // one of V, VC, VCC, CV, CVC, CVCC

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Splits units into syllables of shape V, VC, VCC, CV, CVC or CVCC, giving each
/// syllable an onset whenever a consonant is available. Returns nullopt when no such
/// split exists: no vowel, adjacent vowels, or a cluster too long to divide.
inline std::optional<std::vector<Syllable>> syllabify(std::span<const Unit> units) {
  std::vector<std::size_t> nuclei;
  for (std::size_t i = 0; i < units.size(); ++i)
    if (is_nucleus(units[i].role)) nuclei.push_back(i);
  if (nuclei.empty() || nuclei.front() > 1 || units.size() - 1 - nuclei.back() > 2)
    return std::nullopt;
  for (std::size_t k = 1; k < nuclei.size(); ++k) {
    const std::size_t between = nuclei[k] - nuclei[k - 1] - 1;
    if (between == 0 || between > 3) return std::nullopt;
  }

  std::vector<Syllable> syllables;
  for (std::size_t k = 0; k < nuclei.size(); ++k) {
    Syllable s;
    s.begin = k == 0 ? 0 : nuclei[k] - 1;
    s.end = k + 1 < nuclei.size() ? nuclei[k + 1] - 1 : units.size();
    for (std::size_t i = s.begin; i < s.end; ++i) s.shape.push_back(is_nucleus(units[i].role) ? 'V' : 'C');
    syllables.push_back(std::move(s));
  }
  return syllables;
}

inline std::optional<std::vector<Syllable>> syllabify(const ResolvedWord& rw) {
  return syllabify(std::span<const Unit>(rw.units));
}

}  // namespace sorani
