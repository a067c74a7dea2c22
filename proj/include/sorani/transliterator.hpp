#pragma once

// Word- and text-level transliteration between the two orthographies.

#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/uchar.h>

#include "sorani/alphabet.hpp"
#include "sorani/phonology.hpp"
#include "sorani/unicode.hpp"

namespace sorani {

enum class TokenKind { Word, Separator, Foreign };

constexpr std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Word: return "Word";
    case TokenKind::Separator: return "Separator";
    case TokenKind::Foreign: return "Foreign";
  }
  return "?";
}

/// Byte offsets [begin, end) into the UTF-8 source.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct Token {
  TokenKind kind = TokenKind::Word;
  std::u32string text;
  ByteSpan span;

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

struct Decoded {
  char32_t c;
  std::size_t begin;
  std::size_t end;
};

inline std::vector<Decoded> decode_with_offsets(std::string_view bytes) {
  std::vector<Decoded> out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t begin = pos;
    const char32_t c = unicode::next_codepoint(bytes, pos);
    out.push_back({c, begin, pos});
  }
  return out;
}

inline bool is_abo_word_letter(char32_t c, const AlphabetTable& table) {
  return table.is_alphabet(c, Orthography::ArabicBased) || c == cp::kArabicYeh || c == cp::kArabicKaf;
}

inline bool is_lbo_word_letter(char32_t c, const AlphabetTable& table) {
  return table.is_alphabet(c, Orthography::LatinBased);
}

}  // namespace detail

/// Splits UTF-8 text into maximal runs of separators (whitespace, punctuation, digits)
/// and non-separators. A non-separator run is a Word when every codepoint belongs to
/// the alphabet of `o`, and Foreign otherwise. Spans are contiguous and exhaustive.
/// Throws unicode::EncodingError on malformed UTF-8.
inline std::vector<Token> tokenize(std::string_view text, Orthography o,
                                   const AlphabetTable& table = AlphabetTable::standard()) {
  const auto cps = detail::decode_with_offsets(text);
  const std::size_t n = cps.size();
  std::vector<bool> separator(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    const char32_t c = cps[i].c;
    bool sep = table.classify(c, o) == CharClass::Separator;
    if (o == Orthography::ArabicBased) {
      if (c == cp::kZwnj) {
        sep = i == 0 || separator[i - 1];
      } else if (c == cp::kEnDash) {
        // Consonant-h marker: heh + optional ZWNJ + dash at the end of a word.
        std::size_t prev = i;
        while (prev > 0 && cps[prev - 1].c == cp::kZwnj) --prev;
        std::size_t next = i + 1;
        while (next < n && cps[next].c == cp::kZwnj) ++next;
        const bool after_heh = prev > 0 && cps[prev - 1].c == cp::kHeh && !separator[prev - 1];
        const bool word_final = next == n || !detail::is_letter(cps[next].c);
        sep = !(after_heh && word_final);
      }
    } else if (c == U'\'') {
      // Apostrophe spells ain only when a letter follows.
      sep = !(i + 1 < n && cps[i + 1].c != U'\'' && detail::is_lbo_word_letter(cps[i + 1].c, table));
    }
    separator[i] = sep;
  }

  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && separator[j] == separator[i]) ++j;
    Token tok;
    tok.span = {cps[i].begin, cps[j - 1].end};
    for (std::size_t k = i; k < j; ++k) tok.text.push_back(cps[k].c);
    if (separator[i]) {
      tok.kind = TokenKind::Separator;
    } else if (o == Orthography::ArabicBased) {
      const bool all_letters = std::all_of(tok.text.begin(), tok.text.end(), [&](char32_t c) {
        return detail::is_abo_word_letter(c, table) || c == cp::kZwnj || c == cp::kEnDash;
      });
      tok.kind = all_letters ? TokenKind::Word : TokenKind::Foreign;
    } else {
      auto letters = [&](std::u32string_view s) {
        return std::all_of(s.begin(), s.end(),
                           [&](char32_t c) { return detail::is_lbo_word_letter(c, table); });
      };
      // Decomposed accents (e + U+0302) still spell alphabet letters.
      tok.kind = letters(tok.text) || letters(unicode::nfc(tok.text)) ? TokenKind::Word
                                                                        : TokenKind::Foreign;
    }
    tokens.push_back(std::move(tok));
    i = j;
  }
  return tokens;
}

struct Options {
  bool digraphs = false;  // accept "ll" for ł and "rr" for ř in LbO input
};

struct Warning {
  ByteSpan span;
  std::string message;
};

struct Stats {
  std::size_t words = 0;
  std::size_t dual_use_resolutions = 0;
  std::size_t bizroke_insertions = 0;

  Stats& operator+=(const Stats& o) {
    words += o.words;
    dual_use_resolutions += o.dual_use_resolutions;
    bizroke_insertions += o.bizroke_insertions;
    return *this;
  }

  friend bool operator==(const Stats&, const Stats&) = default;
};

struct TransliterationResult {
  std::u32string output;
  std::vector<Warning> warnings;
  Stats stats;
};

/// Result of transliterating a single word.
struct WordOutcome {
  std::u32string output;
  std::vector<std::string> warnings;
  std::size_t dual_use_resolutions = 0;
  std::size_t bizroke_insertions = 0;
};

namespace detail {

inline std::string unknown_codepoint_warning(char32_t c) {
  return "unknown codepoint " + unicode::codepoint_label(c) + " copied verbatim";
}

// Vowel + waw + waw + consonant resolves to w,u although û and w,w+Bizroke readings also exist.
inline bool has_double_waw_ambiguity(const ResolvedWord& rw) {
  const auto& u = rw.units;
  for (std::size_t i = 1; i + 2 < u.size(); ++i) {
    if (u[i - 1].role == CharClass::Vowel && is_waw_reading(u[i], U"w", CharClass::Consonant) &&
        is_waw_reading(u[i + 1], U"u", CharClass::Vowel) && u[i + 2].role == CharClass::Consonant)
      return true;
  }
  return false;
}

}  // namespace detail

/// Stateless transliteration pipeline over an immutable alphabet table.
class Transliterator {
 public:
  Transliterator() : Transliterator(AlphabetTable::standard()) {}

  explicit Transliterator(AlphabetTable table, Options options = {})
      : table_(std::move(table)), options_(options) {}

  const AlphabetTable& table() const { return table_; }
  const Options& options() const { return options_; }

  /// AbO word -> LbO: normalize, resolve waw/yeh, merge double waw, recover Bizroke, map.
  WordOutcome ar2la(std::u32string_view word) const {
    WordOutcome outcome;
    const std::u32string normalized = normalize_abo(word);
    if (const auto* exception = table_.word_exception(normalized, Direction::ArabicToLatin)) {
      outcome.output = *exception;
      return outcome;
    }
    for (char32_t c : normalized) {
      if (!table_.is_alphabet(c, Orthography::ArabicBased))
        outcome.warnings.push_back(detail::unknown_codepoint_warning(c));
      if (is_dual_use(c)) ++outcome.dual_use_resolutions;
    }

    const ResolvedWord resolved = resolve_dual_use(normalized, table_);
    if (detail::has_double_waw_ambiguity(resolved))
      outcome.warnings.push_back("ambiguous double waw after a vowel; read as w+u");
    const ResolvedWord final_word = insert_bizroke(merge_double_waw(resolved));
    outcome.bizroke_insertions = static_cast<std::size_t>(
        std::count_if(final_word.units.begin(), final_word.units.end(),
                      [](const Unit& u) { return u.role == CharClass::Bizroke; }));

    if (!final_word.units.empty()) {
      const std::u32string& first = final_word.units.front().phoneme;
      if (first == U"ł") outcome.warnings.push_back("word begins with ł");
      if (first == U"ř") outcome.warnings.push_back("word-initial ř is conventionally written r");
    }
    outcome.output = final_word.render();
    return outcome;
  }

  /// LbO word -> AbO: case-fold, drop Bizroke and the glide after û, prefix hamza before an initial vowel, map.
  WordOutcome la2ar(std::u32string_view word) const {
    WordOutcome outcome;
    std::u32string folded;
    for (char32_t c : unicode::nfc(word)) folded.push_back(unicode::to_lower(c));
    if (options_.digraphs) folded = apply_digraphs(folded);
    if (const auto* exception = table_.word_exception(folded, Direction::LatinToArabic)) {
      outcome.output = *exception;
      return outcome;
    }

    bool first_letter = true;
    for (std::size_t i = 0; i < folded.size(); ++i) {
      const char32_t c = folded[i];
      const CharClass cls = table_.classify(c, Orthography::LatinBased);
      // The w between û and a vowel is not written.
      if (c == U'w' && i > 0 && folded[i - 1] == cp::kLongU && i + 1 < folded.size() &&
          table_.classify(folded[i + 1], Orthography::LatinBased) == CharClass::Vowel)
        continue;
      if (cls == CharClass::Bizroke) {
        outcome.output += table_.map_char(c, cls, Direction::LatinToArabic);
        continue;
      }
      if (cls == CharClass::Separator || cls == CharClass::Foreign) {
        outcome.warnings.push_back(detail::unknown_codepoint_warning(c));
        outcome.output.push_back(c);
        first_letter = false;
        continue;
      }
      if (first_letter && cls == CharClass::Vowel) outcome.output.push_back(cp::kHamza);
      first_letter = false;
      outcome.output += table_.map_char(c, cls, Direction::LatinToArabic);
    }
    if (outcome.output.find(std::u32string(3, cp::kWaw)) != std::u32string::npos)
      outcome.warnings.push_back("three waws in a row; the usual spelling may have two");
    return outcome;
  }

  std::u32string transliterate_word_ar2la(std::u32string_view word) const { return ar2la(word).output; }
  std::u32string transliterate_word_la2ar(std::u32string_view word) const { return la2ar(word).output; }

  /// Transliterates Word tokens, maps digits and punctuation in Separator tokens, and
  /// copies Foreign tokens verbatim with a warning. Warning spans are byte offsets
  /// into `text` shifted by `base_offset`.
  TransliterationResult transliterate_text(std::string_view text, Direction d,
                                           std::size_t base_offset = 0) const {
    TransliterationResult result;
    for (const Token& tok : tokenize(text, source_orthography(d), table_)) {
      const ByteSpan span{tok.span.begin + base_offset, tok.span.end + base_offset};
      switch (tok.kind) {
        case TokenKind::Word: {
          WordOutcome w = d == Direction::ArabicToLatin ? ar2la(tok.text) : la2ar(tok.text);
          result.output += w.output;
          ++result.stats.words;
          result.stats.dual_use_resolutions += w.dual_use_resolutions;
          result.stats.bizroke_insertions += w.bizroke_insertions;
          for (auto& message : w.warnings) result.warnings.push_back({span, std::move(message)});
          break;
        }
        case TokenKind::Separator:
          for (char32_t c : tok.text) result.output.push_back(AlphabetTable::map_separator(c, d));
          break;
        case TokenKind::Foreign:
          result.output += tok.text;
          result.warnings.push_back({span, "foreign token copied verbatim"});
          break;
      }
    }
    return result;
  }

  /// Line-at-a-time transliteration of a UTF-8 stream. A leading BOM is dropped and
  /// line endings are reproduced as read. Throws unicode::EncodingError with the
  /// offset relative to the start of the stream.
  Stats transliterate_stream(std::istream& in, std::ostream& out, Direction d,
                             const std::function<void(const Warning&)>& on_warning = {}) const {
    Stats stats;
    std::string line;
    std::size_t offset = 0;
    bool first = true;
    while (std::getline(in, line)) {
      const bool had_newline = !in.eof();
      std::string_view view = line;
      std::size_t line_offset = offset;
      if (first) {
        const std::string_view stripped = unicode::strip_bom(view);
        line_offset += view.size() - stripped.size();
        view = stripped;
        first = false;
      }
      TransliterationResult r;
      try {
        r = transliterate_text(view, d, line_offset);
      } catch (const unicode::EncodingError& e) {
        throw unicode::EncodingError(line_offset + e.offset());
      }
      out << unicode::encode_utf8(r.output);
      if (had_newline) out << '\n';
      stats += r.stats;
      if (on_warning)
        for (const Warning& w : r.warnings) on_warning(w);
      offset += line.size() + (had_newline ? 1 : 0);
    }
    return stats;
  }

 private:
  static std::u32string apply_digraphs(std::u32string_view word) {
    std::u32string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i + 1 < word.size() && word[i] == word[i + 1] && (word[i] == U'l' || word[i] == U'r')) {
        out.push_back(word[i] == U'l' ? U'ł' : U'ř');
        ++i;
      } else {
        out.push_back(word[i]);
      }
    }
    return out;
  }

  AlphabetTable table_;
  Options options_;
};

inline std::vector<Token> tokenize(std::u32string_view text, Orthography o,
                                   const AlphabetTable& table = AlphabetTable::standard()) {
  return tokenize(std::string_view(unicode::encode_utf8(text)), o, table);
}

inline std::u32string transliterate_word_ar2la(std::u32string_view word) {
  static const Transliterator engine;
  return engine.transliterate_word_ar2la(word);
}

inline std::u32string transliterate_word_la2ar(std::u32string_view word) {
  static const Transliterator engine;
  return engine.transliterate_word_la2ar(word);
}

inline TransliterationResult transliterate_text(std::string_view text, Direction d) {
  static const Transliterator engine;
  return engine.transliterate_text(text, d);
}

}  // namespace sorani
