#pragma once

// Word-level evaluation against a parallel gold corpus.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sorani/alphabet.hpp"
#include "sorani/phonology.hpp"
#include "sorani/transliterator.hpp"
#include "sorani/unicode.hpp"

namespace sorani {

struct CorpusPair {
  std::u32string abo;
  std::u32string lbo;
  std::size_t line = 0;  // 1-based line in the source files
};

struct ParallelCorpus {
  std::vector<CorpusPair> pairs;
  std::vector<std::string> source_files;
};

/// Line counts (or token counts on `line`) differ between the two sides.
class AlignmentError : public std::runtime_error {
 public:
  AlignmentError(std::size_t line, std::size_t expected, std::size_t found)
      : std::runtime_error("misaligned corpus at line " + std::to_string(line) + ": expected " +
                           std::to_string(expected) + ", found " + std::to_string(found)),
        line_(line),
        expected_(expected),
        found_(found) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t expected() const noexcept { return expected_; }
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t line_;
  std::size_t expected_;
  std::size_t found_;
};

namespace detail {

struct Line {
  std::string_view text;
  std::size_t offset;
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({line, pos});
    pos = eol + 1;
  }
  return lines;
}

inline std::vector<std::u32string> corpus_words(const Line& line, Orthography o, const AlphabetTable& table,
                                                std::size_t bom, const std::string& name) {
  std::vector<Token> tokens;
  try {
    tokens = tokenize(line.text, o, table);
  } catch (const unicode::EncodingError& e) {
    throw unicode::EncodingError(bom + line.offset + e.offset(), name);
  }
  std::vector<std::u32string> words;
  for (Token& tok : tokens)
    if (tok.kind != TokenKind::Separator) words.push_back(std::move(tok.text));
  return words;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace detail

/// Pairs up the AbO and LbO texts line by line and, within a line, word by word.
inline ParallelCorpus parse_corpus(std::string_view abo_text, std::string_view lbo_text,
                                   const AlphabetTable& table = AlphabetTable::standard(),
                                   const std::string& abo_name = "abo", const std::string& lbo_name = "lbo") {
  const std::string_view abo_body = unicode::strip_bom(abo_text);
  const std::string_view lbo_body = unicode::strip_bom(lbo_text);
  const std::size_t abo_bom = abo_text.size() - abo_body.size();
  const std::size_t lbo_bom = lbo_text.size() - lbo_body.size();
  const auto abo_lines = detail::split_lines(abo_body);
  const auto lbo_lines = detail::split_lines(lbo_body);

  ParallelCorpus corpus;
  const std::size_t common = std::min(abo_lines.size(), lbo_lines.size());
  for (std::size_t i = 0; i < common; ++i) {
    auto abo_words = detail::corpus_words(abo_lines[i], Orthography::ArabicBased, table, abo_bom, abo_name);
    auto lbo_words = detail::corpus_words(lbo_lines[i], Orthography::LatinBased, table, lbo_bom, lbo_name);
    if (abo_words.size() != lbo_words.size()) throw AlignmentError(i + 1, abo_words.size(), lbo_words.size());
    for (std::size_t k = 0; k < abo_words.size(); ++k)
      corpus.pairs.push_back({std::move(abo_words[k]), std::move(lbo_words[k]), i + 1});
  }
  if (abo_lines.size() != lbo_lines.size())
    throw AlignmentError(common + 1, abo_lines.size(), lbo_lines.size());
  return corpus;
}

inline ParallelCorpus load_corpus(const std::filesystem::path& abo_path, const std::filesystem::path& lbo_path,
                                  const AlphabetTable& table = AlphabetTable::standard()) {
  ParallelCorpus corpus = parse_corpus(detail::read_file(abo_path), detail::read_file(lbo_path), table,
                                       abo_path.string(), lbo_path.string());
  corpus.source_files = {abo_path.string(), lbo_path.string()};
  return corpus;
}

/// One `abo TAB lbo` word pair per line; blank lines are ignored.
inline ParallelCorpus parse_corpus_tsv(std::string_view text, const std::string& name = "tsv") {
  const std::string_view body = unicode::strip_bom(text);
  const std::size_t bom = text.size() - body.size();
  ParallelCorpus corpus;
  std::size_t line_no = 0;
  for (const auto& line : detail::split_lines(body)) {
    ++line_no;
    if (line.text.find_first_not_of(" \t") == std::string_view::npos) continue;
    const std::size_t tab = line.text.find('\t');
    if (tab == std::string_view::npos) throw AlignmentError(line_no, 2, 1);
    auto field = [&](std::string_view f, std::size_t at) {
      while (!f.empty() && f.front() == ' ') { f.remove_prefix(1); ++at; }
      while (!f.empty() && f.back() == ' ') f.remove_suffix(1);
      try {
        return unicode::decode_utf8(f);
      } catch (const unicode::EncodingError& e) {
        throw unicode::EncodingError(bom + line.offset + at + e.offset(), name);
      }
    };
    CorpusPair pair{field(line.text.substr(0, tab), 0), field(line.text.substr(tab + 1), tab + 1), line_no};
    if (pair.abo.empty() || pair.lbo.empty()) throw AlignmentError(line_no, 2, 1);
    corpus.pairs.push_back(std::move(pair));
  }
  corpus.source_files = {name};
  return corpus;
}

inline ParallelCorpus load_corpus_tsv(const std::filesystem::path& path) {
  return parse_corpus_tsv(detail::read_file(path), path.string());
}

struct CategoryReport {
  std::size_t total = 0;
  std::size_t correct = 0;

  std::size_t incorrect() const { return total - correct; }
  std::optional<double> precision() const {
    if (total == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(total);
  }

  CategoryReport& operator+=(const CategoryReport& o) {
    total += o.total;
    correct += o.correct;
    return *this;
  }

  friend bool operator==(const CategoryReport&, const CategoryReport&) = default;
};

struct BizrokeSplit {
  std::size_t last_syllable = 0;
  std::size_t other_syllables = 0;

  friend bool operator==(const BizrokeSplit&, const BizrokeSplit&) = default;
};

struct Mismatch {
  std::size_t line = 0;
  std::u32string source;
  std::u32string gold;
  std::u32string hypothesis;
};

struct EvalReport {
  Direction direction = Direction::ArabicToLatin;
  CategoryReport bizroke;  // gold contains Bizroke "i"
  CategoryReport waw;      // source contains waw
  CategoryReport yeh;      // source contains yeh
  CategoryReport whole;
  BizrokeSplit bizroke_errors;
  std::size_t produced = 0;  // pairs for which a hypothesis was produced
  std::vector<Mismatch> mismatches;

  std::optional<double> recall() const {
    if (whole.total == 0) return std::nullopt;
    return static_cast<double>(produced) / static_cast<double>(whole.total);
  }

  EvalReport& operator+=(const EvalReport& o) {
    bizroke += o.bizroke;
    waw += o.waw;
    yeh += o.yeh;
    whole += o.whole;
    bizroke_errors.last_syllable += o.bizroke_errors.last_syllable;
    bizroke_errors.other_syllables += o.bizroke_errors.other_syllables;
    produced += o.produced;
    mismatches.insert(mismatches.end(), o.mismatches.begin(), o.mismatches.end());
    return *this;
  }
};

/// correct/total as a percentage with two decimals, truncated toward zero: "38.74%".
/// Exact integer arithmetic; "n/a" for an empty category.
inline std::string format_percent(std::size_t correct, std::size_t total) {
  if (total == 0) return "n/a";
  const unsigned long long hundredths = static_cast<unsigned long long>(correct) * 10000ULL / total;
  std::ostringstream out;
  out << hundredths / 100 << '.' << std::setw(2) << std::setfill('0') << hundredths % 100 << '%';
  return out.str();
}

inline std::string format_percent(const CategoryReport& c) { return format_percent(c.correct, c.total); }

enum class SyllablePosition { Last, Other };

/// Where the Bizroke vowels the hypothesis failed to produce sit in the gold word.
/// Missed means a gold "i" left unmatched by a longest common subsequence alignment.
/// Last when any missed one falls in the gold word's final syllable.
inline SyllablePosition missed_bizroke_position(std::u32string_view gold, std::u32string_view hypothesis) {
  const std::size_t n = gold.size();
  const std::size_t m = hypothesis.size();
  std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      lcs[i][j] = gold[i] == hypothesis[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);

  std::vector<std::size_t> missed;
  std::size_t i = 0, j = 0;
  while (i < n) {
    if (j < m && gold[i] == hypothesis[j]) {
      ++i;
      ++j;
    } else if (j < m && lcs[i][j + 1] > lcs[i + 1][j]) {
      ++j;
    } else {
      if (gold[i] == cp::kBizroke) missed.push_back(i);
      ++i;
    }
  }

  const ResolvedWord units = units_from_latin(gold);
  const auto syllables = syllabify(units);
  if (missed.empty() || !syllables || syllables->empty()) return SyllablePosition::Other;
  const std::size_t last_begin = syllables->back().begin;
  const bool in_last = std::any_of(missed.begin(), missed.end(), [&](std::size_t p) { return p >= last_begin; });
  return in_last ? SyllablePosition::Last : SyllablePosition::Other;
}

namespace detail {

template <typename PerPair>
EvalReport evaluate_parallel(const ParallelCorpus& corpus, Direction d, PerPair per_pair) {
  const std::size_t n = corpus.pairs.size();
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t chunks = n < 4096 ? 1 : std::min<std::size_t>(hw, n / 1024);

  auto run = [&](std::size_t begin, std::size_t end) {
    EvalReport partial;
    partial.direction = d;
    for (std::size_t i = begin; i < end; ++i) per_pair(corpus.pairs[i], partial);
    return partial;
  };

  EvalReport report;
  report.direction = d;
  if (chunks <= 1) {
    report += run(0, n);
    return report;
  }
  std::vector<std::future<EvalReport>> parts;
  for (std::size_t c = 0; c < chunks; ++c)
    parts.push_back(std::async(std::launch::async, run, n * c / chunks, n * (c + 1) / chunks));
  for (auto& part : parts) report += part.get();
  return report;
}

}  // namespace detail

/// Exact-match (after NFC) evaluation of AbO -> LbO with per-category precision.
/// Categories depend on source and gold only.
inline EvalReport evaluate_ar2la(const ParallelCorpus& corpus, const Transliterator& engine = Transliterator()) {
  return detail::evaluate_parallel(corpus, Direction::ArabicToLatin, [&](const CorpusPair& p, EvalReport& r) {
    const std::u32string source = normalize_abo(p.abo);
    const std::u32string gold = unicode::nfc(p.lbo);
    const std::u32string hypothesis = unicode::nfc(engine.transliterate_word_ar2la(p.abo));
    const bool ok = hypothesis == gold;
    ++r.produced;

    auto count = [ok](CategoryReport& c) {
      ++c.total;
      if (ok) ++c.correct;
    };
    count(r.whole);
    if (source.find(cp::kWaw) != std::u32string::npos) count(r.waw);
    if (source.find(cp::kYeh) != std::u32string::npos) count(r.yeh);
    if (gold.find(cp::kBizroke) != std::u32string::npos) {
      count(r.bizroke);
      if (!ok) {
        if (missed_bizroke_position(gold, hypothesis) == SyllablePosition::Last)
          ++r.bizroke_errors.last_syllable;
        else
          ++r.bizroke_errors.other_syllables;
      }
    }
    if (!ok) r.mismatches.push_back({p.line, p.abo, p.lbo, hypothesis});
  });
}

/// LbO -> AbO evaluation; only the whole-set category is filled in.
inline EvalReport evaluate_la2ar(const ParallelCorpus& corpus, const Transliterator& engine = Transliterator()) {
  return detail::evaluate_parallel(corpus, Direction::LatinToArabic, [&](const CorpusPair& p, EvalReport& r) {
    const std::u32string gold = unicode::nfc(normalize_abo(p.abo));
    const std::u32string hypothesis = unicode::nfc(engine.transliterate_word_la2ar(p.lbo));
    const bool ok = hypothesis == gold;
    ++r.produced;
    ++r.whole.total;
    if (ok) ++r.whole.correct;
    else r.mismatches.push_back({p.line, p.lbo, p.abo, hypothesis});
  });
}

inline std::string render_text(const EvalReport& report) {
  std::ostringstream out;
  auto row = [&](std::string_view label, const CategoryReport& c) {
    const std::size_t width = unicode::decode_utf8(label).size();
    out << label << std::string(width < 20 ? 20 - width : 1, ' ') << std::setw(8) << c.total << std::setw(9)
        << c.correct << std::setw(11) << c.incorrect() << std::setw(11) << format_percent(c) << '\n';
  };
  out << "direction: " << (report.direction == Direction::ArabicToLatin ? "ar2la" : "la2ar") << '\n';
  out << std::left << std::setw(20) << "category" << std::right << std::setw(8) << "total" << std::setw(9)
      << "correct" << std::setw(11) << "incorrect" << std::setw(11) << "precision" << '\n';
  if (report.direction == Direction::ArabicToLatin) {
    row("Bizroke detection", report.bizroke);
    out << "  incorrect, last syllable:   " << report.bizroke_errors.last_syllable << " / "
        << report.bizroke.incorrect() << '\n';
    out << "  incorrect, other syllables: " << report.bizroke_errors.other_syllables << " / "
        << report.bizroke.incorrect() << '\n';
    row("w/u detection", report.waw);
    row("y/î detection", report.yeh);
  }
  row("whole test set", report.whole);
  out << "recall: " << format_percent(report.produced, report.whole.total) << '\n';
  return out.str();
}

inline nlohmann::json to_json(const CategoryReport& c) {
  nlohmann::json j{{"total", c.total}, {"correct", c.correct}, {"incorrect", c.incorrect()}};
  if (auto p = c.precision()) {
    j["precision"] = *p;
  } else {
    j["precision"] = nullptr;
  }
  j["precision_text"] = format_percent(c);
  return j;
}

inline nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json j;
  j["direction"] = report.direction == Direction::ArabicToLatin ? "ar2la" : "la2ar";
  nlohmann::json categories;
  if (report.direction == Direction::ArabicToLatin) {
    categories["bizroke"] = to_json(report.bizroke);
    categories["waw"] = to_json(report.waw);
    categories["yeh"] = to_json(report.yeh);
  }
  categories["whole"] = to_json(report.whole);
  j["categories"] = categories;
  if (report.direction == Direction::ArabicToLatin)
    j["bizroke_error_split"] = {{"last_syllable", report.bizroke_errors.last_syllable},
                                {"other_syllables", report.bizroke_errors.other_syllables}};
  if (auto r = report.recall()) {
    j["recall"] = *r;
  } else {
    j["recall"] = nullptr;
  }
  j["overall"] = {{"total", report.whole.total},
                  {"correct", report.whole.correct},
                  {"precision_text", format_percent(report.whole)}};
  nlohmann::json mismatches = nlohmann::json::array();
  for (const Mismatch& m : report.mismatches)
    mismatches.push_back({{"line", m.line},
                          {"source", unicode::encode_utf8(m.source)},
                          {"gold", unicode::encode_utf8(m.gold)},
                          {"hypothesis", unicode::encode_utf8(m.hypothesis)}});
  j["mismatches"] = mismatches;
  return j;
}

}  // namespace sorani
