#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "sorani/eval.hpp"
#include "support/test_util.hpp"

namespace sorani {
namespace {

using testutil::u8;

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("sorani-eval-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

// Reference value: round(100 * correct / total, 2) computed as a rational, then truncated.
std::string reference_percent(std::size_t correct, std::size_t total) {
  const long double exact = 100.0L * correct / total;
  const long double cents = std::floor(exact * 100.0L + 1e-9L);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2Lf%%", cents / 100.0L);
  return buf;
}

TEST(LoadCorpusTest, SinglePair) {
  TempDir dir;
  const auto corpus = load_corpus(dir.write("a.abo", "ئاگر\n"), dir.write("a.lbo", "agir\n"));
  ASSERT_EQ(corpus.pairs.size(), 1U);
  EXPECT_EQ(u8(corpus.pairs[0].abo), u8(U"ئاگر"));
  EXPECT_EQ(corpus.pairs[0].lbo, U"agir");
  EXPECT_EQ(corpus.source_files.size(), 2U);
}

TEST(LoadCorpusTest, EmptyFiles) {
  TempDir dir;
  EXPECT_TRUE(load_corpus(dir.write("e.abo", ""), dir.write("e.lbo", "")).pairs.empty());
}

TEST(LoadCorpusTest, LineCountMismatch) {
  TempDir dir;
  try {
    load_corpus(dir.write("m.abo", "رۆژ\nبرا\n"), dir.write("m.lbo", "roj\nbira\nagir\n"));
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(LoadCorpusTest, TokenCountMismatch) {
  try {
    parse_corpus("رۆژ باش\nبرا", "roj baş\nbira agir");
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.expected(), 1U);
    EXPECT_EQ(e.found(), 2U);
  }
}

TEST(LoadCorpusTest, WordsPairedAcrossPunctuationAndBom) {
  const auto corpus = parse_corpus("\xEF\xBB\xBFرۆژ، باش.\r\n", "roj, baş.\r\n");
  ASSERT_EQ(corpus.pairs.size(), 2U);
  EXPECT_EQ(u8(corpus.pairs[1].lbo), "baş");
  EXPECT_EQ(corpus.pairs[1].line, 1U);
}

TEST(LoadCorpusTest, MissingFile) {
  EXPECT_THROW(load_corpus("/nonexistent/x.abo", "/nonexistent/x.lbo"), std::runtime_error);
}

TEST(LoadCorpusTest, TabSeparatedPairs) {
  const auto corpus = parse_corpus_tsv("ئاگر\tagir\n\nرۆژ\troj\n");
  ASSERT_EQ(corpus.pairs.size(), 2U);
  EXPECT_EQ(corpus.pairs[1].line, 3U);
  EXPECT_THROW(parse_corpus_tsv("ئاگر agir\n"), AlignmentError);
  EXPECT_THROW(parse_corpus_tsv("ئاگر\t \n"), AlignmentError);
}

TEST(FormatPercentTest, PublishedCounts) {
  EXPECT_EQ(format_percent(721, 1861), "38.74%");
  EXPECT_EQ(format_percent(2472, 2480), "99.67%");
  EXPECT_EQ(format_percent(4808, 4850), "99.13%");
  EXPECT_EQ(format_percent(5779, 6980), "82.79%");
}

TEST(FormatPercentTest, AgreesWithFloatingReference) {
  std::mt19937 rng(17);
  for (int k = 0; k < 20000; ++k) {
    const std::size_t total = std::uniform_int_distribution<std::size_t>(1, 100000)(rng);
    const std::size_t correct = std::uniform_int_distribution<std::size_t>(0, total)(rng);
    ASSERT_EQ(format_percent(correct, total), reference_percent(correct, total)) << correct << "/" << total;
  }
  EXPECT_EQ(format_percent(0, 0), "n/a");
  EXPECT_EQ(format_percent(5, 5), "100.00%");
  EXPECT_EQ(format_percent(0, 7), "0.00%");
}

TEST(EvaluateAr2LaTest, AllCorrect) {
  const auto corpus = parse_corpus("ئاگر هاوین دیار بزگوڕ برا", "agir hawîn dyar bizguř bira");
  const EvalReport r = evaluate_ar2la(corpus);
  EXPECT_EQ(r.whole.total, 5U);
  EXPECT_EQ(r.whole.incorrect(), 0U);
  EXPECT_EQ(format_percent(r.whole), "100.00%");
  EXPECT_EQ(r.bizroke.total, 3U);
  EXPECT_EQ(r.waw.total, 2U);
  EXPECT_EQ(r.yeh.total, 2U);
  EXPECT_EQ(format_percent(r.bizroke), "100.00%");
  EXPECT_EQ(r.recall(), 1.0);
  EXPECT_TRUE(r.mismatches.empty());
}

TEST(EvaluateAr2LaTest, BizrokeErrorSplit) {
  // kirdin misses its second-syllable i; the gold in the last syllable counts as Last.
  const auto corpus = parse_corpus("کردن برا", "kirdin bra");
  const EvalReport r = evaluate_ar2la(corpus);
  EXPECT_EQ(r.whole.correct, 0U);
  EXPECT_EQ(r.bizroke.total, 1U);
  EXPECT_EQ(r.bizroke_errors.last_syllable, 1U);
  EXPECT_EQ(r.bizroke_errors.other_syllables, 0U);
  ASSERT_EQ(r.mismatches.size(), 2U);
  EXPECT_EQ(r.mismatches[0].hypothesis, U"kirdn");
}

TEST(EvaluateAr2LaTest, CategoriesIgnoreHypothesis) {
  // Same sources and gold, different engines: category totals must not move.
  const auto corpus = parse_corpus("هاوین کوێر ئاگر", "hawîn kwêr agir");
  const auto overridden = AlphabetTable::standard().with_overrides(parse_overrides("ا\to\n"));
  const EvalReport a = evaluate_ar2la(corpus);
  const EvalReport b = evaluate_ar2la(corpus, Transliterator(overridden));
  EXPECT_EQ(a.waw.total, b.waw.total);
  EXPECT_EQ(a.yeh.total, b.yeh.total);
  EXPECT_EQ(a.bizroke.total, b.bizroke.total);
  EXPECT_LT(b.whole.correct, a.whole.correct);
}

TEST(EvaluateAr2LaTest, ParallelMergeMatchesSequentialCounts) {
  ParallelCorpus corpus;
  const std::u32string abo[] = {U"ئاگر", U"کردن", U"بەناوودەنگ", U"هاوین"};
  const std::u32string lbo[] = {U"agir", U"kirdin", U"benawûdeng", U"hawîn"};
  for (std::size_t i = 0; i < 10000; ++i) corpus.pairs.push_back({abo[i % 4], lbo[i % 4], i + 1});
  const EvalReport r = evaluate_ar2la(corpus);
  EXPECT_EQ(r.whole.total, 10000U);
  EXPECT_EQ(r.whole.correct, 5000U);
  EXPECT_EQ(r.waw.total, 5000U);
  EXPECT_EQ(r.waw.correct, 2500U);
  EXPECT_EQ(r.bizroke.total, 5000U);
  EXPECT_EQ(r.bizroke.correct, 2500U);
  ASSERT_EQ(r.mismatches.size(), 5000U);
  EXPECT_EQ(r.mismatches.front().line, 2U);
  EXPECT_EQ(r.mismatches.back().line, 9999U);
}

TEST(EvaluateLa2ArTest, Examples) {
  EXPECT_EQ(format_percent(evaluate_la2ar(parse_corpus("ئاگر", "agir")).whole), "100.00%");
  const EvalReport r = evaluate_la2ar(parse_corpus("رۆژ راوێژ رێگا", "roj rawêj rêga"));
  EXPECT_EQ(r.whole.total, 3U);
  EXPECT_EQ(r.whole.correct, 3U);
}

TEST(EvaluateLa2ArTest, EmptyCorpus) {
  const EvalReport r = evaluate_la2ar(ParallelCorpus{});
  EXPECT_EQ(r.whole.total, 0U);
  EXPECT_FALSE(r.whole.precision());
  EXPECT_FALSE(r.recall());
  EXPECT_EQ(format_percent(r.whole), "n/a");
}

TEST(ReportTest, JsonFields) {
  const EvalReport r = evaluate_ar2la(parse_corpus("ئاگر کردن", "agir kirdin"));
  const auto j = to_json(r);
  EXPECT_EQ(j["direction"], "ar2la");
  EXPECT_EQ(j["overall"]["total"], 2);
  EXPECT_EQ(j["overall"]["correct"], 1);
  EXPECT_EQ(j["categories"]["whole"]["precision_text"], "50.00%");
  EXPECT_EQ(j["categories"]["bizroke"]["incorrect"], 1);
  EXPECT_EQ(j["categories"]["waw"]["precision"], nullptr);
  EXPECT_EQ(j["bizroke_error_split"]["last_syllable"], 1);
  EXPECT_DOUBLE_EQ(j["recall"].get<double>(), 1.0);
  ASSERT_EQ(j["mismatches"].size(), 1U);
  EXPECT_EQ(j["mismatches"][0]["hypothesis"], "kirdn");
  for (const auto& [name, c] : j["categories"].items())
    EXPECT_EQ(c["correct"].get<int>() + c["incorrect"].get<int>(), c["total"].get<int>()) << name;
}

TEST(ReportTest, TextTable) {
  const std::string text = render_text(evaluate_ar2la(parse_corpus("ئاگر", "agir")));
  EXPECT_NE(text.find("Bizroke detection"), std::string::npos);
  EXPECT_NE(text.find("100.00%"), std::string::npos);
  EXPECT_NE(text.find("n/a"), std::string::npos);
}

}  // namespace
}  // namespace sorani
