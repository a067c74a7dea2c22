#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sorani/cli.hpp"

namespace sorani::cli {
namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::vector<const char*> argv{"sorani-translit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int status = main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("sorani-cli-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, Ar2LaFromStdin) {
  const Outcome o = invoke({"--direction", "ar2la"}, "ئاگر");
  EXPECT_EQ(o.status, 0);
  EXPECT_EQ(o.out, "agir");
  EXPECT_EQ(o.err, "");
}

TEST_F(CliTest, La2ArFilesAndBom) {
  const std::string in = file("in.txt", "\xEF\xBB\xBFroj baş\n");
  const std::string out = (dir_ / "out.txt").string();
  const Outcome o = invoke({"--direction", "la2ar", "--in", in, "--out", out});
  EXPECT_EQ(o.status, 0);
  EXPECT_EQ(o.out, "");
  std::ifstream f(out, std::ios::binary);
  std::stringstream buf;
  buf << f.rdbuf();
  EXPECT_EQ(buf.str(), "رۆژ باش\n");
}

TEST_F(CliTest, EvaluateIdenticalCorpus) {
  const Outcome o = invoke({"--eval", file("g.abo", "ئاگر\n"), file("g.lbo", "agir\n")});
  EXPECT_EQ(o.status, 0);
  EXPECT_NE(o.out.find("100.00%"), std::string::npos);
}

TEST_F(CliTest, EvaluateJson) {
  const Outcome o = invoke({"--eval", file("g.abo", "ئاگر کردن\n"), file("g.lbo", "agir kirdin\n"), "--json"});
  ASSERT_EQ(o.status, 0);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["overall"]["precision_text"], "50.00%");
}

TEST_F(CliTest, EvaluateMissingGoldPathIsUsageError) {
  const Outcome o = invoke({"--eval", file("g.abo", "ئاگر\n")});
  EXPECT_EQ(o.status, 1);
  EXPECT_EQ(o.out, "");
  EXPECT_NE(o.err.find("error"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({"--direction", "sideways"}).status, 1);
  EXPECT_EQ(invoke({"--json"}).status, 1);
  EXPECT_EQ(invoke({"--in", "x", "--eval", "a", "b"}).status, 1);
  EXPECT_EQ(invoke({"--help"}).status, 0);
}

TEST_F(CliTest, UnreadableFiles) {
  EXPECT_EQ(invoke({"--in", (dir_ / "missing.txt").string()}).status, 2);
  EXPECT_EQ(invoke({"--eval", (dir_ / "a").string(), (dir_ / "b").string()}).status, 2);
  EXPECT_EQ(invoke({"--override", (dir_ / "none.tsv").string()}, "x").status, 2);
}

TEST_F(CliTest, MisalignedCorpusReportsLine) {
  const Outcome o = invoke({"--eval", file("m.abo", "رۆژ\nبرا\n"), file("m.lbo", "roj\nbira\nagir\n")});
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.err.find("line 3"), std::string::npos);
}

TEST_F(CliTest, WarningsGoToErrorStream) {
  const Outcome o = invoke({}, "من iPhone");
  EXPECT_EQ(o.status, 0);
  EXPECT_EQ(o.out, "min iPhone");
  EXPECT_NE(o.err.find("warning: bytes 5-11"), std::string::npos);
}

TEST_F(CliTest, StrictModeFailsOnWarnings) {
  EXPECT_EQ(invoke({"--strict"}, "من iPhone").status, 3);
  EXPECT_EQ(invoke({"--strict"}, "ئاگر").status, 0);
}

TEST_F(CliTest, InvalidUtf8) {
  const Outcome o = invoke({}, "ab\xFF");
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.err.find("2"), std::string::npos);
}

TEST_F(CliTest, OverrideFile) {
  const std::string rules = file("rules.tsv", "# loans\nط\tṭ\n");
  EXPECT_EQ(invoke({"--override", rules}, "طاس").out, "ṭas");
  EXPECT_EQ(invoke({"--override", file("bad.tsv", "ط t\n")}, "x").status, 1);
}

TEST_F(CliTest, Digraphs) {
  EXPECT_EQ(invoke({"--direction", "la2ar", "--digraphs"}, "gull").out, "گوڵ");
}

TEST_F(CliTest, ByteIdenticalReruns) {
  const std::string text = "هاوین، برا و iPhone\n٣ ڕۆژ\n";
  const Outcome a = invoke({}, text);
  const Outcome b = invoke({}, text);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

}  // namespace
}  // namespace sorani::cli
