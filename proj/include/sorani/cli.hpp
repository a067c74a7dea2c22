#pragma once

// Command-line front end: batch transliteration and corpus evaluation.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sorani/alphabet.hpp"
#include "sorani/eval.hpp"
#include "sorani/transliterator.hpp"
#include "sorani/unicode.hpp"

namespace sorani::cli {

enum class Mode { Transliterate, Evaluate };
enum class ReportFormat { Text, Json };

namespace exit_status {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kIo = 2;
inline constexpr int kStrictWarnings = 3;
}  // namespace exit_status

struct CliConfig {
  Mode mode = Mode::Transliterate;
  Direction direction = Direction::ArabicToLatin;
  std::optional<std::filesystem::path> input;   // stdin when empty
  std::optional<std::filesystem::path> output;  // stdout when empty
  bool digraphs = false;
  std::optional<std::filesystem::path> override_path;
  std::optional<std::pair<std::filesystem::path, std::filesystem::path>> eval_gold;  // (abo, lbo)
  ReportFormat report_format = ReportFormat::Text;
  bool strict = false;
};

struct ParseResult {
  std::optional<CliConfig> config;  // empty when the caller should exit with `status`
  int status = exit_status::kOk;
};

inline ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transliterates Sorani Kurdish between the Arabic-based and Latin-based orthographies.",
               "sorani-translit"};
  std::string direction = "ar2la";
  std::string input, output, override_path;
  std::vector<std::string> eval;
  bool digraphs = false, json = false, strict = false;

  app.add_option("--direction", direction, "ar2la or la2ar")
      ->check(CLI::IsMember({"ar2la", "la2ar"}))
      ->capture_default_str();
  app.add_option("--in", input, "input file (default: standard input)");
  app.add_option("--out", output, "output file (default: standard output)");
  app.add_flag("--digraphs", digraphs, "accept ll/rr for ł/ř in Latin input");
  app.add_option("--override", override_path, "override mapping file (source TAB target)");
  app.add_option("--eval", eval, "evaluate against gold files ABO_GOLD LBO_GOLD")->expected(2);
  app.add_flag("--json", json, "print the evaluation report as JSON");
  app.add_flag("--strict", strict, "exit with status 3 when warnings were emitted");

  std::vector<const char*> argv;
  argv.push_back("sorani-translit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, exit_status::kOk};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return {std::nullopt, exit_status::kUsage};
  }

  auto usage = [&](const std::string& message) {
    err << "error: " << message << "\n\n" << app.help();
    return ParseResult{std::nullopt, exit_status::kUsage};
  };

  CliConfig config;
  config.direction = direction == "la2ar" ? Direction::LatinToArabic : Direction::ArabicToLatin;
  config.digraphs = digraphs;
  config.strict = strict;
  if (!output.empty()) config.output = output;
  if (!override_path.empty()) config.override_path = override_path;
  if (!eval.empty()) {
    if (eval.size() != 2) return usage("--eval needs ABO_GOLD and LBO_GOLD");
    config.mode = Mode::Evaluate;
    config.eval_gold = std::make_pair(std::filesystem::path(eval[0]), std::filesystem::path(eval[1]));
    if (!input.empty()) return usage("--in cannot be combined with --eval");
  } else {
    if (json) return usage("--json applies to --eval only");
    if (!input.empty()) config.input = input;
  }
  config.report_format = json ? ReportFormat::Json : ReportFormat::Text;
  return {config, exit_status::kOk};
}

namespace detail {

inline std::ostream* open_output(const CliConfig& config, std::ofstream& file, std::ostream& fallback,
                                 std::ostream& err) {
  if (!config.output) return &fallback;
  file.open(*config.output, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open " << config.output->string() << " for writing\n";
    return nullptr;
  }
  return &file;
}

}  // namespace detail

/// Executes a validated configuration. Diagnostics go to `err` only.
inline int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  AlphabetTable table = AlphabetTable::standard();
  if (config.override_path) {
    try {
      table = table.with_overrides(load_overrides(*config.override_path));
    } catch (const OverrideError& e) {
      err << "error: " << config.override_path->string() << ": " << e.what() << '\n';
      return exit_status::kUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return exit_status::kIo;
    }
  }
  const Transliterator engine(std::move(table), Options{config.digraphs});

  std::ofstream out_file;
  std::ostream* sink = detail::open_output(config, out_file, out, err);
  if (!sink) return exit_status::kIo;

  if (config.mode == Mode::Evaluate) {
    try {
      const ParallelCorpus corpus = load_corpus(config.eval_gold->first, config.eval_gold->second, engine.table());
      const EvalReport report = config.direction == Direction::ArabicToLatin ? evaluate_ar2la(corpus, engine)
                                                                              : evaluate_la2ar(corpus, engine);
      if (config.report_format == ReportFormat::Json) {
        *sink << to_json(report).dump(2) << '\n';
      } else {
        *sink << render_text(report);
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return exit_status::kIo;
    }
    return sink->good() ? exit_status::kOk : exit_status::kIo;
  }

  std::ifstream in_file;
  std::istream* source = &in;
  if (config.input) {
    in_file.open(*config.input, std::ios::binary);
    if (!in_file) {
      err << "error: cannot open " << config.input->string() << '\n';
      return exit_status::kIo;
    }
    source = &in_file;
  }

  std::size_t warnings = 0;
  try {
    engine.transliterate_stream(*source, *sink, config.direction, [&](const Warning& w) {
      ++warnings;
      err << "warning: bytes " << w.span.begin << '-' << w.span.end << ": " << w.message << '\n';
    });
  } catch (const unicode::EncodingError& e) {
    sink->flush();
    err << "error: " << e.what() << '\n';
    return exit_status::kIo;
  }
  sink->flush();
  if (!*sink) {
    err << "error: write failed\n";
    return exit_status::kIo;
  }
  if (config.strict && warnings > 0) {
    err << "error: " << warnings << " warning(s) in strict mode\n";
    return exit_status::kStrictWarnings;
  }
  return exit_status::kOk;
}

inline int main(int argc, const char* const* argv, std::istream& in = std::cin, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const ParseResult parsed = parse_args(args, out, err);
  if (!parsed.config) return parsed.status;
  return run(*parsed.config, in, out, err);
}

}  // namespace sorani::cli
