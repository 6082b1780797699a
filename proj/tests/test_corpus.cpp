#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cstkit/corpus.hpp"
#include "cstkit/errors.hpp"
#include "cstkit/parse.hpp"
#include "cstkit/serialize.hpp"
#include "support/forge.hpp"

using namespace cstkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("cstkit_corpus_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("jsonl ingest keeps good lines, counts bad ones") {
  fs::path dir = scratch("jsonl");
  fs::path file = dir / "corpus.jsonl";
  {
    std::ofstream out(file);
    out << R"({"id":"r1","language":"python","code":"x=1"})" << "\n";
    out << R"({"id":"r2","language":"go","code":"package main","nl":"a module"})" << "\n";
    out << R"({"id":"r3","language":"python","code":"y=2","docstring":"sets y"})" << "\n";
    out << "not json at all\n";
    out << R"({"id":"r4","language":"python"})" << "\n";          // no code
    out << R"({"id":"r5","language":"klingon","code":"x"})" << "\n";  // bad lang
    out << R"({"id":"r1","language":"python","code":"x=3"})" << "\n";  // dup id
    out << "\n";  // blank lines are skipped silently
  }
  IngestResult got = ingest(file, IngestFormat::jsonl);
  REQUIRE(got.records.size() == 3);
  CHECK(got.malformed == 3);
  CHECK(got.duplicates == 1);
  CHECK(got.records[0].id == "r1");
  CHECK_FALSE(got.records[0].nl.has_value());
  CHECK(got.records[1].language == Language::go);
  CHECK(got.records[1].nl == "a module");
  CHECK(got.records[2].nl == "sets y");  // docstring alias
  CHECK(got.records[0].code == "x=1");   // first wins on duplicates

  CHECK_THROWS_AS(ingest(dir / "missing.jsonl", IngestFormat::jsonl), IoFailure);
}

TEST_CASE("directory ingest maps files to records by extension") {
  fs::path dir = scratch("dir");
  auto files = testsupport::forge_corpus(5, 3);
  testsupport::write_corpus_dir(files, dir);
  {
    std::ofstream skip(dir / "notes.txt");
    skip << "not source\n";
  }
  IngestResult got = ingest(dir, IngestFormat::dir);
  CHECK(got.records.size() == files.size());  // .txt skipped without counting
  for (const auto& rec : got.records) {
    CHECK_FALSE(rec.code.empty());
    auto lang = language_from_extension(fs::path(rec.id).extension().string());
    REQUIRE(lang.has_value());
    CHECK(*lang == rec.language);
  }
  CHECK_THROWS_AS(ingest(dir / "nope", IngestFormat::dir), IoFailure);
}

TEST_CASE("format names") {
  CHECK(ingest_format_from_name("jsonl") == IngestFormat::jsonl);
  CHECK(ingest_format_from_name("dir") == IngestFormat::dir);
  CHECK_FALSE(ingest_format_from_name("csv").has_value());
}

TEST_CASE("per language counts add up") {
  std::vector<CorpusRecord> records;
  for (int i = 0; i < 5; ++i) {
    CorpusRecord rec;
    rec.id = "go" + std::to_string(i);
    rec.language = Language::go;
    rec.code = "package main\n";
    if (i < 2) rec.nl = "doc";
    records.push_back(rec);
  }
  CorpusStats stats = compute_stats(records);
  const auto& go = stats.per_language.at("go");
  CHECK(go.with_nl == 2);
  CHECK(go.without_nl == 3);
  CHECK(go.total() == 5);
  CHECK(stats.records == 5);
  CHECK(stats.parse_failures == 0);
}

TEST_CASE("expansion ratio against a hand count") {
  CorpusRecord rec;
  rec.id = "add_nums";
  rec.language = Language::python;
  rec.code = "def add_nums(a, b):\n  c = a + b\n  return c\n";

  // whitespace-split code tokens, counted by hand:
  // def add_nums(a, b): c = a + b return c -> 10
  std::size_t stream_tokens =
      serialize(parse(rec.code, rec.language)).tokens.size();
  CorpusStats stats = compute_stats({rec});
  CHECK(stats.expansion_mean ==
        doctest::Approx(double(stream_tokens) / 10.0));
  CHECK(stats.expansion_p50 == stats.expansion_mean);
  CHECK(stream_tokens > 10);  // trees really are more verbose than code
}

TEST_CASE("parse failures are counted, not fatal") {
  std::vector<CorpusRecord> records;
  CorpusRecord good;
  good.id = "g";
  good.language = Language::python;
  good.code = "x = 1\n";
  CorpusRecord bad;
  bad.id = "b";
  bad.language = Language::python;
  bad.code = "def f(:\n";
  records = {good, bad};
  CorpusStats stats = compute_stats(records);
  CHECK(stats.records == 2);
  CHECK(stats.parse_failures == 1);
  CHECK(stats.parse_failure_rate == doctest::Approx(0.5));
}

TEST_CASE("thousands separators") {
  CHECK(format_thousands(0) == "0");
  CHECK(format_thousands(7) == "7");
  CHECK(format_thousands(999) == "999");
  CHECK(format_thousands(1000) == "1,000");
  CHECK(format_thousands(347665) == "347,665");
  CHECK(format_thousands(8452446) == "8,452,446");
}

TEST_CASE("display names") {
  CHECK(display_language("go") == "Go");
  CHECK(display_language("javascript") == "JavaScript");
  CHECK(display_language("csharp") == "C#");
  CHECK(display_language("php") == "PHP");
  CHECK(display_language("ruby") == "Ruby");
}

TEST_CASE("stats table reproduces the reference row format") {
  CorpusStats stats;
  stats.per_language["go"] = {347665, 379103};
  stats.per_language["ruby"] = {53497, 110551};
  stats.per_language["python"] = {499055, 657030};
  stats.per_language["java"] = {499618, 1070271};
  stats.per_language["javascript"] = {139902, 1717933};
  stats.per_language["php"] = {579763, 398058};
  stats.per_language["c"] = {0, 1000000};
  stats.per_language["csharp"] = {0, 1000000};

  std::string table = render_stats_table(stats);
  CHECK(table.find("Go 347,665 379,103 726,768\n") != std::string::npos);
  CHECK(table.find("Ruby 53,497 110,551 164,048\n") != std::string::npos);
  CHECK(table.find("Python 499,055 657,030 1,156,085\n") != std::string::npos);
  CHECK(table.find("Java 499,618 1,070,271 1,569,889\n") != std::string::npos);
  CHECK(table.find("JavaScript 139,902 1,717,933 1,857,835\n") != std::string::npos);
  CHECK(table.find("PHP 579,763 398,058 977,821\n") != std::string::npos);
  CHECK(table.find("C 0 1,000,000 1,000,000\n") != std::string::npos);
  CHECK(table.find("C# 0 1,000,000 1,000,000\n") != std::string::npos);
  CHECK(table.find("Total 2,119,500 6,332,946 8,452,446\n") != std::string::npos);

  // reference row order is preserved
  CHECK(table.find("Go ") < table.find("Ruby "));
  CHECK(table.find("PHP ") < table.find("C 0"));
}

TEST_CASE("length histogram buckets by powers of two") {
  CorpusRecord rec;
  rec.id = "tiny";
  rec.language = Language::python;
  rec.code = "x = 1\n";
  CorpusStats stats = compute_stats({rec});
  std::size_t total = 0;
  for (const auto& [bound, count] : stats.length_histogram) {
    CHECK((bound & (bound - 1)) == 0);  // power of two
    total += count;
  }
  CHECK(total == 1);
}
