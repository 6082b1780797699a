#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cstkit/pipeline.hpp"
#include "cstkit/serialize.hpp"
#include "support/forge.hpp"

using namespace cstkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("cstkit_pipeline_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GenerateOptions base_options(const fs::path& out) {
  GenerateOptions opt;
  for (Objective obj : all_objectives()) opt.objectives.insert(obj);
  opt.mask.rng_seed = 42;
  opt.out_dir = out;
  return opt;
}

}  // namespace

TEST_CASE("one nl record yields one example per objective") {
  CorpusRecord rec;
  rec.id = "r1";
  rec.language = Language::python;
  rec.code = "def f(a):\n    return a + 1\n";
  rec.nl = "increments a";

  fs::path out = scratch("single");
  GenerateSummary summary = run_generate({rec}, base_options(out));
  CHECK(summary.ingested == 1);
  for (const auto& [name, tally] : summary.per_objective) {
    CAPTURE(name);
    CHECK(tally.emitted == 1);
    CHECK(tally.rejected == 0);
    CHECK(tally.shards == 1);
  }
  // five shard files, a rejects file and a summary
  CHECK(fs::exists(out / "msp-00000.jsonl"));
  CHECK(fs::exists(out / "declm-00000.jsonl"));
  CHECK(fs::exists(out / "rejects.jsonl"));
  CHECK(fs::exists(out / "summary.json"));
  CHECK(slurp(out / "rejects.jsonl").empty());

  auto line = nlohmann::json::parse(slurp(out / "tetr-00000.jsonl"));
  CHECK(line["id"] == "r1");
  CHECK(line["objective"] == "tetr");
  CHECK(line["language"] == "python");
  CHECK(line["input"] == "increments a");
  CHECK(line["seed"].is_number_unsigned());
}

TEST_CASE("nl free record rejects only the text conditioned objectives") {
  CorpusRecord rec;
  rec.id = "r2";
  rec.language = Language::go;
  rec.code = "package main\n\nfunc f(a int) int {\n\treturn a\n}\n";

  fs::path out = scratch("missing_nl");
  GenerateOptions opt = base_options(out);
  GenerateSummary summary = run_generate({rec}, opt);
  CHECK(summary.per_objective.at("tetr").rejected == 1);
  CHECK(summary.per_objective.at("tetr").reject_reasons.at("missing_nl") == 1);
  CHECK(summary.per_objective.at("trte").rejected == 1);
  CHECK(summary.per_objective.at("msp").emitted == 1);
  CHECK(summary.per_objective.at("mnp").emitted == 1);
  CHECK(summary.per_objective.at("declm").emitted == 1);

  auto reject = nlohmann::json::parse(slurp(out / "rejects.jsonl").substr(
      0, slurp(out / "rejects.jsonl").find('\n')));
  CHECK(reject["id"] == "r2");
  CHECK(reject["reason"] == "missing_nl");
}

TEST_CASE("broken records are rejected with parse reasons") {
  CorpusRecord rec;
  rec.id = "broken";
  rec.language = Language::python;
  rec.code = "def f(:\n";
  fs::path out = scratch("parse_errors");
  GenerateSummary summary = run_generate({rec}, base_options(out));
  for (const auto& [name, tally] : summary.per_objective) {
    CHECK(tally.emitted == 0);
    CHECK(tally.reject_reasons.at("parse_errors") == 1);
  }
}

TEST_CASE("oversized records are rejected with the length cap") {
  CorpusRecord rec;
  rec.id = "huge";
  rec.language = Language::python;
  for (int i = 0; i < 40; ++i)
    rec.code += "x" + std::to_string(i) + " = " + std::to_string(i) + "\n";
  fs::path out = scratch("cap");
  GenerateOptions opt = base_options(out);
  opt.length_cap = 64;
  GenerateSummary summary = run_generate({rec}, opt);
  CHECK(summary.per_objective.at("msp").reject_reasons.at("length_cap") == 1);
}

TEST_CASE("ledger conservation and determinism over a forged corpus") {
  auto files = testsupport::forge_corpus(40, 7);
  auto records = testsupport::corpus_records(files);

  fs::path out1 = scratch("det1");
  fs::path out2 = scratch("det2");
  GenerateOptions opt1 = base_options(out1);
  opt1.shard_size = 50;
  GenerateOptions opt2 = base_options(out2);
  opt2.shard_size = 50;
  opt2.threads = 4;  // thread count must not affect bytes

  GenerateSummary s1 = run_generate(records, opt1);
  GenerateSummary s2 = run_generate(records, opt2);

  for (const auto& [name, tally] : s1.per_objective) {
    CHECK(tally.emitted + tally.rejected == s1.ingested);
    CHECK(s2.per_objective.at(name).emitted == tally.emitted);
  }

  std::vector<fs::path> shards1;
  for (const auto& entry : fs::directory_iterator(out1))
    shards1.push_back(entry.path().filename());
  std::sort(shards1.begin(), shards1.end());
  REQUIRE_FALSE(shards1.empty());
  for (const auto& name : shards1) {
    CAPTURE(name.string());
    CHECK(fs::exists(out2 / name));
    CHECK(slurp(out1 / name) == slurp(out2 / name));
  }

  // shard rolling: 160 records with shard cap 50 -> 4 numbered files
  CHECK(s1.per_objective.at("msp").emitted == 160);
  CHECK(s1.per_objective.at("msp").shards == 4);
  CHECK(fs::exists(out1 / "msp-00003.jsonl"));

  // every emitted stream deserializes
  for (const auto& name : shards1) {
    if (name == "rejects.jsonl" || name == "summary.json") continue;
    std::istringstream lines(slurp(out1 / name));
    std::string line;
    while (std::getline(lines, line)) {
      auto j = nlohmann::json::parse(line);
      std::string target = j["target"];
      if (j["objective"] == "tetr" || j["objective"] == "declm") {
        std::string text =
            j["objective"] == "declm" ? j["input"].get<std::string>() : target;
        auto sep = text.find("<NL_SEP> ");
        if (sep != std::string::npos) text = text.substr(sep + 9);
        auto lang = language_from_name(j["language"].get<std::string>());
        REQUIRE(lang.has_value());
        CHECK_NOTHROW(deserialize({lex_stream(text), *lang}));
      }
    }
  }
}

TEST_CASE("record seeds are stable and well spread") {
  CHECK(record_seed(1, "a") == record_seed(1, "a"));
  CHECK(record_seed(1, "a") != record_seed(2, "a"));
  CHECK(record_seed(1, "a") != record_seed(1, "b"));
  CHECK(record_seed(1, "ab") != record_seed(1, "ba"));
}

TEST_CASE("summary json shape") {
  GenerateSummary summary;
  summary.ingested = 3;
  summary.per_objective["msp"].emitted = 2;
  summary.per_objective["msp"].rejected = 1;
  summary.per_objective["msp"].shards = 1;
  summary.per_objective["msp"].reject_reasons["parse_errors"] = 1;
  auto j = nlohmann::json::parse(summary_to_json(summary));
  CHECK(j["ingested"] == 3);
  CHECK(j["objectives"]["msp"]["emitted"] == 2);
  CHECK(j["objectives"]["msp"]["reject_reasons"]["parse_errors"] == 1);
}
