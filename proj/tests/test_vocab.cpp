#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "cstkit/errors.hpp"
#include "cstkit/vocab.hpp"
#include "support/forge.hpp"
#include "support/objective_oracles.hpp"

using namespace cstkit;

TEST_CASE("declared inventories look like grammars") {
  for (Language lang : all_languages()) {
    auto kinds = declared_kinds(lang);
    CHECK(kinds.size() > 50);
    for (const auto& k : kinds) {
      CHECK_FALSE(k.empty());
      CHECK(k[0] != '_');
      CHECK(k != "ERROR");
    }
    // sorted and unique
    CHECK(std::is_sorted(kinds.begin(), kinds.end()));
    CHECK(std::adjacent_find(kinds.begin(), kinds.end()) == kinds.end());
  }
  auto py = declared_kinds(Language::python);
  CHECK(std::count(py.begin(), py.end(), "function_definition") == 1);
  auto go = declared_kinds(Language::go);
  CHECK(std::count(go.begin(), go.end(), "field_identifier") == 1);
}

TEST_CASE("observed kinds are always declared") {
  auto files = testsupport::forge_corpus(12, 77);
  auto records = testsupport::corpus_records(files);
  auto collected = collect_kinds(records, {Language::python, Language::go,
                                           Language::java, Language::javascript});
  CHECK(collected.skipped == 0);
  for (const auto& [lang, kinds] : collected.kinds) {
    auto declared = declared_kinds(lang);
    for (const auto& k : kinds)
      CHECK(std::count(declared.begin(), declared.end(), k) == 1);
  }
}

TEST_CASE("manifest layout") {
  std::map<Language, std::set<std::string>> kinds;
  kinds[Language::python] = {"module", "block"};
  kinds[Language::go] = {"block", "source_file"};
  VocabManifest m = emit_manifest(kinds);

  CHECK(m.language_kinds.at("python") == std::vector<std::string>{"block", "module"});
  // markers cover the union, two per kind
  CHECK(m.markers.size() == 6);
  CHECK(std::count(m.markers.begin(), m.markers.end(), "(_.block") == 1);
  CHECK(std::count(m.markers.begin(), m.markers.end(), "block._)") == 1);
  CHECK(m.ws.size() == 4);
  CHECK(m.sentinels.size() == sentinels::span_count + 2);

  auto j = nlohmann::json::parse(manifest_to_json(m));
  CHECK(j["version"] == 1);
  CHECK(j["languages"]["go"].size() == 2);
  CHECK(j["markers"].size() == 6);

  CHECK_THROWS_AS(emit_manifest({{Language::java, {}}}), EmptyKinds);
}

TEST_CASE("piece coverage distinguishes markers from payloads") {
  std::map<Language, std::set<std::string>> kinds;
  kinds[Language::python] = {"module"};
  VocabManifest m = emit_manifest(kinds);

  CHECK(piece_covered(m, "(_.module"));
  CHECK(piece_covered(m, "module._)"));
  CHECK_FALSE(piece_covered(m, "(_.unknown_kind"));
  CHECK_FALSE(piece_covered(m, "unknown_kind._)"));
  CHECK(piece_covered(m, "newline"));
  CHECK(piece_covered(m, "\\n\\n"));
  CHECK(piece_covered(m, "<MASK_0>"));
  CHECK(piece_covered(m, "<MASK_99>"));
  CHECK(piece_covered(m, "<NODE_MASK>"));
  CHECK(piece_covered(m, "<NL_SEP>"));
  // plain payload pieces are fine by definition
  CHECK(piece_covered(m, "some\\_payload"));
  CHECK(piece_covered(m, "x"));
}
