#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cstkit/decode.hpp"
#include "cstkit/errors.hpp"
#include "cstkit/parse.hpp"
#include "cstkit/render.hpp"
#include "support/tree_gen.hpp"

using namespace cstkit;

namespace {

std::vector<StructToken> toks(std::string_view text) { return lex_stream(text); }

std::string text_of(const std::vector<StructToken>& tokens) {
  return tokens_text(tokens);
}

// applies up to `edits` random marker corruptions: drop, duplicate-insert,
// or swap of structural tokens
std::vector<StructToken> corrupt(std::vector<StructToken> tokens,
                                 std::mt19937_64& rng, int edits) {
  std::uniform_int_distribution<int> which(0, 2);
  for (int e = 0; e < edits && tokens.size() > 1; ++e) {
    std::size_t at = std::uniform_int_distribution<std::size_t>(
        0, tokens.size() - 1)(rng);
    switch (which(rng)) {
      case 0: tokens.erase(tokens.begin() + at); break;
      case 1: {
        StructToken dup = tokens[at];
        std::size_t to = std::uniform_int_distribution<std::size_t>(
            0, tokens.size())(rng);
        tokens.insert(tokens.begin() + to, std::move(dup));
        break;
      }
      default: {
        std::size_t to = std::uniform_int_distribution<std::size_t>(
            0, tokens.size() - 1)(rng);
        std::swap(tokens[at], tokens[to]);
      }
    }
  }
  return tokens;
}

}  // namespace

TEST_CASE("valid streams come back unchanged") {
  auto tokens = toks("(_.m a (_.u b u._) newline m._)");
  auto [fixed, report] = repair(tokens);
  CHECK(fixed == tokens);
  CHECK_FALSE(report.repaired);
  CHECK(report.actions.empty());
  CHECK_FALSE(report.fallback_only);
}

TEST_CASE("close kind mismatch is retagged") {
  auto [fixed, report] = repair(toks("(_.a b._)"));
  CHECK(text_of(fixed) == "(_.a a._)");
  REQUIRE(report.actions.size() == 1);
  CHECK(report.actions[0].action == RepairAction::retag_kind);
  CHECK(report.actions[0].detail == "a");
  CHECK(report.actions[0].position == 1);
  CHECK(report.repaired);
}

TEST_CASE("missing closes are inserted at the end") {
  auto [fixed, report] = repair(toks("(_.a (_.b x"));
  CHECK(text_of(fixed) == "(_.a (_.b x b._) a._)");
  REQUIRE(report.actions.size() == 2);
  CHECK(report.actions[0].action == RepairAction::insert_missing_close);
  CHECK(report.actions[0].detail == "b");
  CHECK(report.actions[1].detail == "a");
}

TEST_CASE("stray tokens before the root are dropped") {
  auto [fixed, report] = repair(toks("x y._) newline (_.a z a._)"));
  CHECK(text_of(fixed) == "(_.a z a._)");
  REQUIRE(report.actions.size() == 3);
  CHECK(report.actions[0].action == RepairAction::drop_stray_terminal);
  CHECK(report.actions[1].action == RepairAction::drop_stray_close);
  CHECK(report.actions[2].action == RepairAction::drop_stray_terminal);
}

TEST_CASE("early root close is demoted so trailing tokens survive") {
  auto [fixed, report] = repair(toks("(_.a x a._) y"));
  // the demoted marker is an ordinary payload now, underscore and all
  CHECK(text_of(fixed) == "(_.a x a.\\_\\) y a._)");
  REQUIRE(report.actions.size() == 2);
  CHECK(report.actions[0].action == RepairAction::demote_to_terminal);
  CHECK(report.actions[0].detail == "a._)");
  CHECK(report.actions[1].action == RepairAction::insert_missing_close);
}

TEST_CASE("two roots merge under the first") {
  auto [fixed, report] = repair(toks("(_.a a._) (_.b b._)"));
  CHECK(stream_valid(fixed));
  CHECK(text_of(fixed) == "(_.a a.\\_\\) (_.b b._) a._)");
}

TEST_CASE("terminal only stream is fallback material") {
  auto [fixed, report] = repair(toks("just some words"));
  CHECK(report.fallback_only);
  CHECK_FALSE(report.repaired);
  CHECK(fixed == toks("just some words"));
}

TEST_CASE("nothing to salvage") {
  CHECK_THROWS_AS(repair(toks("a._) b._)")), Unrepairable);
  CHECK_THROWS_AS(repair(toks("newline dedent")), Unrepairable);
  CHECK_THROWS_AS(repair({}), Unrepairable);
}

TEST_CASE("reports replay to the repaired stream") {
  const char* cases[] = {
      "(_.a b._)",
      "(_.a (_.b x",
      "x y._) (_.a z a._)",
      "(_.a x a._) y",
      "(_.a a._) (_.b b._)",
      "(_.a (_.b c._) (_.d x",
  };
  for (const char* c : cases) {
    CAPTURE(c);
    auto tokens = toks(c);
    auto [fixed, report] = repair(tokens);
    CHECK(replay_repairs(tokens, report) == fixed);
  }
}

TEST_CASE("repair is idempotent") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    CstTree tree;
    tree.root = testsupport::random_tree(rng, 2, 30);
    tree.language = Language::python;
    auto tokens = corrupt(serialize(tree).tokens, rng, 3);
    std::vector<StructToken> fixed;
    RepairReport report;
    try {
      std::tie(fixed, report) = repair(tokens);
    } catch (const Unrepairable&) {
      continue;
    }
    if (report.fallback_only) continue;
    auto [fixed2, report2] = repair(fixed);
    CHECK(report2.actions.empty());
    CHECK(fixed2 == fixed);
    CHECK(stream_valid(fixed));
  }
}

TEST_CASE("lenient decode survives corruption, strict rejects it") {
  std::mt19937_64 rng(17);
  int strict_rejects = 0;
  for (int i = 0; i < 1000; ++i) {
    CstTree tree;
    tree.root = testsupport::random_tree(rng, 2, 30);
    tree.language = (i % 2) ? Language::go : Language::python;
    auto valid = serialize(tree).tokens;
    auto tokens = corrupt(valid, rng, 3);
    if (tokens == valid) continue;
    std::string text = text_of(tokens);

    bool has_open = false;
    bool has_terminal = false;
    for (const auto& t : tokens) {
      has_open |= t.kind == StructToken::Kind::open;
      has_terminal |= t.kind == StructToken::Kind::terminal;
    }
    if (!has_open && !has_terminal) {
      CHECK_THROWS_AS(to_code(text, tree.language, DecodeMode::lenient),
                      Unrepairable);
      continue;
    }
    // reaching the next line without a throw is the lenient guarantee
    DecodeResult result = to_code(text, tree.language, DecodeMode::lenient);
    CHECK(result.used_fallback == result.report.fallback_only);

    if (!stream_valid(tokens)) {
      ++strict_rejects;
      CHECK_THROWS_AS(to_code(text, tree.language, DecodeMode::strict), Error);
    }
  }
  CHECK(strict_rejects > 100);
}

TEST_CASE("strict decode is exact on encoder output") {
  const char* src = "def f(a):\n    return a + 1\n";
  CstTree tree = parse(src, Language::python);
  std::string text = stream_text(serialize(tree));
  DecodeResult result = to_code(text, Language::python, DecodeMode::strict);
  CstTree again = parse(result.code, Language::python);
  CHECK(tree_equal(tree, again));
}

TEST_CASE("fallback joins terminal payloads") {
  DecodeResult result =
      to_code("return x newline", Language::python, DecodeMode::lenient);
  CHECK(result.used_fallback);
  CHECK(result.report.fallback_only);
  CHECK(result.code == "return x");
}

TEST_CASE("report json lists actions in order") {
  auto [fixed, report] = repair(toks("(_.a b._)"));
  std::string j = repair_report_to_json(report);
  CHECK(j.find("\"repaired\": true") != std::string::npos);
  CHECK(j.find("retag_kind") != std::string::npos);
  CHECK(j.find("\"detail\": \"a\"") != std::string::npos);
}
