#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cstkit/errors.hpp"
#include "cstkit/serialize.hpp"
#include "support/tree_gen.hpp"

using namespace cstkit;

namespace {

CstTree wrap(CstNode root, Language lang = Language::python) {
  CstTree tree;
  tree.root = std::move(root);
  tree.language = lang;
  return tree;
}

}  // namespace

TEST_CASE("serialize bracketing order") {
  CstTree tree = wrap(CstNode::nonterminal(
      "pair", {CstNode::terminal("a"),
               CstNode::nonterminal("unit", {CstNode::terminal("b")})}));
  CHECK(stream_text(serialize(tree)) ==
        "(_.pair a (_.unit b unit._) pair._)");
}

TEST_CASE("empty non-terminal serializes to adjacent markers") {
  CstTree tree = wrap(CstNode::nonterminal("module"));
  CHECK(stream_text(serialize(tree)) == "(_.module module._)");
  CstTree back = deserialize(serialize(tree));
  CHECK(node_equal(back.root, tree.root));
}

TEST_CASE("deserialize rejects malformed streams") {
  auto lex = [](std::string_view s) { return lex_stream(s); };
  CHECK_THROWS_AS(deserialize({lex(""), Language::python}), UnbalancedStream);
  CHECK_THROWS_AS(deserialize({lex("(_.a"), Language::python}), UnbalancedStream);
  CHECK_THROWS_AS(deserialize({lex("(_.a a._) x"), Language::python}),
                  UnbalancedStream);
  CHECK_THROWS_AS(deserialize({lex("x (_.a a._)"), Language::python}),
                  UnbalancedStream);
  CHECK_THROWS_AS(deserialize({lex("(_.a b._)"), Language::python}), KindMismatch);
  CHECK_THROWS_AS(deserialize({lex("(_.a (_.b a._) b._)"), Language::python}),
                  KindMismatch);
}

TEST_CASE("stream_valid mirrors deserialize") {
  CHECK(stream_valid(lex_stream("(_.a x a._)")));
  CHECK(stream_valid(lex_stream("(_.a (_.b b._) newline a._)")));
  CHECK_FALSE(stream_valid(lex_stream("")));
  CHECK_FALSE(stream_valid(lex_stream("x")));
  CHECK_FALSE(stream_valid(lex_stream("(_.a b._)")));
  CHECK_FALSE(stream_valid(lex_stream("(_.a a._) (_.b b._)")));
  CHECK_FALSE(stream_valid(lex_stream("(_.a")));
}

TEST_CASE("lex stream splits and classifies") {
  auto tokens = lex_stream("  (_.module  a_b \n newline module._) ");
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0] == StructToken::open("module"));
  CHECK(tokens[1] == StructToken::terminal("a b"));
  CHECK(tokens[2] == StructToken::ws_marker(WsKind::newline));
  CHECK(tokens[3] == StructToken::close("module"));
}

TEST_CASE("text and token round trip on random trees") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    CstTree tree = wrap(testsupport::random_tree(rng, 2, 60),
                        i % 2 ? Language::go : Language::python);
    SerializedTree stream = serialize(tree);

    CstTree back = deserialize(stream);
    CHECK(node_equal(back.root, tree.root));

    // the flat text form lexes back to the same tokens
    auto relexed = lex_stream(stream_text(stream));
    CHECK(relexed == stream.tokens);
  }
}

TEST_CASE("deserializing a stream of another tree is never equal") {
  // quick injectivity spot check: distinct trees give distinct streams
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    CstNode a = testsupport::random_tree(rng, 2, 30);
    CstNode b = testsupport::random_tree(rng, 2, 30);
    CstTree ta = wrap(a);
    CstTree tb = wrap(std::move(b));
    if (node_equal(ta.root, tb.root)) continue;
    CHECK(stream_text(serialize(ta)) != stream_text(serialize(tb)));
  }
}

TEST_CASE("deserialize recomputes spans against its own source") {
  CstTree tree = wrap(CstNode::nonterminal(
      "m", {CstNode::terminal("let"), CstNode::terminal("x be y")}));
  CstTree back = deserialize(serialize(tree));
  REQUIRE(back.root.children.size() == 2);
  const auto& t0 = back.root.children[0];
  const auto& t1 = back.root.children[1];
  CHECK(back.source.substr(t0.span.start, t0.span.end - t0.span.start) == "let");
  CHECK(back.source.substr(t1.span.start, t1.span.end - t1.span.start) ==
        "x be y");
}
