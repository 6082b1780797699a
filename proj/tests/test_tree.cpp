#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cstkit/tree.hpp"

using namespace cstkit;

namespace {

// module > (import, function(def, name, block(stmt, stmt)))
CstNode sample() {
  return CstNode::nonterminal(
      "module",
      {CstNode::terminal("import os"),
       CstNode::nonterminal(
           "function",
           {CstNode::terminal("def"), CstNode::terminal("f"),
            CstNode::nonterminal("block", {CstNode::terminal("pass"),
                                           CstNode::ws_marker(WsKind::newline)})})});
}

}  // namespace

TEST_CASE("node stats counts every flavor") {
  NodeStats s = node_stats(sample());
  CHECK(s.total_nodes == 8);
  CHECK(s.non_terminals == 3);
  CHECK(s.terminals == 4);
  CHECK(s.ws_markers == 1);
  CHECK(s.depth == 4);
}

TEST_CASE("empty module is one childless non-terminal") {
  CstNode root = CstNode::nonterminal("module");
  NodeStats s = node_stats(root);
  CHECK(s.total_nodes == 1);
  CHECK(s.non_terminals == 1);
  CHECK(s.terminals == 0);
  CHECK(s.depth == 1);
  CHECK_FALSE(root.is_terminal());
}

TEST_CASE("single terminal") {
  NodeStats s = node_stats(CstNode::terminal("x"));
  CHECK(s.total_nodes == 1);
  CHECK(s.terminals == 1);
  CHECK(s.depth == 1);
}

TEST_CASE("structural equality ignores spans") {
  CstNode a = sample();
  CstNode b = sample();
  b.children[0].span = {5, 9};
  CHECK(node_equal(a, b));

  CstNode c = sample();
  c.children[1].children[1].text = "g";
  CHECK_FALSE(node_equal(a, c));

  CstNode d = sample();
  d.children[1].children[2].children[1].ws = WsKind::dedent;
  CHECK_FALSE(node_equal(a, d));

  CstNode e = sample();
  e.children.pop_back();
  CHECK_FALSE(node_equal(a, e));
}

TEST_CASE("terminal text concatenates leaves in order") {
  CHECK(terminal_text(sample()) == "import osdeffpass");
}

TEST_CASE("walk visits preorder") {
  std::vector<std::string> seen;
  walk(sample(), [&](const CstNode& n) {
    seen.push_back(n.is_ws() ? "<ws>" : n.text);
  });
  std::vector<std::string> expect = {"module", "import os", "function", "def",
                                     "f",      "block",     "pass",     "<ws>"};
  CHECK(seen == expect);
}
