#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>

#include "cstkit/parse.hpp"
#include "cstkit/serialize.hpp"

using namespace cstkit;

namespace {

StructToken O(const char* kind) { return StructToken::open(kind); }
StructToken C(const char* kind) { return StructToken::close(kind); }
StructToken T(const char* payload) { return StructToken::terminal(payload); }
StructToken W(WsKind ws) { return StructToken::ws_marker(ws); }

std::vector<StructToken> ident(const char* name) {
  return {O("identifier"), T(name), C("identifier")};
}

void append(std::vector<StructToken>& out, std::vector<StructToken> part) {
  for (auto& t : part) out.push_back(std::move(t));
}

}  // namespace

TEST_CASE("python reference program serializes to the reference stream") {
  const char* src = "def add_nums(a, b):\n  c = a + b\n  return c\n";
  CstTree tree = parse(src, Language::python);
  REQUIRE_FALSE(tree.had_errors);

  std::vector<StructToken> expect;
  append(expect, {O("module"), O("function_definition"), T("def")});
  append(expect, ident("add_nums"));
  append(expect, {O("parameters"), T("(")});
  append(expect, ident("a"));
  append(expect, {T(",")});
  append(expect, ident("b"));
  append(expect, {T(")"), C("parameters"), T(":"), W(WsKind::indent),
                  O("block"), O("expression_statement"), O("assignment")});
  append(expect, ident("c"));
  append(expect, {T("="), O("binary_operator")});
  append(expect, ident("a"));
  append(expect, {T("+")});
  append(expect, ident("b"));
  append(expect, {C("binary_operator"), C("assignment"),
                  C("expression_statement"), W(WsKind::newline),
                  O("return_statement"), T("return")});
  append(expect, ident("c"));
  append(expect, {C("return_statement"), W(WsKind::newline),
                  W(WsKind::dedent), C("block"), C("function_definition"),
                  C("module")});

  CHECK(serialize(tree).tokens == expect);
}

TEST_CASE("go reference program serializes to the reference stream") {
  const char* src =
      "func main() {\n"
      "\tfmt.Println(\"7.0/3.0 =\", 7.0/3.0)\n"
      "\n"
      "\tfmt.Println(true && false)\n"
      "}\n";
  CstTree tree = parse(src, Language::go);
  REQUIRE_FALSE(tree.had_errors);
  REQUIRE(tree.root.kind() == "source_file");
  REQUIRE_FALSE(tree.root.children.empty());
  const CstNode& decl = tree.root.children[0];
  REQUIRE(decl.kind() == "function_declaration");

  std::vector<StructToken> fix;
  serialize_node(decl, fix);

  auto call = [&](std::vector<StructToken> args) {
    std::vector<StructToken> out;
    append(out, {O("call_expression"), O("selector_expression")});
    append(out, ident("fmt"));
    append(out, {T("."), O("field_identifier"), T("Println"),
                 C("field_identifier"), C("selector_expression"),
                 O("argument_list"), T("(")});
    append(out, std::move(args));
    append(out, {T(")"), C("argument_list"), C("call_expression")});
    return out;
  };

  std::vector<StructToken> expect;
  append(expect, {O("function_declaration"), T("func")});
  append(expect, ident("main"));
  append(expect, {O("parameter_list"), T("("), T(")"), C("parameter_list"),
                  O("block"), T("{")});
  std::vector<StructToken> args1;
  append(args1, {O("interpreted_string_literal"), T("\"7.0/3.0 =\""),
                 C("interpreted_string_literal"), T(","),
                 O("binary_expression"), O("float_literal"), T("7.0"),
                 C("float_literal"), T("/"), O("float_literal"), T("3.0"),
                 C("float_literal"), C("binary_expression")});
  append(expect, call(std::move(args1)));
  append(expect, {W(WsKind::blank_line)});
  std::vector<StructToken> args2;
  append(args2, {O("binary_expression"), T("true"), T("&&"), T("false"),
                 C("binary_expression")});
  append(expect, call(std::move(args2)));
  append(expect, {T("\n"), T("}"), C("block"), C("function_declaration")});

  CHECK(fix == expect);
}

TEST_CASE("empty python source parses to a bare module") {
  CstTree tree = parse("", Language::python);
  CHECK_FALSE(tree.had_errors);
  CHECK(stream_text(serialize(tree)) == "(_.module module._)");
}

TEST_CASE("terminal payloads plus whitespace gaps reproduce the source") {
  const char* sources[] = {
      "def f(a):\n    # doc\n    return a + 1\n",
      "package main\n\nfunc main() {\n\tx := 1\n\t_ = x\n}\n",
      "class A {\n    int f() { return 1; }\n}\n",
      "const x = 1;\nfunction f(a) { return a * x; }\n",
  };
  Language langs[] = {Language::python, Language::go, Language::java,
                      Language::javascript};
  for (int i = 0; i < 4; ++i) {
    CstTree tree = parse(sources[i], langs[i]);
    REQUIRE_FALSE(tree.had_errors);
    std::vector<bool> covered(tree.source.size(), false);
    walk(tree.root, [&](const CstNode& n) {
      if (!n.is_terminal()) return;
      std::string_view slice(tree.source.data() + n.span.start,
                             n.span.end - n.span.start);
      CHECK(slice == n.payload());
      for (std::uint32_t b = n.span.start; b < n.span.end; ++b) covered[b] = true;
    });
    for (std::size_t b = 0; b < covered.size(); ++b)
      if (!covered[b])
        CHECK(std::isspace(static_cast<unsigned char>(tree.source[b])));
  }
}

TEST_CASE("python layout markers respect bracket continuations") {
  const char* src = "x = f(1,\n      2)\ny = 1\n";
  CstTree tree = parse(src, Language::python);
  REQUIRE_FALSE(tree.had_errors);
  auto tokens = serialize(tree).tokens;
  // one marker between the statements and one for the EOF newline, but none
  // for the line break inside the parenthesized call
  std::size_t count = 0;
  for (const auto& tok : tokens)
    if (tok.kind == StructToken::Kind::ws && tok.ws == WsKind::newline) ++count;
  CHECK(count == 2);
  std::size_t open_paren = 0, close_paren = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != StructToken::Kind::terminal) continue;
    if (tokens[i].text == "(") open_paren = i;
    if (tokens[i].text == ")" && close_paren == 0) close_paren = i;
  }
  REQUIRE(open_paren < close_paren);
  for (std::size_t i = open_paren; i < close_paren; ++i)
    CHECK(tokens[i].kind != StructToken::Kind::ws);
}

TEST_CASE("python nested suites emit matched indents and dedents") {
  const char* src =
      "def f(a):\n"
      "    if a:\n"
      "        while a:\n"
      "            a -= 1\n"
      "    return a\n";
  CstTree tree = parse(src, Language::python);
  REQUIRE_FALSE(tree.had_errors);
  int depth = 0;
  int max_depth = 0;
  for (const auto& tok : serialize(tree).tokens) {
    if (tok.kind != StructToken::Kind::ws) continue;
    if (tok.ws == WsKind::indent) ++depth;
    if (tok.ws == WsKind::dedent) --depth;
    max_depth = std::max(max_depth, depth);
    CHECK(depth >= 0);
  }
  CHECK(depth == 0);
  CHECK(max_depth == 3);
}

TEST_CASE("string contents stay glued to their quotes") {
  struct Case {
    const char* src;
    Language lang;
    const char* kind;
    const char* payload;
  };
  Case cases[] = {
      {"s = \"a b c\"\n", Language::python, "string", "\"a b c\""},
      {"package main\n\nvar s = \"x y\"\n", Language::go,
       "interpreted_string_literal", "\"x y\""},
      {"class A { String s = \"p q\"; }", Language::java, "string_literal",
       "\"p q\""},
      {"const s = \"m n\";\n", Language::javascript, "string", "\"m n\""},
      {"const t = `tpl ${1 + 2} end`;\n", Language::javascript,
       "template_string", "`tpl ${1 + 2} end`"},
  };
  for (const auto& c : cases) {
    CstTree tree = parse(c.src, c.lang);
    REQUIRE_FALSE(tree.had_errors);
    bool found = false;
    walk(tree.root, [&](const CstNode& n) {
      if (!n.is_nonterminal() || n.kind() != c.kind) return;
      REQUIRE(n.children.size() == 1);
      CHECK(n.children[0].is_terminal());
      CHECK(n.children[0].payload() == c.payload);
      found = true;
    });
    CHECK(found);
  }
}

TEST_CASE("syntax errors are flagged but still produce a tree") {
  CstTree tree = parse("def f(:\n    return\n", Language::python);
  CHECK(tree.had_errors);
  CHECK(node_stats(tree).total_nodes > 1);
}

TEST_CASE("go without trailing newline still parses clean") {
  CstTree tree = parse("package main", Language::go);
  CHECK_FALSE(tree.had_errors);
}

TEST_CASE("comments become plain terminals") {
  CstTree tree = parse("# leading note\nx = 1\n", Language::python);
  REQUIRE_FALSE(tree.had_errors);
  bool found = false;
  walk(tree.root, [&](const CstNode& n) {
    if (n.is_terminal() && n.payload() == "# leading note") found = true;
  });
  CHECK(found);
}

TEST_CASE("blank lines between free-form declarations become markers") {
  const char* src = "const a = 1;\n\nconst b = 2;\n";
  CstTree tree = parse(src, Language::javascript);
  REQUIRE_FALSE(tree.had_errors);
  std::size_t blanks = 0;
  for (const auto& tok : serialize(tree).tokens)
    if (tok.kind == StructToken::Kind::ws && tok.ws == WsKind::blank_line)
      ++blanks;
  CHECK(blanks == 1);
}
