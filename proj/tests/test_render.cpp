#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cstkit/parse.hpp"
#include "cstkit/render.hpp"
#include "cstkit/serialize.hpp"

using namespace cstkit;

namespace {

// parse-stable: rendering and reparsing reproduces the same tree
void check_stable(const char* src, Language lang) {
  CAPTURE(src);
  CstTree tree = parse(src, lang);
  REQUIRE_FALSE(tree.had_errors);
  std::string text = render(tree);
  CstTree again = parse(text, lang);
  CAPTURE(text);
  CHECK_FALSE(again.had_errors);
  CHECK(tree_equal(tree, again));
}

}  // namespace

TEST_CASE("python rendering is parse stable") {
  check_stable("def add_nums(a, b):\n  c = a + b\n  return c\n",
               Language::python);
  check_stable("x = 1\n", Language::python);
  check_stable("x = 1", Language::python);  // no trailing newline
  check_stable("", Language::python);
  check_stable("if a:\n    b = 1\nelif c:\n    b = 2\nelse:\n    b = 3\n",
               Language::python);
  check_stable(
      "def f():\n"
      "    x = [1,\n"
      "         2]\n"
      "    # tail note\n"
      "    return x\n",
      Language::python);
  check_stable(
      "class A:\n    def m(self):\n        if self:\n            return 1\n"
      "        return 0\n\nval = A().m()\n",
      Language::python);
  check_stable("@dec\ndef g():\n    pass\n", Language::python);
  check_stable("s = \"with (parens) and_underscores\"\n", Language::python);
  check_stable("def f():\n    return {\"k\": 1, \"j\": [2, 3]}\n",
               Language::python);
}

TEST_CASE("go rendering is parse stable") {
  check_stable("package main\n", Language::go);
  check_stable("package main", Language::go);
  check_stable(
      "package main\n\nimport \"fmt\"\n\nfunc main() {\n"
      "\tfmt.Println(\"7.0/3.0 =\", 7.0/3.0)\n\n"
      "\tfmt.Println(true && false)\n}\n",
      Language::go);
  check_stable(
      "package main\n\nfunc f(a int) int {\n\tfor i := 0; i < a; i++ {\n"
      "\t\ta += i\n\t}\n\treturn a\n}\n",
      Language::go);
  check_stable(
      "package main\n\ntype Box struct {\n\tW int\n\tH int\n}\n\n"
      "func (b Box) Area() int {\n\treturn b.W * b.H\n}\n",
      Language::go);
  check_stable("package main\n\n// top comment\nfunc f() {}\n", Language::go);
}

TEST_CASE("java rendering is parse stable") {
  check_stable("class A { int f() { return 1; } }", Language::java);
  check_stable(
      "public class Counter {\n    private int n = 0;\n\n"
      "    public void add(int k) {\n        if (k > 0) {\n"
      "            n += k;\n        } else {\n"
      "            throw new IllegalArgumentException(\"bad k: \" + k);\n"
      "        }\n    }\n}\n",
      Language::java);
  check_stable(
      "class Loop {\n    int sum(int[] xs) {\n        int t = 0;\n"
      "        for (int x : xs) { t += x; }\n        return t;\n    }\n}\n",
      Language::java);
  check_stable("interface Shape { double area(); }\n", Language::java);
}

TEST_CASE("javascript rendering is parse stable") {
  check_stable("const x = 1;\n", Language::javascript);
  check_stable(
      "function f(a, b) {\n  let x = a * b;\n  if (x > 3) {\n    x -= 1;\n"
      "  }\n  return x;\n}\n",
      Language::javascript);
  check_stable(
      "class Point {\n  constructor(x, y) {\n    this.x = x;\n    this.y = y;\n"
      "  }\n  norm() {\n    return Math.sqrt(this.x * this.x);\n  }\n}\n",
      Language::javascript);
  check_stable("const t = `count: ${1 + 2}`;\n", Language::javascript);
  check_stable("const r = /ab+c/g;\nconst y = x => x + 1;\n",
               Language::javascript);
  check_stable("let a = 1; let b = 2;\nconsole.log(a, b);\n",
               Language::javascript);
}

TEST_CASE("rendered text keeps numeric member access intact") {
  // 7.0/3.0: a space must separate '/' and the dots correctly either way
  CstTree tree = parse("package main\n\nvar x = 7.0 / 3.0\n", Language::go);
  REQUIRE_FALSE(tree.had_errors);
  std::string text = render(tree);
  CHECK(text.find("7.0") != std::string::npos);
  CHECK(text.find("3.0") != std::string::npos);
  CstTree again = parse(text, Language::go);
  CHECK(tree_equal(tree, again));
}

TEST_CASE("render assigns spans consistent with the rendered text") {
  CstTree tree = parse("def f(a):\n    return a\n", Language::python);
  std::string text = render_assign_spans(tree);
  walk(tree.root, [&](const CstNode& n) {
    if (!n.is_terminal()) return;
    CHECK(text.substr(n.span.start, n.span.end - n.span.start) == n.payload());
  });
}

TEST_CASE("deserialized streams render without source context") {
  // no original source text anywhere: layout comes from the stream alone
  const char* stream_form =
      "(_.module (_.function_definition def (_.identifier f identifier._) "
      "(_.parameters \\( \\) parameters._) : indent (_.block "
      "(_.return_statement return (_.integer 1 integer._) "
      "return_statement._) newline dedent block._) function_definition._) "
      "module._)";
  CstTree tree = deserialize({lex_stream(stream_form), Language::python});
  std::string text = render(tree);
  CstTree again = parse(text, Language::python);
  CHECK_FALSE(again.had_errors);
  CHECK(stream_text(serialize(again)) == stream_form);
}
