#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cstkit/token.hpp"

using namespace cstkit;

TEST_CASE("ws spellings round trip") {
  for (WsKind ws : {WsKind::newline, WsKind::indent, WsKind::dedent, WsKind::blank_line}) {
    auto back = ws_from_spelling(ws_spelling(ws));
    REQUIRE(back.has_value());
    CHECK(*back == ws);
  }
  CHECK(ws_spelling(WsKind::newline) == "newline");
  CHECK(ws_spelling(WsKind::blank_line) == "\\n\\n");
  CHECK_FALSE(ws_from_spelling("news").has_value());
  CHECK_FALSE(ws_from_spelling("").has_value());
}

TEST_CASE("escape examples") {
  CHECK(escape_payload("add_nums") == "add\\_nums");
  CHECK(escape_payload("a b") == "a_b");
  CHECK(escape_payload("(") == "\\(");
  CHECK(escape_payload(")") == "\\)");
  CHECK(escape_payload("") == "\\=");
  CHECK(escape_payload("\n") == "\\n");
  // two raw newlines would spell the blank-line marker, so they get shielded
  CHECK(escape_payload("\n\n") == "\\=\\n\\n");
  CHECK(unescape_payload("\\=\\n\\n") == "\n\n");
  CHECK(unescape_payload("a_b") == "a b");
  CHECK(unescape_payload("\\_") == "_");
  CHECK(unescape_payload("\\=") == "");
}

TEST_CASE("escaped payloads collide with nothing reserved") {
  // the spellings of ws markers must never be producible by escaping
  for (const char* raw : {"newline", "indent", "dedent", "\\n\\n", "\n\n"}) {
    std::string esc = escape_payload(raw);
    CHECK_FALSE(ws_from_spelling(esc).has_value());
    StructToken tok = classify_piece(esc);
    CHECK(tok.kind == StructToken::Kind::terminal);
    CHECK(tok.text == raw);
  }
}

TEST_CASE("escape bijective and whitespace free on random bytes") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 24);
  std::uniform_int_distribution<int> byte(1, 127);
  for (int i = 0; i < 5000; ++i) {
    std::string raw;
    int n = len(rng);
    for (int k = 0; k < n; ++k) raw += static_cast<char>(byte(rng));
    std::string esc = escape_payload(raw);
    CHECK(unescape_payload(esc) == raw);
    for (char c : esc) {
      CHECK_FALSE(c == ' ');
      CHECK_FALSE(c == '\n');
      CHECK_FALSE(c == '\t');
    }
    // never classifiable as anything but a terminal
    StructToken tok = classify_piece(esc.empty() ? "\\=" : esc);
    CHECK(tok.kind == StructToken::Kind::terminal);
  }
}

TEST_CASE("markers and classification") {
  CHECK(open_marker("module") == "(_.module");
  CHECK(close_marker("module") == "module._)");

  StructToken open = classify_piece("(_.function_definition");
  CHECK(open.kind == StructToken::Kind::open);
  CHECK(open.text == "function_definition");

  StructToken close = classify_piece("function_definition._)");
  CHECK(close.kind == StructToken::Kind::close);
  CHECK(close.text == "function_definition");

  StructToken ws = classify_piece("indent");
  CHECK(ws.kind == StructToken::Kind::ws);
  CHECK(ws.ws == WsKind::indent);

  StructToken term = classify_piece("total");
  CHECK(term.kind == StructToken::Kind::terminal);
  CHECK(term.text == "total");

  // escaped parens keep marker look-alikes terminal
  CHECK(classify_piece("\\(_.x").kind == StructToken::Kind::terminal);
  CHECK(classify_piece("x._\\)").kind == StructToken::Kind::terminal);
}

TEST_CASE("token spelling round trips through classification") {
  std::vector<StructToken> tokens = {
      StructToken::open("block"),
      StructToken::close("block"),
      StructToken::terminal("a b_c\\d"),
      StructToken::terminal(""),
      StructToken::terminal("newline"),
      StructToken::ws_marker(WsKind::dedent),
      StructToken::ws_marker(WsKind::blank_line),
  };
  for (const auto& tok : tokens) {
    StructToken back = classify_piece(token_spelling(tok));
    CHECK(back == tok);
  }
}

TEST_CASE("unknown escapes and stray backslashes stay lossless enough") {
  // unescape is total: unknown sequences decay to the escaped char
  CHECK(unescape_payload("\\q") == "q");
  CHECK(unescape_payload("x\\") == "x\\");
}
