#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cstkit/language.hpp"
#include "cstkit/token.hpp"

namespace cstkit {

struct Span {
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  bool operator==(const Span&) const = default;
};

// One CST node. Non-terminals carry a grammar kind and children; terminals
// carry the exact source text slice; ws nodes are explicit whitespace
// markers (whitespace-sensitive languages only, plus blank-line markers).
struct CstNode {
  enum class Type : std::uint8_t { nonterminal, terminal, ws };

  Type type = Type::nonterminal;
  std::string text;  // kind for nonterminal, payload for terminal
  WsKind ws = WsKind::newline;
  Span span{};
  std::vector<CstNode> children;

  static CstNode nonterminal(std::string kind, std::vector<CstNode> children = {});
  static CstNode terminal(std::string payload);
  static CstNode ws_marker(WsKind ws);

  bool is_terminal() const { return type == Type::terminal; }
  bool is_nonterminal() const { return type == Type::nonterminal; }
  bool is_ws() const { return type == Type::ws; }
  const std::string& kind() const { return text; }
  const std::string& payload() const { return text; }
};

struct CstTree {
  CstNode root;
  std::string source;
  Language language = Language::python;
  bool had_errors = false;
};

struct NodeStats {
  std::size_t total_nodes = 0;
  std::size_t non_terminals = 0;
  std::size_t terminals = 0;
  std::size_t ws_markers = 0;
  std::size_t depth = 0;
};

NodeStats node_stats(const CstNode& node);
NodeStats node_stats(const CstTree& tree);

// structural equality: kinds, child order, payloads, ws markers; spans ignored
bool node_equal(const CstNode& a, const CstNode& b);
bool tree_equal(const CstTree& a, const CstTree& b);

// pre-order visit of every node
void walk(const CstNode& node, const std::function<void(const CstNode&)>& fn);

// concatenation of all terminal payloads, left to right
std::string terminal_text(const CstNode& node);

}  // namespace cstkit
