#include "cstkit/tree.hpp"

#include <algorithm>

namespace cstkit {

CstNode CstNode::nonterminal(std::string kind, std::vector<CstNode> children) {
  CstNode n;
  n.type = Type::nonterminal;
  n.text = std::move(kind);
  n.children = std::move(children);
  return n;
}

CstNode CstNode::terminal(std::string payload) {
  CstNode n;
  n.type = Type::terminal;
  n.text = std::move(payload);
  return n;
}

CstNode CstNode::ws_marker(WsKind ws) {
  CstNode n;
  n.type = Type::ws;
  n.ws = ws;
  return n;
}

static void stats_walk(const CstNode& node, NodeStats& s, std::size_t depth) {
  s.total_nodes++;
  s.depth = std::max(s.depth, depth);
  switch (node.type) {
    case CstNode::Type::nonterminal: s.non_terminals++; break;
    case CstNode::Type::terminal: s.terminals++; break;
    case CstNode::Type::ws: s.ws_markers++; break;
  }
  for (const auto& c : node.children) stats_walk(c, s, depth + 1);
}

NodeStats node_stats(const CstNode& node) {
  NodeStats s;
  stats_walk(node, s, 1);
  return s;
}

NodeStats node_stats(const CstTree& tree) { return node_stats(tree.root); }

bool node_equal(const CstNode& a, const CstNode& b) {
  if (a.type != b.type) return false;
  if (a.type == CstNode::Type::ws) return a.ws == b.ws;
  if (a.text != b.text) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!node_equal(a.children[i], b.children[i])) return false;
  return true;
}

bool tree_equal(const CstTree& a, const CstTree& b) {
  return a.language == b.language && node_equal(a.root, b.root);
}

void walk(const CstNode& node, const std::function<void(const CstNode&)>& fn) {
  fn(node);
  for (const auto& c : node.children) walk(c, fn);
}

static void collect_text(const CstNode& node, std::string& out) {
  if (node.is_terminal()) {
    out += node.text;
    return;
  }
  for (const auto& c : node.children) collect_text(c, out);
}

std::string terminal_text(const CstNode& node) {
  std::string out;
  collect_text(node, out);
  return out;
}

}  // namespace cstkit
