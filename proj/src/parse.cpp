#include "cstkit/parse.hpp"

#include <tree_sitter/api.h>

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "cstkit/errors.hpp"

extern "C" {
const TSLanguage* tree_sitter_python(void);
const TSLanguage* tree_sitter_go(void);
const TSLanguage* tree_sitter_java(void);
const TSLanguage* tree_sitter_javascript(void);
}

namespace cstkit {

namespace {

const TSLanguage* ts_language_for(Language lang) {
  switch (lang) {
    case Language::python: return tree_sitter_python();
    case Language::go: return tree_sitter_go();
    case Language::java: return tree_sitter_java();
    case Language::javascript: return tree_sitter_javascript();
  }
  return nullptr;
}

// string-ish nodes are kept as one terminal so their exact text survives;
// their innards are either invisible to the grammar or would not survive a
// canonical-whitespace render
bool flatten_kind(Language lang, const char* kind) {
  switch (lang) {
    case Language::python:
      return !std::strcmp(kind, "string");
    case Language::go:
      return !std::strcmp(kind, "interpreted_string_literal") ||
             !std::strcmp(kind, "raw_string_literal") ||
             !std::strcmp(kind, "rune_literal");
    case Language::java:
      return !std::strcmp(kind, "string_literal") || !std::strcmp(kind, "text_block");
    case Language::javascript:
      return !std::strcmp(kind, "string") || !std::strcmp(kind, "template_string") ||
             !std::strcmp(kind, "regex");
  }
  return false;
}

bool is_ws_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// true when some non-whitespace byte inside the node is not covered by any
// visible child (e.g. string content the grammar lexes invisibly)
bool has_coverage_gaps(TSNode node, std::string_view src) {
  std::uint32_t cursor = ts_node_start_byte(node);
  std::uint32_t n = ts_node_child_count(node);
  auto gap_has_text = [&](std::uint32_t from, std::uint32_t to) {
    for (std::uint32_t i = from; i < to; ++i)
      if (!is_ws_byte(src[i])) return true;
    return false;
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    TSNode c = ts_node_child(node, i);
    std::uint32_t cs = ts_node_start_byte(c);
    if (gap_has_text(cursor, cs)) return true;
    cursor = std::max(cursor, ts_node_end_byte(c));
  }
  return gap_has_text(cursor, ts_node_end_byte(node));
}

// mutable tree the whitespace passes can edit in place
struct PNode {
  CstNode::Type type = CstNode::Type::nonterminal;
  std::string text;
  WsKind ws = WsKind::newline;
  Span span{};
  bool extra = false;  // comment
  PNode* parent = nullptr;
  std::vector<std::unique_ptr<PNode>> children;

  static std::unique_ptr<PNode> nonterminal(std::string kind, Span span) {
    auto n = std::make_unique<PNode>();
    n->text = std::move(kind);
    n->span = span;
    return n;
  }
  static std::unique_ptr<PNode> terminal(std::string payload, Span span, bool extra = false) {
    auto n = std::make_unique<PNode>();
    n->type = CstNode::Type::terminal;
    n->text = std::move(payload);
    n->span = span;
    n->extra = extra;
    return n;
  }
  static std::unique_ptr<PNode> marker(WsKind ws, std::uint32_t pos) {
    auto n = std::make_unique<PNode>();
    n->type = CstNode::Type::ws;
    n->ws = ws;
    n->span = {pos, pos};
    return n;
  }
};

std::unique_ptr<PNode> convert(TSNode node, Language lang, std::string_view src) {
  std::uint32_t start = ts_node_start_byte(node);
  std::uint32_t end = ts_node_end_byte(node);
  if (start == end) return nullptr;  // zero-width (missing / eof helpers)
  Span span{start, end};
  std::string text(src.substr(start, end - start));
  const char* kind = ts_node_type(node);

  if (ts_node_is_named(node) && !std::strcmp(kind, "ERROR")) {
    auto n = PNode::nonterminal("ERROR", span);
    std::uint32_t cc = ts_node_child_count(node);
    for (std::uint32_t i = 0; i < cc; ++i)
      if (auto c = convert(ts_node_child(node, i), lang, src)) {
        c->parent = n.get();
        n->children.push_back(std::move(c));
      }
    if (n->children.empty()) return PNode::terminal(std::move(text), span);
    return n;
  }
  if (!ts_node_is_named(node)) return PNode::terminal(std::move(text), span);
  if (ts_node_is_extra(node)) return PNode::terminal(std::move(text), span, true);

  std::uint32_t cc = ts_node_child_count(node);
  if (cc == 0) {
    if (text == kind) return PNode::terminal(std::move(text), span);
    auto n = PNode::nonterminal(kind, span);
    auto t = PNode::terminal(std::move(text), span);
    t->parent = n.get();
    n->children.push_back(std::move(t));
    return n;
  }
  if (flatten_kind(lang, kind) || has_coverage_gaps(node, src)) {
    auto n = PNode::nonterminal(kind, span);
    auto t = PNode::terminal(std::move(text), span);
    t->parent = n.get();
    n->children.push_back(std::move(t));
    return n;
  }
  auto n = PNode::nonterminal(kind, span);
  for (std::uint32_t i = 0; i < cc; ++i)
    if (auto c = convert(ts_node_child(node, i), lang, src)) {
      c->parent = n.get();
      n->children.push_back(std::move(c));
    }
  if (n->children.empty()) {
    // every child was zero-width; keep the text if there is any
    return PNode::terminal(std::move(text), span);
  }
  return n;
}

void collect_leaves(PNode* node, std::vector<PNode*>& out) {
  if (node->type != CstNode::Type::nonterminal) {
    out.push_back(node);
    return;
  }
  for (auto& c : node->children) collect_leaves(c.get(), out);
}

std::size_t child_index(PNode* parent, PNode* child) {
  for (std::size_t i = 0; i < parent->children.size(); ++i)
    if (parent->children[i].get() == child) return i;
  return parent->children.size();
}

int depth_of(PNode* n) {
  int d = 0;
  for (PNode* p = n->parent; p; p = p->parent) ++d;
  return d;
}

// lowest common ancestor plus each side's child of it
struct Lca {
  PNode* node;
  PNode* left_child;
  PNode* right_child;
};

Lca find_lca(PNode* a, PNode* b) {
  int da = depth_of(a), db = depth_of(b);
  PNode *pa = a, *pb = b;
  PNode *ca = nullptr, *cb = nullptr;
  while (da > db) { ca = pa; pa = pa->parent; --da; }
  while (db > da) { cb = pb; pb = pb->parent; --db; }
  while (pa != pb) {
    ca = pa; pa = pa->parent;
    cb = pb; pb = pb->parent;
  }
  return {pa, ca, cb};
}

// insert ws markers between two leaves, as children of their LCA
void insert_between(PNode* left, PNode* right, const std::vector<WsKind>& marks,
                    std::uint32_t pos) {
  if (marks.empty()) return;
  Lca lca = find_lca(left, right);
  std::size_t at = lca.left_child ? child_index(lca.node, lca.left_child) + 1 : 0;
  for (WsKind m : marks) {
    auto node = PNode::marker(m, pos);
    node->parent = lca.node;
    lca.node->children.insert(lca.node->children.begin() + static_cast<std::ptrdiff_t>(at), std::move(node));
    ++at;
  }
}

void append_marker(PNode* parent, WsKind ws, std::uint32_t pos) {
  auto node = PNode::marker(ws, pos);
  node->parent = parent;
  parent->children.push_back(std::move(node));
}

std::size_t count_newlines(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n' && (i == 0 || text[i - 1] != '\\')) ++n;
  return n;
}

// go: statement terminator tokens soak up a following blank line; turn the
// two-newline form into an explicit blank-line marker
void normalize_newline_terminals(PNode* root, std::string_view src) {
  std::vector<PNode*> leaves;
  collect_leaves(root, leaves);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    PNode* leaf = leaves[i];
    if (leaf->type != CstNode::Type::terminal) continue;
    if (leaf->text.empty() || leaf->text.find_first_not_of('\n') != std::string::npos)
      continue;
    std::size_t total = leaf->text.size();
    std::uint32_t gap_end = i + 1 < leaves.size() ? leaves[i + 1]->span.start
                                                  : static_cast<std::uint32_t>(src.size());
    total += count_newlines(src.substr(leaf->span.end, gap_end - leaf->span.end));
    if (total >= 2) {
      leaf->type = CstNode::Type::ws;
      leaf->ws = WsKind::blank_line;
      leaf->text.clear();
    }
  }
}

// free-form languages: a gap holding 2+ newlines becomes a blank-line marker
void insert_blank_markers(PNode* root, std::string_view src) {
  std::vector<PNode*> leaves;
  collect_leaves(root, leaves);
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    PNode *l = leaves[i], *r = leaves[i + 1];
    if (l->type == CstNode::Type::ws || r->type == CstNode::Type::ws) continue;
    std::string_view gap = src.substr(l->span.end, r->span.start - l->span.end);
    if (count_newlines(gap) >= 2)
      insert_between(l, r, {WsKind::blank_line}, l->span.end);
  }
}

// python: rebuild the newline/indent/dedent structure the grammar consumed
// invisibly. Markers go between the two leaf neighbours at their LCA;
// dedents (and the line break before them) close out the block they end.
void insert_python_markers(PNode* root, std::string_view src) {
  std::vector<PNode*> leaves;
  collect_leaves(root, leaves);
  if (leaves.empty()) return;

  struct Level {
    std::uint32_t col;
    PNode* block;  // node whose trailing children take the dedent
  };
  std::vector<Level> levels;
  int bracket_depth = 0;

  auto column_of = [&](std::uint32_t pos) {
    std::uint32_t line_start = pos;
    while (line_start > 0 && src[line_start - 1] != '\n') --line_start;
    return pos - line_start;
  };

  // first real token sets the base indentation
  std::uint32_t base_col = 0;
  for (PNode* l : leaves)
    if (!l->extra) {
      base_col = column_of(l->span.start);
      break;
    }
  levels.push_back({base_col, root});

  auto pop_to = [&](std::uint32_t col, std::uint32_t pos) {
    bool first = true;
    while (levels.size() > 1 && levels.back().col > col) {
      PNode* block = levels.back().block;
      levels.pop_back();
      if (first) append_marker(block, WsKind::newline, pos);
      append_marker(block, WsKind::dedent, pos);
      first = false;
    }
    return !first;
  };

  for (std::size_t i = 0; i < leaves.size(); ++i) {
    PNode* l = leaves[i];
    if (l->type == CstNode::Type::terminal && l->text.size() == 1 && !l->extra) {
      char c = l->text[0];
      if (c == '(' || c == '[' || c == '{') ++bracket_depth;
      if ((c == ')' || c == ']' || c == '}') && bracket_depth > 0) --bracket_depth;
    }

    std::uint32_t gap_end = i + 1 < leaves.size() ? leaves[i + 1]->span.start
                                                  : static_cast<std::uint32_t>(src.size());
    std::string_view gap = src.substr(l->span.end, gap_end - l->span.end);
    if (count_newlines(gap) == 0) continue;

    if (i + 1 == leaves.size()) {
      // end of file: close every open block
      if (!pop_to(levels.front().col, l->span.end))
        append_marker(root, WsKind::newline, l->span.end);
      break;
    }
    if (bracket_depth > 0) continue;

    PNode* r = leaves[i + 1];
    if (r->extra) {
      // comments do not move the indentation stack
      insert_between(l, r, {WsKind::newline}, l->span.end);
      continue;
    }
    std::uint32_t col = column_of(r->span.start);
    if (col > levels.back().col) {
      insert_between(l, r, {WsKind::indent}, l->span.end);
      Lca lca = find_lca(l, r);
      PNode* block = lca.right_child && lca.right_child->type == CstNode::Type::nonterminal
                         ? lca.right_child
                         : lca.node;
      levels.push_back({col, block});
    } else if (col == levels.back().col) {
      insert_between(l, r, {WsKind::newline}, l->span.end);
    } else {
      pop_to(col, l->span.end);
      if (levels.back().col != col) {
        // ragged dedent (malformed source); reopen at the new column
        insert_between(l, r, {WsKind::indent}, l->span.end);
        Lca lca = find_lca(l, r);
        PNode* block = lca.right_child && lca.right_child->type == CstNode::Type::nonterminal
                           ? lca.right_child
                           : lca.node;
        levels.push_back({col, block});
      }
    }
  }
}

CstNode freeze(PNode* node) {
  CstNode out;
  out.type = node->type;
  out.text = std::move(node->text);
  out.ws = node->ws;
  out.span = node->span;
  out.children.reserve(node->children.size());
  for (auto& c : node->children) out.children.push_back(freeze(c.get()));
  return out;
}

}  // namespace

CstTree parse(std::string_view source, Language lang) {
  const TSLanguage* grammar = ts_language_for(lang);
  if (!grammar) throw ParseFatal("no grammar registered");

  TSParser* parser = ts_parser_new();
  ts_parser_set_language(parser, grammar);
  TSTree* ts_tree = ts_parser_parse_string(parser, nullptr, source.data(),
                                           static_cast<std::uint32_t>(source.size()));
  if (!ts_tree) {
    ts_parser_delete(parser);
    throw ParseFatal("parser produced no tree");
  }
  TSNode ts_root = ts_tree_root_node(ts_tree);
  bool had_errors = ts_node_has_error(ts_root);

  std::unique_ptr<PNode> root = convert(ts_root, lang, source);
  if (!root) {
    // empty source: keep the bare root node
    root = PNode::nonterminal(ts_node_type(ts_root), {0, 0});
  }
  if (root->type != CstNode::Type::nonterminal) {
    auto wrapper = PNode::nonterminal(ts_node_type(ts_root),
                                      {0, static_cast<std::uint32_t>(source.size())});
    root->parent = wrapper.get();
    wrapper->children.push_back(std::move(root));
    root = std::move(wrapper);
  }

  ts_tree_delete(ts_tree);
  ts_parser_delete(parser);

  if (whitespace_sensitive(lang)) {
    insert_python_markers(root.get(), source);
  } else {
    normalize_newline_terminals(root.get(), source);
    insert_blank_markers(root.get(), source);
  }

  CstTree tree;
  tree.root = freeze(root.get());
  tree.source = std::string(source);
  tree.language = lang;
  tree.had_errors = had_errors;
  return tree;
}

}  // namespace cstkit
