#include "cstkit/render.hpp"

#include <algorithm>
#include <cctype>

#include "cstkit/errors.hpp"

namespace cstkit {

namespace {

bool block_container(Language lang, const std::string& kind) {
  switch (lang) {
    case Language::python:
      return false;  // layout comes from markers instead
    case Language::go:
      return kind == "block";  // newline terminals do the breaking
    case Language::java:
      return kind == "program" || kind == "class_body" || kind == "interface_body" ||
             kind == "enum_body" || kind == "block" || kind == "switch_block" ||
             kind == "constructor_body" || kind == "annotation_type_body";
    case Language::javascript:
      return kind == "program" || kind == "statement_block" || kind == "class_body" ||
             kind == "switch_body";
  }
  return false;
}

// break lines after each child of these nodes (go relies on its newline
// terminals instead)
bool statement_container(Language lang, const std::string& kind) {
  if (lang == Language::go) return false;
  return block_container(lang, kind);
}

bool all_newlines(const std::string& s) {
  return !s.empty() && s.find_first_not_of('\n') == std::string::npos;
}

bool line_comment(const std::string& payload) {
  return payload.rfind("//", 0) == 0 || payload.rfind("#", 0) == 0;
}

struct Renderer {
  Language lang;
  std::string out;
  enum class Break { none, line, blank };
  Break pending = Break::none;
  int indent = 0;  // marker-driven (python) or block depth (free-form)
  std::vector<Span> spans;

  void request_break(Break b) {
    if (b == Break::blank || pending == Break::none) pending = b;
  }

  void write_indent() {
    if (indent > 0) out.append(static_cast<std::size_t>(indent) * 2, ' ');
  }

  bool need_space(char first) const {
    if (out.empty()) return false;
    char prev = out.back();
    if (prev == '\n') return false;
    if (prev == '(' || prev == '[' || prev == '{') return false;
    if (prev == '.' && !std::isdigit(static_cast<unsigned char>(first))) return false;
    switch (first) {
      case ')': case ']': case '}': case ',': case ';': case ':':
        return false;
      case '.':
        // keep "7 ." apart so number lexing cannot swallow the dot
        return std::isdigit(static_cast<unsigned char>(prev));
      default:
        return true;
    }
  }

  Span emit_terminal(const std::string& payload) {
    if (payload.empty()) {
      auto pos = static_cast<std::uint32_t>(out.size());
      return {pos, pos};
    }
    if (all_newlines(payload)) {
      // go statement terminators carry the break themselves
      pending = Break::none;
      auto start = static_cast<std::uint32_t>(out.size());
      out += payload;
      return {start, static_cast<std::uint32_t>(out.size())};
    }
    if (pending != Break::none) {
      out += pending == Break::blank ? "\n\n" : "\n";
      pending = Break::none;
      write_indent();
    } else if (!out.empty() && out.back() == '\n') {
      write_indent();
    } else if (need_space(payload.front())) {
      out += ' ';
    }
    auto start = static_cast<std::uint32_t>(out.size());
    out += payload;
    if (line_comment(payload)) request_break(Break::line);
    return {start, static_cast<std::uint32_t>(out.size())};
  }

  Span emit_ws(WsKind ws) {
    auto pos = static_cast<std::uint32_t>(out.size());
    switch (ws) {
      case WsKind::newline: request_break(Break::line); break;
      case WsKind::blank_line: request_break(Break::blank); break;
      case WsKind::indent:
        ++indent;
        request_break(Break::line);
        break;
      case WsKind::dedent:
        if (indent > 0) --indent;
        request_break(Break::line);
        break;
    }
    return {pos, pos};
  }

  Span node(const CstNode& n) {
    std::size_t my_index = spans.size();
    spans.push_back({});
    Span span;
    switch (n.type) {
      case CstNode::Type::terminal:
        if (!n.children.empty()) throw RenderFailure("terminal node with children");
        span = emit_terminal(n.text);
        break;
      case CstNode::Type::ws:
        if (!n.children.empty()) throw RenderFailure("ws marker with children");
        span = emit_ws(n.ws);
        break;
      case CstNode::Type::nonterminal: {
        if (n.text.empty()) throw RenderFailure("non-terminal with empty kind");
        bool container = block_container(lang, n.text);
        bool breaks = statement_container(lang, n.text);
        auto pos = static_cast<std::uint32_t>(out.size());
        span = {pos, pos};
        bool first = true;
        for (const auto& c : n.children) {
          if (container && c.is_terminal() && c.text == "}" && indent > 0) --indent;
          Span cs = node(c);
          if (container && c.is_terminal() && c.text == "{") {
            ++indent;
            if (lang == Language::go) request_break(Break::line);
          }
          if (first) {
            span = cs;
            first = false;
          } else {
            span.end = std::max(span.end, cs.end);
          }
          if (breaks) request_break(Break::line);
        }
        break;
      }
    }
    spans[my_index] = span;
    return span;
  }

  // a line break requested by the last marker/statement still counts
  void finish() {
    if (pending == Break::none) return;
    out += pending == Break::blank ? "\n\n" : "\n";
    pending = Break::none;
  }
};

void assign_spans(CstNode& node, const std::vector<Span>& spans, std::size_t& index) {
  node.span = spans[index++];
  for (auto& c : node.children) assign_spans(c, spans, index);
}

}  // namespace

std::string render(const CstTree& tree) {
  Renderer r{tree.language};
  r.node(tree.root);
  r.finish();
  return std::move(r.out);
}

std::string render_assign_spans(CstTree& tree) {
  Renderer r{tree.language};
  r.node(tree.root);
  r.finish();
  std::size_t index = 0;
  assign_spans(tree.root, r.spans, index);
  return std::move(r.out);
}

}  // namespace cstkit
