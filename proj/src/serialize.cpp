#include "cstkit/serialize.hpp"

#include <cctype>

#include "cstkit/errors.hpp"
#include "cstkit/render.hpp"

namespace cstkit {

void serialize_node(const CstNode& node, std::vector<StructToken>& out) {
  switch (node.type) {
    case CstNode::Type::terminal:
      out.push_back(StructToken::terminal(node.text));
      return;
    case CstNode::Type::ws:
      out.push_back(StructToken::ws_marker(node.ws));
      return;
    case CstNode::Type::nonterminal:
      out.push_back(StructToken::open(node.text));
      for (const auto& c : node.children) serialize_node(c, out);
      out.push_back(StructToken::close(node.text));
      return;
  }
}

SerializedTree serialize(const CstTree& tree) {
  SerializedTree s;
  s.language = tree.language;
  serialize_node(tree.root, s.tokens);
  return s;
}

CstTree deserialize(const SerializedTree& stream) {
  const auto& toks = stream.tokens;
  if (toks.empty()) throw UnbalancedStream("empty stream", 0);
  if (toks.front().kind != StructToken::Kind::open)
    throw UnbalancedStream("stream must begin with an open marker", 0);

  std::vector<CstNode> stack;
  stack.push_back(CstNode::nonterminal(toks.front().text));
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (stack.empty()) throw UnbalancedStream("tokens after the root closed", i);
    switch (t.kind) {
      case StructToken::Kind::open:
        stack.push_back(CstNode::nonterminal(t.text));
        break;
      case StructToken::Kind::terminal:
        stack.back().children.push_back(CstNode::terminal(t.text));
        break;
      case StructToken::Kind::ws:
        stack.back().children.push_back(CstNode::ws_marker(t.ws));
        break;
      case StructToken::Kind::close: {
        if (t.text != stack.back().text)
          throw KindMismatch(stack.back().text, t.text, i);
        CstNode done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty()) {
          if (i + 1 != toks.size())
            throw UnbalancedStream("tokens after the root closed", i + 1);
          CstTree tree;
          tree.root = std::move(done);
          tree.language = stream.language;
          tree.source = render_assign_spans(tree);
          return tree;
        }
        stack.back().children.push_back(std::move(done));
        break;
      }
    }
  }
  throw UnbalancedStream("stream ended with open markers", toks.size());
}

std::string tokens_text(const std::vector<StructToken>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += token_spelling(t);
  }
  return out;
}

std::string stream_text(const SerializedTree& stream) {
  return tokens_text(stream.tokens);
}

std::vector<StructToken> lex_stream(std::string_view text) {
  std::vector<StructToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.push_back(classify_piece(text.substr(start, i - start)));
  }
  return out;
}

bool stream_valid(const std::vector<StructToken>& tokens) {
  if (tokens.empty() || tokens.front().kind != StructToken::Kind::open) return false;
  std::vector<const std::string*> stack;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (stack.empty() && i > 0) return false;  // anything after the root closed
    switch (t.kind) {
      case StructToken::Kind::open:
        stack.push_back(&t.text);
        break;
      case StructToken::Kind::close:
        if (stack.empty() || *stack.back() != t.text) return false;
        stack.pop_back();
        break;
      default:
        if (stack.empty()) return false;
        break;
    }
  }
  return stack.empty();
}

}  // namespace cstkit
