#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cstkit/tree.hpp"

namespace cstkit {

struct SerializedTree {
  std::vector<StructToken> tokens;
  Language language = Language::python;
};

// hybrid pre-post-order traversal: Open before a node's children, Close
// after all its descendants; terminals and ws markers emit one token each
SerializedTree serialize(const CstTree& tree);
void serialize_node(const CstNode& node, std::vector<StructToken>& out);

// inverse of serialize. Spans are recomputed from the rendered text and the
// tree's source is set to that text. Throws UnbalancedStream/KindMismatch.
CstTree deserialize(const SerializedTree& stream);

// tokens joined by single spaces, payloads escaped
std::string stream_text(const SerializedTree& stream);
std::string tokens_text(const std::vector<StructToken>& tokens);

// split on whitespace and classify each piece; never fails
std::vector<StructToken> lex_stream(std::string_view text);

// checks the stream invariants without building a tree: non-empty, starts
// with Open(root), ends with Close(root), properly nested, kinds match
bool stream_valid(const std::vector<StructToken>& tokens);

}  // namespace cstkit
