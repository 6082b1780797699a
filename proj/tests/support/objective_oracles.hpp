#pragma once

// independent reconstructions of masked examples, used to check the pair
// builders against the original streams

#include <optional>
#include <string>
#include <vector>

#include "cstkit/objectives.hpp"

namespace testsupport {

inline std::vector<std::string> split_pieces(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// rebuilds the original stream text from a subtree-masked pair by pasting
// each target span over its sentinel; empty on any inconsistency
inline std::optional<std::string> msp_splice_back(const std::string& input,
                                                  const std::string& target) {
  auto in = split_pieces(input);
  auto tg = split_pieces(target);

  // target = <MASK_0> span0 <MASK_1> span1 ... <MASK_k>
  std::vector<std::vector<std::string>> spans;
  std::size_t expected = 0;
  std::size_t i = 0;
  while (i < tg.size()) {
    auto idx = cstkit::sentinels::parse_span_sentinel(tg[i]);
    if (!idx || *idx != expected) return std::nullopt;
    ++i;
    ++expected;
    std::vector<std::string> span;
    while (i < tg.size() && !cstkit::sentinels::parse_span_sentinel(tg[i]))
      span.push_back(tg[i++]);
    if (i < tg.size()) spans.push_back(std::move(span));  // not the final one
  }
  if (expected == 0) return std::nullopt;

  std::string out;
  std::size_t used = 0;
  for (const auto& piece : in) {
    auto idx = cstkit::sentinels::parse_span_sentinel(piece);
    if (idx) {
      if (*idx != used || used >= spans.size()) return std::nullopt;
      for (const auto& p : spans[*idx]) {
        if (!out.empty()) out += ' ';
        out += p;
      }
      ++used;
      continue;
    }
    if (!out.empty()) out += ' ';
    out += piece;
  }
  if (used != spans.size()) return std::nullopt;
  return out;
}

// rebuilds the original stream text from a node-masked pair by filling each
// <NODE_MASK> slot with the next target marker
inline std::optional<std::string> mnp_zip_back(const std::string& input,
                                               const std::string& target) {
  auto in = split_pieces(input);
  auto tg = split_pieces(target);
  std::string out;
  std::size_t next = 0;
  for (const auto& piece : in) {
    if (!out.empty()) out += ' ';
    if (piece == cstkit::sentinels::node_mask) {
      if (next >= tg.size()) return std::nullopt;
      out += tg[next++];
    } else {
      out += piece;
    }
  }
  if (next != tg.size()) return std::nullopt;
  return out;
}

}  // namespace testsupport
