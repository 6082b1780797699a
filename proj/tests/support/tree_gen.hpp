#pragma once

// deterministic tree generators for property tests: seeded random CSTs and
// an exhaustive enumeration of small ordered trees

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cstkit/tree.hpp"

namespace testsupport {

inline const std::vector<std::string>& kind_pool() {
  static const std::vector<std::string> kinds = {
      "module", "block", "call", "pair", "list", "unit", "stmt", "expr"};
  return kinds;
}

inline const std::vector<std::string>& payload_pool() {
  // deliberately nasty: spaces, underscores, parens, backslashes, marker
  // look-alikes and ws spellings
  static const std::vector<std::string> payloads = {
      "x",        "foo_bar",  "a b",       "(",           ")",
      "(_.fake",  "fake._)",  "newline",   "indent",      "dedent",
      "\\n\\n",   "\n",       "\n\n",      "a\\b",        "_",
      "",         "  lead",   "trail  ",   "mix (_x_) y", "\t tab",
  };
  return payloads;
}

namespace detail {

// exactly n nodes, root included; child subtree sizes are capped by
// max_take and leaves are nonterminal with probability nt_leaf_pct
inline cstkit::CstNode sized_tree(std::mt19937_64& rng, std::size_t n,
                                  std::size_t max_take = ~std::size_t{0},
                                  int nt_leaf_pct = 15) {
  using cstkit::CstNode;
  std::uniform_int_distribution<std::size_t> kind_at(0, kind_pool().size() - 1);
  std::uniform_int_distribution<std::size_t> pay_at(0, payload_pool().size() - 1);
  std::uniform_int_distribution<int> pct(0, 99);
  if (n == 1) {
    int roll = pct(rng);
    if (roll < nt_leaf_pct) return CstNode::nonterminal(kind_pool()[kind_at(rng)]);
    if (roll < nt_leaf_pct + 15)
      return CstNode::ws_marker(static_cast<cstkit::WsKind>(roll % 4));
    return CstNode::terminal(payload_pool()[pay_at(rng)]);
  }
  CstNode node = CstNode::nonterminal(kind_pool()[kind_at(rng)]);
  std::size_t remaining = n - 1;
  while (remaining > 0) {
    std::size_t hi = std::min(remaining, max_take);
    std::size_t take = std::uniform_int_distribution<std::size_t>(1, hi)(rng);
    node.children.push_back(sized_tree(rng, take, max_take, nt_leaf_pct));
    remaining -= take;
  }
  return node;
}

}  // namespace detail

// random CST with a nonterminal root and node count in [min_nodes, max_nodes]
inline cstkit::CstNode random_tree(std::mt19937_64& rng, std::size_t min_nodes,
                                   std::size_t max_nodes) {
  std::size_t n =
      std::uniform_int_distribution<std::size_t>(min_nodes, max_nodes)(rng);
  if (n < 2) n = 2;  // keep the root a nonterminal with at least one child
  return detail::sized_tree(rng, n);
}

// bushy tree with many small non-root subtrees, the shape masking sweeps
// are measured on: 60..240 nodes, child subtrees capped at 6 nodes
inline cstkit::CstNode mask_bench_tree(std::mt19937_64& rng) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(60, 240)(rng);
  return detail::sized_tree(rng, n, 6, 30);
}

// preorder child-count encodings of all ordered trees with n nodes;
// tree_shapes(n).size() == Catalan(n-1)
inline const std::vector<std::vector<std::size_t>>& tree_shapes(std::size_t n) {
  static std::vector<std::vector<std::vector<std::size_t>>> cache = {
      {},       // 0 nodes
      {{0}},    // 1 node: a lone leaf
  };
  while (cache.size() <= n) {
    std::size_t k = cache.size();
    // ordered forests totalling m nodes, as (tree_count, flat encoding)
    std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>>
        forests(k);
    forests[0].push_back({0, {}});
    for (std::size_t total = 1; total < k; ++total)
      for (std::size_t head = 1; head <= total; ++head)
        for (const auto& tree : cache[head])
          for (const auto& rest : forests[total - head]) {
            auto enc = tree;
            enc.insert(enc.end(), rest.second.begin(), rest.second.end());
            forests[total].push_back({1 + rest.first, std::move(enc)});
          }
    std::vector<std::vector<std::size_t>> result;
    for (auto& [child_count, body] : forests[k - 1]) {
      std::vector<std::size_t> enc;
      enc.reserve(k);
      enc.push_back(child_count);
      enc.insert(enc.end(), body.begin(), body.end());
      result.push_back(std::move(enc));
    }
    cache.push_back(std::move(result));
  }
  return cache[n];
}

// materialize a shape under one of three deterministic labelings over a
// 3-kind alphabet; leaves vary between terminals, empty nonterminals and ws
// markers depending on the labeling
inline cstkit::CstNode label_shape(const std::vector<std::size_t>& shape,
                                   int labeling) {
  using cstkit::CstNode;
  static const char* kinds[] = {"a", "b", "c"};
  std::size_t pos = 0;
  auto build = [&](auto&& self, std::size_t depth) -> CstNode {
    std::size_t index = pos;
    std::size_t nchildren = shape[pos++];
    if (nchildren == 0 && index != 0) {
      switch (labeling) {
        case 0: return CstNode::terminal(kinds[index % 3]);
        case 1: return CstNode::nonterminal(kinds[(index + depth) % 3]);
        default:
          if (index % 3 == 0) return CstNode::ws_marker(cstkit::WsKind::newline);
          if (index % 3 == 1) return CstNode::terminal("p q");
          return CstNode::nonterminal(kinds[depth % 3]);
      }
    }
    CstNode node = CstNode::nonterminal(kinds[(index + labeling) % 3]);
    for (std::size_t i = 0; i < nchildren; ++i)
      node.children.push_back(self(self, depth + 1));
    return node;
  };
  return build(build, 0);
}

}  // namespace testsupport
