#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <unordered_set>

#include "cstkit/errors.hpp"
#include "cstkit/objectives.hpp"
#include "cstkit/parse.hpp"
#include "support/objective_oracles.hpp"
#include "support/tree_gen.hpp"

using namespace cstkit;
using namespace testsupport;

namespace {

CstTree wrap(CstNode root) {
  CstTree tree;
  tree.root = std::move(root);
  tree.language = Language::python;
  return tree;
}

bool is_ancestor(const CstNode* up, const CstNode* down) {
  if (up == down) return true;
  for (const auto& c : up->children)
    if (is_ancestor(&c, down)) return true;
  return false;
}

}  // namespace

TEST_CASE("sentinel spellings") {
  CHECK(sentinels::span_sentinel(0) == "<MASK_0>");
  CHECK(sentinels::span_sentinel(99) == "<MASK_99>");
  CHECK(sentinels::parse_span_sentinel("<MASK_17>") == 17);
  CHECK_FALSE(sentinels::parse_span_sentinel("<MASK_>").has_value());
  CHECK_FALSE(sentinels::parse_span_sentinel("<MASK_1x>").has_value());
  CHECK_FALSE(sentinels::parse_span_sentinel("MASK_1").has_value());
}

TEST_CASE("selection is deterministic, non-nested and budget bound") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    CstTree tree = wrap(mask_bench_tree(rng));
    MaskingConfig cfg;
    cfg.rng_seed = rng();

    auto a = select_mask_subtrees(tree, cfg);
    auto b = select_mask_subtrees(tree, cfg);
    CHECK(a == b);

    // pairwise non-nesting
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = x + 1; y < a.size(); ++y) {
        CHECK_FALSE(is_ancestor(a[x], a[y]));
        CHECK_FALSE(is_ancestor(a[y], a[x]));
      }

    // all candidates are non-root nonterminals
    for (const CstNode* n : a) {
      CHECK(n->is_nonterminal());
      CHECK(n != &tree.root);
    }

    std::size_t total = node_stats(tree).total_nodes;
    std::size_t budget =
        static_cast<std::size_t>(std::ceil(cfg.mask_ratio * double(total)));
    std::size_t masked = 0;
    std::size_t largest = 0;
    for (const CstNode* n : a) {
      std::size_t size = node_stats(*n).total_nodes;
      masked += size;
      largest = std::max(largest, size);
    }
    CHECK(masked >= budget);
    // stopping at the first draw that reaches the budget keeps the total
    // under budget + the largest selected subtree
    CHECK(masked < budget + largest);
  }
}

TEST_CASE("selection returns subtrees left to right") {
  std::mt19937_64 rng(5);
  CstTree tree = wrap(mask_bench_tree(rng));
  MaskingConfig cfg;
  cfg.rng_seed = 123;
  auto picked = select_mask_subtrees(tree, cfg);

  std::vector<const CstNode*> preorder;
  walk(tree.root, [&](const CstNode& n) { preorder.push_back(&n); });
  std::size_t last = 0;
  for (const CstNode* n : picked) {
    std::size_t at =
        std::find(preorder.begin(), preorder.end(), n) - preorder.begin();
    CHECK(at >= last);
    last = at;
  }
}

TEST_CASE("no candidates throws") {
  CstTree flat = wrap(CstNode::nonterminal(
      "m", {CstNode::terminal("a"), CstNode::terminal("b")}));
  CHECK_THROWS_AS(select_mask_subtrees(flat, MaskingConfig{}), NoCandidates);
}

TEST_CASE("sentinel cap limits the number of spans") {
  // a wide tree of single-node subtrees forces many small draws
  CstNode root = CstNode::nonterminal("m");
  for (int i = 0; i < 2000; ++i)
    root.children.push_back(CstNode::nonterminal("u"));
  CstTree tree = wrap(std::move(root));
  MaskingConfig cfg;
  cfg.mask_ratio = 0.15;
  cfg.rng_seed = 9;
  auto picked = select_mask_subtrees(tree, cfg);
  CHECK(picked.size() <= cfg.max_sentinels);
  CHECK(picked.size() == cfg.max_sentinels);  // budget 301 > 99 singles
}

TEST_CASE("subtree masking splices back to the original stream") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    CstTree tree = wrap(mask_bench_tree(rng));
    MaskingConfig cfg;
    cfg.rng_seed = rng();
    ObjectiveExample ex = make_msp(tree, cfg);

    auto rebuilt = msp_splice_back(ex.input, ex.target);
    REQUIRE(rebuilt.has_value());
    CHECK(*rebuilt == stream_text(serialize(tree)));

    // sentinel count in the input matches the selection
    auto picked = select_mask_subtrees(tree, cfg);
    std::size_t in_sentinels = 0;
    for (const auto& piece : split_pieces(ex.input))
      if (sentinels::parse_span_sentinel(piece)) ++in_sentinels;
    CHECK(in_sentinels == picked.size());
  }
}

TEST_CASE("node masking hides exactly the structural markers") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    CstTree tree = wrap(random_tree(rng, 2, 80));
    ObjectiveExample ex = make_mnp(tree);

    for (const auto& piece : split_pieces(ex.input)) {
      StructToken tok = classify_piece(piece);
      CHECK(tok.kind != StructToken::Kind::open);
      CHECK(tok.kind != StructToken::Kind::close);
    }
    std::size_t nts = node_stats(tree).non_terminals;
    CHECK(split_pieces(ex.target).size() == 2 * nts);

    auto rebuilt = mnp_zip_back(ex.input, ex.target);
    REQUIRE(rebuilt.has_value());
    CHECK(*rebuilt == stream_text(serialize(tree)));
  }
}

TEST_CASE("text tree pairs") {
  CorpusRecord rec;
  rec.id = "r1";
  rec.language = Language::python;
  rec.code = "x = 1\n";
  rec.nl = "assigns one to x";

  ObjectiveExample tetr = make_tetr(rec);
  CHECK(tetr.input == "assigns one to x");
  CHECK(tetr.target.rfind("(_.module", 0) == 0);
  CHECK(tetr.record_id == "r1");

  ObjectiveExample trte = make_trte(rec);
  CHECK(trte.input == tetr.target);
  CHECK(trte.target == tetr.input);

  rec.nl.reset();
  CHECK_THROWS_AS(make_tetr(rec), MissingNL);
  CHECK_THROWS_AS(make_trte(rec), MissingNL);
}

TEST_CASE("decoder sequences inline the separator only with text") {
  CorpusRecord rec;
  rec.id = "r2";
  rec.language = Language::python;
  rec.code = "y = 2\n";

  ObjectiveExample bare = make_declm(rec);
  CHECK(bare.input == bare.target);
  CHECK(bare.input.rfind("(_.module", 0) == 0);
  CHECK(bare.input.find(sentinels::nl_separator) == std::string::npos);

  rec.nl = "sets y";
  ObjectiveExample with_nl = make_declm(rec);
  CHECK(with_nl.input == with_nl.target);
  CHECK(with_nl.input.rfind("sets y ", 0) == 0);
  CHECK(with_nl.input.find("<NL_SEP> (_.module") != std::string::npos);
}

TEST_CASE("masked fraction stays in the analytical window") {
  std::mt19937_64 rng(77);
  double sum_fraction = 0;
  int n = 500;
  for (int i = 0; i < n; ++i) {
    CstTree tree = wrap(mask_bench_tree(rng));
    MaskingConfig cfg;
    cfg.rng_seed = rng();
    auto picked = select_mask_subtrees(tree, cfg);
    double total = double(node_stats(tree).total_nodes);
    double masked = 0;
    double largest = 0;
    for (const CstNode* node : picked) {
      double size = double(node_stats(*node).total_nodes);
      masked += size;
      largest = std::max(largest, size);
    }
    double fraction = masked / total;
    CHECK(fraction >= 0.15);
    CHECK(fraction <= 0.15 + largest / total);
    sum_fraction += fraction;
  }
  double mean = sum_fraction / n;
  CHECK(mean >= 0.14);
  CHECK(mean <= 0.18);
}
