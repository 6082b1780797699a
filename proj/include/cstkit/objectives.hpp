#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cstkit/corpus.hpp"
#include "cstkit/serialize.hpp"

namespace cstkit {

enum class Objective { msp, mnp, tetr, trte, declm };

std::string_view objective_name(Objective obj);
std::optional<Objective> objective_from_name(std::string_view name);
const std::vector<Objective>& all_objectives();

struct MaskingConfig {
  double mask_ratio = 0.15;  // fraction of all tree nodes to mask
  std::uint64_t rng_seed = 0;
  std::size_t max_sentinels = 99;  // cap on masked spans per example
};

// fixed sentinel spellings; all of them land in the vocab manifest
namespace sentinels {
inline constexpr std::size_t span_count = 100;  // <MASK_0> .. <MASK_99>
inline constexpr std::string_view node_mask = "<NODE_MASK>";
inline constexpr std::string_view nl_separator = "<NL_SEP>";
std::string span_sentinel(std::size_t i);
// returns the index i if piece spells <MASK_i>
std::optional<std::size_t> parse_span_sentinel(std::string_view piece);
}  // namespace sentinels

struct ObjectiveExample {
  Objective objective = Objective::msp;
  std::string input;
  std::string target;
  std::string record_id;
  Language language = Language::python;
  std::uint64_t seed = 0;
};

// Masked-span selection: draws non-root non-terminals without replacement,
// rejecting any candidate nested with an already selected one, until the
// masked node total first reaches ceil(mask_ratio * total_nodes) or the
// candidate pool / sentinel cap runs out. Returned in left-to-right order.
// Deterministic in rng_seed. Throws NoCandidates.
std::vector<const CstNode*> select_mask_subtrees(const CstTree& tree,
                                                 const MaskingConfig& config);

// subtree-masking pair: input has each selected subtree's token span
// replaced by <MASK_i>; target lists <MASK_i> followed by that subtree's
// tokens, closed by a final <MASK_k>
ObjectiveExample make_msp(const CstTree& tree, const MaskingConfig& config);

// node-masking pair: every open/close marker becomes <NODE_MASK> in the
// input; target is the original markers in order
ObjectiveExample make_mnp(const CstTree& tree);

// text<->tree pairs; throw MissingNL when the record has no nl
ObjectiveExample make_tetr(const CorpusRecord& record);
ObjectiveExample make_trte(const CorpusRecord& record);
ObjectiveExample make_tetr(const CorpusRecord& record, const CstTree& tree);
ObjectiveExample make_trte(const CorpusRecord& record, const CstTree& tree);

// decoder-only sequence: z, or nl <NL_SEP> z when nl is present; target
// equals input (the trainer shifts internally)
ObjectiveExample make_declm(const CorpusRecord& record);
ObjectiveExample make_declm(const CorpusRecord& record, const CstTree& tree);

}  // namespace cstkit
