#pragma once

#include <string>
#include <vector>

#include "cstkit/tree.hpp"

namespace cstkit {

// Reconstruct code text from a tree. Whitespace-sensitive languages are
// laid out from their newline/indent/dedent markers; free-form languages
// use a canonical single-space join with punctuation-aware suppression and
// per-statement line breaks. The contract is parse stability: the output
// re-parses to an equal tree, not to byte-identical text.
std::string render(const CstTree& tree);

// same, but also recomputes every node's span from the rendered text
std::string render_assign_spans(CstTree& tree);

}  // namespace cstkit
