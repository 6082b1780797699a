#pragma once

#include <string_view>

#include "cstkit/tree.hpp"

namespace cstkit {

// Parse source into a CST. Grammar error-recovery nodes are kept and the
// tree is flagged via had_errors. Throws ParseFatal if the parser yields
// no tree at all.
CstTree parse(std::string_view source, Language lang);

}  // namespace cstkit
