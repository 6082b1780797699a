#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cstkit/serialize.hpp"

namespace cstkit {

enum class RepairAction : std::uint8_t {
  drop_stray_close,      // Close with nothing open before the root
  insert_missing_close,  // stream ended with markers still open
  retag_kind,            // Close kind rewritten to the innermost open kind
  demote_to_terminal,    // root would close early; marker kept as payload
  drop_stray_terminal,   // terminal or ws marker before the first Open
};
std::string_view repair_action_name(RepairAction action);

struct RepairStep {
  std::size_t position = 0;  // index into the input token list
  RepairAction action = RepairAction::drop_stray_close;
  std::string detail;  // new kind for retag/insert; empty otherwise
};

struct RepairReport {
  std::vector<RepairStep> actions;
  bool repaired = false;
  // no Open marker anywhere: the stream cannot become a tree and only a
  // terminal-text fallback is possible
  bool fallback_only = false;
};

// Greedy single-pass repair with a kind stack. The output satisfies the
// stream invariants whenever the input contains at least one Open marker;
// valid input comes back unchanged. Throws Unrepairable when there is
// neither an Open marker nor a terminal to salvage.
std::pair<std::vector<StructToken>, RepairReport> repair(
    const std::vector<StructToken>& tokens);

// applies a report's actions to the original token list; used to check that
// reports replay to the repaired stream
std::vector<StructToken> replay_repairs(const std::vector<StructToken>& tokens,
                                        const RepairReport& report);

enum class DecodeMode { strict, lenient };

struct DecodeResult {
  std::string code;
  RepairReport report;
  bool used_fallback = false;  // code is just the terminal payloads joined
};

// lex -> (repair in lenient mode) -> deserialize -> render. Strict mode
// throws on any invariant violation; lenient mode additionally falls back
// to joining terminal payloads when no tree can be built at all.
DecodeResult to_code(std::string_view text, Language lang, DecodeMode mode);

std::string repair_report_to_json(const RepairReport& report);

}  // namespace cstkit
