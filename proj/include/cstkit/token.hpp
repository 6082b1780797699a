#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cstkit {

enum class WsKind : std::uint8_t { newline, indent, dedent, blank_line };

std::string_view ws_spelling(WsKind ws);
std::optional<WsKind> ws_from_spelling(std::string_view piece);

// One token of a serialized tree stream. Open/close markers carry a node
// kind, terminals carry the raw (unescaped) payload, ws tokens carry a
// whitespace marker.
struct StructToken {
  enum class Kind : std::uint8_t { open, close, terminal, ws };

  Kind kind = Kind::terminal;
  std::string text;  // node kind for open/close, raw payload for terminal
  WsKind ws = WsKind::newline;

  static StructToken open(std::string node_kind);
  static StructToken close(std::string node_kind);
  static StructToken terminal(std::string payload);
  static StructToken ws_marker(WsKind ws);

  bool operator==(const StructToken&) const = default;
};

// Reversible payload escaping. The escaped form contains no whitespace and
// can never be confused with an open/close marker or a ws spelling:
//   space -> _          _  -> \_        \ -> \\
//   \n \t \r \f \v -> two-char escapes
//   ( -> \(   ) -> \)
//   empty payload -> \=   (and \= is prepended when the escaped form would
//   collide with a reserved spelling)
std::string escape_payload(std::string_view raw);
std::string unescape_payload(std::string_view piece);

std::string open_marker(std::string_view kind);   // "(_." + kind
std::string close_marker(std::string_view kind);  // kind + "._)"

// text form of a single token
std::string token_spelling(const StructToken& tok);

// classify one whitespace-free piece; anything unrecognized is a terminal
StructToken classify_piece(std::string_view piece);

}  // namespace cstkit
