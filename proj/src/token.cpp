#include "cstkit/token.hpp"

namespace cstkit {

std::string_view ws_spelling(WsKind ws) {
  switch (ws) {
    case WsKind::newline: return "newline";
    case WsKind::indent: return "indent";
    case WsKind::dedent: return "dedent";
    case WsKind::blank_line: return "\\n\\n";
  }
  return "?";
}

std::optional<WsKind> ws_from_spelling(std::string_view piece) {
  if (piece == "newline") return WsKind::newline;
  if (piece == "indent") return WsKind::indent;
  if (piece == "dedent") return WsKind::dedent;
  if (piece == "\\n\\n") return WsKind::blank_line;
  return std::nullopt;
}

StructToken StructToken::open(std::string node_kind) {
  return {Kind::open, std::move(node_kind), WsKind::newline};
}
StructToken StructToken::close(std::string node_kind) {
  return {Kind::close, std::move(node_kind), WsKind::newline};
}
StructToken StructToken::terminal(std::string payload) {
  return {Kind::terminal, std::move(payload), WsKind::newline};
}
StructToken StructToken::ws_marker(WsKind ws) {
  return {Kind::ws, {}, ws};
}

std::string escape_payload(std::string_view raw) {
  if (raw.empty()) return "\\=";
  std::string out;
  out.reserve(raw.size() + 4);
  for (char c : raw) {
    switch (c) {
      case ' ': out += '_'; break;
      case '_': out += "\\_"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\f': out += "\\f"; break;
      case '\v': out += "\\v"; break;
      case '(': out += "\\("; break;
      case ')': out += "\\)"; break;
      default: out += c;
    }
  }
  // "newline" etc. are valid payloads; shield them from the ws classifier
  if (ws_from_spelling(out)) out.insert(0, "\\=");
  return out;
}

std::string unescape_payload(std::string_view piece) {
  std::string out;
  out.reserve(piece.size());
  for (std::size_t i = 0; i < piece.size(); ++i) {
    char c = piece[i];
    if (c == '_') {
      out += ' ';
      continue;
    }
    if (c != '\\' || i + 1 == piece.size()) {
      out += c;
      continue;
    }
    char e = piece[++i];
    switch (e) {
      case '_': out += '_'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case 'f': out += '\f'; break;
      case 'v': out += '\v'; break;
      case '(': out += '('; break;
      case ')': out += ')'; break;
      case '=': break;  // empty-payload / collision shield, expands to nothing
      default: out += e;  // unknown escape: keep the character
    }
  }
  return out;
}

std::string open_marker(std::string_view kind) {
  return "(_." + std::string(kind);
}

std::string close_marker(std::string_view kind) {
  return std::string(kind) + "._)";
}

std::string token_spelling(const StructToken& tok) {
  switch (tok.kind) {
    case StructToken::Kind::open: return open_marker(tok.text);
    case StructToken::Kind::close: return close_marker(tok.text);
    case StructToken::Kind::terminal: return escape_payload(tok.text);
    case StructToken::Kind::ws: return std::string(ws_spelling(tok.ws));
  }
  return {};
}

StructToken classify_piece(std::string_view piece) {
  if (auto ws = ws_from_spelling(piece)) return StructToken::ws_marker(*ws);
  if (piece.size() > 3 && piece.substr(0, 3) == "(_.")
    return StructToken::open(std::string(piece.substr(3)));
  if (piece.size() > 3 && piece.substr(piece.size() - 3) == "._)")
    return StructToken::close(std::string(piece.substr(0, piece.size() - 3)));
  return StructToken::terminal(unescape_payload(piece));
}

}  // namespace cstkit
