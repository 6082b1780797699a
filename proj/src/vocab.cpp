#include "cstkit/vocab.hpp"

#include <tree_sitter/api.h>

#include <json.hpp>

#include "cstkit/errors.hpp"
#include "cstkit/objectives.hpp"
#include "cstkit/parse.hpp"
#include "cstkit/serialize.hpp"

extern "C" {
const TSLanguage* tree_sitter_python(void);
const TSLanguage* tree_sitter_go(void);
const TSLanguage* tree_sitter_java(void);
const TSLanguage* tree_sitter_javascript(void);
}

namespace cstkit {

namespace {

const TSLanguage* grammar_of(Language lang) {
  switch (lang) {
    case Language::python: return tree_sitter_python();
    case Language::go: return tree_sitter_go();
    case Language::java: return tree_sitter_java();
    case Language::javascript: return tree_sitter_javascript();
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> declared_kinds(Language lang) {
  const TSLanguage* g = grammar_of(lang);
  std::set<std::string> kinds;
  uint32_t n = ts_language_symbol_count(g);
  for (uint32_t i = 0; i < n; ++i) {
    if (ts_language_symbol_type(g, static_cast<uint16_t>(i)) != TSSymbolTypeRegular)
      continue;
    std::string name = ts_language_symbol_name(g, static_cast<uint16_t>(i));
    if (name.empty() || name[0] == '_' || name == "ERROR") continue;
    kinds.insert(std::move(name));
  }
  return {kinds.begin(), kinds.end()};
}

CollectedKinds collect_kinds(const std::vector<CorpusRecord>& records,
                             const std::set<Language>& languages,
                             bool include_declared) {
  CollectedKinds out;
  for (Language lang : languages) {
    auto& set = out.kinds[lang];
    if (include_declared)
      for (auto& k : declared_kinds(lang)) set.insert(k);
  }
  for (const auto& rec : records) {
    auto it = out.kinds.find(rec.language);
    if (it == out.kinds.end()) continue;
    try {
      CstTree tree = parse(rec.code, rec.language);
      if (tree.had_errors) {
        ++out.skipped;
        continue;
      }
      walk(tree.root, [&](const CstNode& node) {
        if (node.is_nonterminal()) it->second.insert(node.kind());
      });
    } catch (const Error&) {
      ++out.skipped;
    }
  }
  return out;
}

VocabManifest emit_manifest(const std::map<Language, std::set<std::string>>& kinds) {
  VocabManifest m;
  std::set<std::string> all;
  for (const auto& [lang, set] : kinds) {
    if (set.empty()) throw EmptyKinds();
    m.language_kinds[std::string(language_name(lang))] = {set.begin(), set.end()};
    all.insert(set.begin(), set.end());
  }
  for (const auto& k : all) {
    m.markers.push_back(open_marker(k));
    m.markers.push_back(close_marker(k));
  }
  m.ws = {std::string(ws_spelling(WsKind::newline)),
          std::string(ws_spelling(WsKind::indent)),
          std::string(ws_spelling(WsKind::dedent)),
          std::string(ws_spelling(WsKind::blank_line))};
  for (std::size_t i = 0; i < sentinels::span_count; ++i)
    m.sentinels.push_back(sentinels::span_sentinel(i));
  m.sentinels.push_back(std::string(sentinels::node_mask));
  m.sentinels.push_back(std::string(sentinels::nl_separator));
  return m;
}

std::string manifest_to_json(const VocabManifest& m) {
  nlohmann::ordered_json j;
  j["version"] = m.version;
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (const auto& [name, kinds] : m.language_kinds) langs[name] = kinds;
  j["languages"] = std::move(langs);
  j["markers"] = m.markers;
  j["ws"] = m.ws;
  j["sentinels"] = m.sentinels;
  return j.dump(2) + "\n";
}

bool piece_covered(const VocabManifest& m, std::string_view piece) {
  std::string p(piece);
  for (const auto& s : m.ws)
    if (s == p) return true;
  for (const auto& s : m.sentinels)
    if (s == p) return true;
  StructToken tok = classify_piece(p);
  if (tok.kind == StructToken::Kind::open || tok.kind == StructToken::Kind::close) {
    for (const auto& s : m.markers)
      if (s == p) return true;
    return false;
  }
  // terminal payloads are handled by subword tokenization downstream
  return tok.kind == StructToken::Kind::terminal;
}

}  // namespace cstkit
