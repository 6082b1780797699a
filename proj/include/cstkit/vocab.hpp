#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cstkit/corpus.hpp"

namespace cstkit {

struct VocabManifest {
  int version = 1;
  std::map<std::string, std::vector<std::string>> language_kinds;  // lang name -> sorted kinds
  std::vector<std::string> markers;    // 2 tokens per kind in the union
  std::vector<std::string> ws;         // ws marker spellings
  std::vector<std::string> sentinels;  // <MASK_i>, <NODE_MASK>, <NL_SEP>
};

// every visible node kind the grammar can produce (aliases included,
// hidden rules and ERROR excluded)
std::vector<std::string> declared_kinds(Language lang);

struct CollectedKinds {
  std::map<Language, std::set<std::string>> kinds;
  std::size_t skipped = 0;  // records that failed to parse cleanly
};

// kinds observed by parsing the corpus, merged with each touched
// language's declared inventory so rare rules still tokenize as one token
CollectedKinds collect_kinds(const std::vector<CorpusRecord>& records,
                             const std::set<Language>& languages,
                             bool include_declared = true);

VocabManifest emit_manifest(const std::map<Language, std::set<std::string>>& kinds);

std::string manifest_to_json(const VocabManifest& manifest);

// true when the piece is covered by the manifest or is plain text (i.e. not
// a structural marker / ws marker / sentinel missing from the manifest)
bool piece_covered(const VocabManifest& manifest, std::string_view piece);

}  // namespace cstkit
