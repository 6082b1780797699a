#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cstkit/language.hpp"

namespace cstkit {

struct CorpusRecord {
  std::string id;
  Language language = Language::python;
  std::string code;
  std::optional<std::string> nl;
};

enum class IngestFormat { jsonl, dir };
std::optional<IngestFormat> ingest_format_from_name(std::string_view name);

struct IngestResult {
  std::vector<CorpusRecord> records;
  std::size_t malformed = 0;   // unparseable lines / unreadable files
  std::size_t duplicates = 0;  // repeated ids, kept first
};

// jsonl: one object per line, {id, language, code} with optional nl (or
// docstring as an alias). dir: one record per source file, language from
// the extension, id = relative path.
IngestResult ingest(const std::filesystem::path& path, IngestFormat format);

struct LanguageCount {
  std::size_t with_nl = 0;
  std::size_t without_nl = 0;
  std::size_t total() const { return with_nl + without_nl; }
};

struct CorpusStats {
  std::map<std::string, LanguageCount> per_language;  // keyed by language name
  std::size_t records = 0;
  std::size_t parse_failures = 0;
  double parse_failure_rate = 0.0;
  // serialized-token count divided by whitespace-split code token count,
  // over parseable records only
  double expansion_mean = 0.0;
  double expansion_p50 = 0.0;
  double expansion_p90 = 0.0;
  double expansion_p99 = 0.0;
  // histogram of serialized stream lengths, bucketed by powers of two
  std::map<std::size_t, std::size_t> length_histogram;  // bucket upper bound -> count
};

CorpusStats compute_stats(const std::vector<CorpusRecord>& records);

// rows like "Go 347,665 379,103 726,768" plus a Total row
std::string render_stats_table(const CorpusStats& stats);

// "Go", "JavaScript", "C#", ... for known names; capitalized otherwise
std::string display_language(std::string_view name);

std::string format_thousands(std::uint64_t value);

}  // namespace cstkit
