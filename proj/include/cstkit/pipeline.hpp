#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cstkit/objectives.hpp"

namespace cstkit {

enum class RejectReason {
  parse_fatal,
  parse_errors,
  missing_nl,
  no_candidates,
  length_cap,
};
std::string_view reject_reason_name(RejectReason reason);

struct GenerateOptions {
  std::set<Objective> objectives;
  MaskingConfig mask;
  std::size_t shard_size = 100'000;  // examples per shard file
  std::size_t length_cap = 4096;     // serialized-token cap per record
  unsigned threads = 1;
  std::filesystem::path out_dir;
};

struct ObjectiveTally {
  std::size_t emitted = 0;
  std::size_t rejected = 0;
  std::size_t shards = 0;
  std::map<std::string, std::size_t> reject_reasons;
};

struct GenerateSummary {
  std::size_t ingested = 0;
  std::map<std::string, ObjectiveTally> per_objective;  // keyed by objective name
};

// Generates every requested objective for every record, writing
// <objective>-NNNNN.jsonl shards, rejects.jsonl and summary.json under
// out_dir. One example or one reject per (record, objective). Output is
// deterministic for a fixed corpus, seed and input order regardless of
// thread count. Throws IoFailure.
GenerateSummary run_generate(const std::vector<CorpusRecord>& records,
                             const GenerateOptions& options);

// per-record seed: stable mix of the base seed and the record id
std::uint64_t record_seed(std::uint64_t base_seed, std::string_view record_id);

std::string summary_to_json(const GenerateSummary& summary);

}  // namespace cstkit
