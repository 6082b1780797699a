#include "cstkit/pipeline.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "cstkit/corpus.hpp"
#include "cstkit/errors.hpp"
#include "cstkit/parse.hpp"
#include "cstkit/serialize.hpp"

namespace fs = std::filesystem;

namespace cstkit {

std::string_view reject_reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::parse_fatal: return "parse_fatal";
    case RejectReason::parse_errors: return "parse_errors";
    case RejectReason::missing_nl: return "missing_nl";
    case RejectReason::no_candidates: return "no_candidates";
    case RejectReason::length_cap: return "length_cap";
  }
  return "?";
}

std::uint64_t record_seed(std::uint64_t base_seed, std::string_view record_id) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : record_id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  // splitmix64 finalizer over the combined value
  std::uint64_t z = base_seed ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

struct Produced {
  bool ok = false;
  std::string payload;  // example JSON line when ok, reason name otherwise
};

struct RecordResult {
  std::vector<std::pair<Objective, Produced>> items;
};

std::string example_line(const ObjectiveExample& ex) {
  nlohmann::ordered_json j;
  j["id"] = ex.record_id;
  j["objective"] = std::string(objective_name(ex.objective));
  j["input"] = ex.input;
  j["target"] = ex.target;
  j["language"] = std::string(language_name(ex.language));
  j["seed"] = ex.seed;
  return j.dump();
}

RecordResult process_record(const CorpusRecord& rec,
                            const GenerateOptions& options) {
  RecordResult result;
  auto reject_all = [&](RejectReason reason) {
    for (Objective obj : all_objectives())
      if (options.objectives.count(obj))
        result.items.push_back(
            {obj, {false, std::string(reject_reason_name(reason))}});
  };

  CstTree tree;
  try {
    tree = parse(rec.code, rec.language);
  } catch (const Error&) {
    reject_all(RejectReason::parse_fatal);
    return result;
  }
  if (tree.had_errors) {
    reject_all(RejectReason::parse_errors);
    return result;
  }
  SerializedTree stream = serialize(tree);
  if (stream.tokens.size() > options.length_cap) {
    reject_all(RejectReason::length_cap);
    return result;
  }

  const std::uint64_t seed = record_seed(options.mask.rng_seed, rec.id);
  for (Objective obj : all_objectives()) {
    if (!options.objectives.count(obj)) continue;
    Produced p;
    try {
      ObjectiveExample ex;
      switch (obj) {
        case Objective::msp: {
          MaskingConfig cfg = options.mask;
          cfg.rng_seed = seed;
          ex = make_msp(tree, cfg);
          break;
        }
        case Objective::mnp: ex = make_mnp(tree); break;
        case Objective::tetr: ex = make_tetr(rec, tree); break;
        case Objective::trte: ex = make_trte(rec, tree); break;
        case Objective::declm: ex = make_declm(rec, tree); break;
      }
      ex.record_id = rec.id;
      ex.seed = seed;
      p.ok = true;
      p.payload = example_line(ex);
    } catch (const MissingNL&) {
      p.payload = reject_reason_name(RejectReason::missing_nl);
    } catch (const NoCandidates&) {
      p.payload = reject_reason_name(RejectReason::no_candidates);
    }
    result.items.push_back({obj, std::move(p)});
  }
  return result;
}

class ShardWriter {
 public:
  ShardWriter(fs::path dir, std::string name, std::size_t cap)
      : dir_(std::move(dir)), name_(std::move(name)), cap_(cap) {}

  void write(const std::string& line) {
    if (!out_.is_open() || written_ == cap_) roll();
    out_ << line << '\n';
    ++written_;
  }

  std::size_t shards() const { return shards_; }

  void close() {
    if (out_.is_open() && !out_) throw IoFailure((dir_ / name_).string());
    out_.close();
  }

 private:
  void roll() {
    out_.close();
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "-%05zu.jsonl", shards_);
    fs::path file = dir_ / (name_ + suffix);
    out_.open(file);
    if (!out_) throw IoFailure(file.string());
    ++shards_;
    written_ = 0;
  }

  fs::path dir_;
  std::string name_;
  std::size_t cap_;
  std::ofstream out_;
  std::size_t written_ = 0;
  std::size_t shards_ = 0;
};

}  // namespace

GenerateSummary run_generate(const std::vector<CorpusRecord>& records,
                             const GenerateOptions& options) {
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) throw IoFailure(options.out_dir.string());

  std::vector<RecordResult> results(records.size());
  unsigned workers = std::max(1u, options.threads);
  if (workers <= 1 || records.size() < 2) {
    for (std::size_t i = 0; i < records.size(); ++i)
      results[i] = process_record(records[i], options);
  } else {
    workers = std::min<unsigned>(workers, static_cast<unsigned>(records.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= records.size()) break;
          results[i] = process_record(records[i], options);
        }
      });
    for (auto& t : pool) t.join();
  }

  GenerateSummary summary;
  summary.ingested = records.size();

  std::map<Objective, ShardWriter> writers;
  for (Objective obj : all_objectives())
    if (options.objectives.count(obj))
      writers.emplace(obj, ShardWriter(options.out_dir,
                                       std::string(objective_name(obj)),
                                       options.shard_size));

  fs::path rejects_path = options.out_dir / "rejects.jsonl";
  std::ofstream rejects(rejects_path);
  if (!rejects) throw IoFailure(rejects_path.string());

  for (std::size_t i = 0; i < records.size(); ++i) {
    for (auto& [obj, produced] : results[i].items) {
      auto& tally = summary.per_objective[std::string(objective_name(obj))];
      if (produced.ok) {
        writers.at(obj).write(produced.payload);
        ++tally.emitted;
      } else {
        ++tally.rejected;
        ++tally.reject_reasons[produced.payload];
        nlohmann::ordered_json j;
        j["id"] = records[i].id;
        j["objective"] = std::string(objective_name(obj));
        j["reason"] = produced.payload;
        rejects << j.dump() << '\n';
      }
    }
  }
  for (auto& [obj, writer] : writers) {
    writer.close();
    summary.per_objective[std::string(objective_name(obj))].shards =
        writer.shards();
  }
  if (!rejects) throw IoFailure(rejects_path.string());
  rejects.close();

  fs::path summary_path = options.out_dir / "summary.json";
  std::ofstream sfile(summary_path);
  if (!sfile) throw IoFailure(summary_path.string());
  sfile << summary_to_json(summary);
  if (!sfile) throw IoFailure(summary_path.string());
  return summary;
}

std::string summary_to_json(const GenerateSummary& summary) {
  nlohmann::ordered_json j;
  j["ingested"] = summary.ingested;
  nlohmann::ordered_json objectives = nlohmann::ordered_json::object();
  for (const auto& [name, tally] : summary.per_objective) {
    nlohmann::ordered_json t;
    t["emitted"] = tally.emitted;
    t["rejected"] = tally.rejected;
    t["shards"] = tally.shards;
    t["reject_reasons"] = tally.reject_reasons;
    objectives[name] = std::move(t);
  }
  j["objectives"] = std::move(objectives);
  return j.dump(2) + "\n";
}

}  // namespace cstkit
