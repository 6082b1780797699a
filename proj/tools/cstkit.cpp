// command line front end: parse, serialize, render, mask, vocab, corpus
// generation, stats and decode over files or stdin

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cstkit/corpus.hpp"
#include "cstkit/decode.hpp"
#include "cstkit/errors.hpp"
#include "cstkit/objectives.hpp"
#include "cstkit/parse.hpp"
#include "cstkit/pipeline.hpp"
#include "cstkit/render.hpp"
#include "cstkit/serialize.hpp"
#include "cstkit/vocab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitDecode = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cstkit::IoFailure(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cstkit::IoFailure(path);
  out << content;
  if (!out) throw cstkit::IoFailure(path);
}

cstkit::Language resolve_language(const std::string& flag,
                                  const std::string& input_path) {
  if (!flag.empty()) {
    auto lang = cstkit::language_from_name(flag);
    if (!lang) throw UsageError("unknown language: " + flag);
    return *lang;
  }
  if (input_path != "-") {
    auto ext = std::filesystem::path(input_path).extension().string();
    if (auto lang = cstkit::language_from_extension(ext)) return *lang;
  }
  throw UsageError("--language required (cannot infer from input)");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::set<cstkit::Objective> parse_objectives(const std::string& flag) {
  std::set<cstkit::Objective> out;
  for (const auto& name : split_commas(flag)) {
    auto obj = cstkit::objective_from_name(name);
    if (!obj) throw UsageError("unknown objective: " + name);
    out.insert(*obj);
  }
  if (out.empty()) throw UsageError("--objectives must name at least one");
  return out;
}

cstkit::IngestFormat parse_format(const std::string& flag) {
  auto fmt = cstkit::ingest_format_from_name(flag);
  if (!fmt) throw UsageError("unknown format: " + flag);
  return *fmt;
}

std::string stats_json(const cstkit::CstTree& tree) {
  cstkit::NodeStats s = cstkit::node_stats(tree);
  nlohmann::ordered_json j;
  j["language"] = std::string(cstkit::language_name(tree.language));
  j["total_nodes"] = s.total_nodes;
  j["non_terminals"] = s.non_terminals;
  j["terminals"] = s.terminals;
  j["ws_markers"] = s.ws_markers;
  j["depth"] = s.depth;
  j["had_errors"] = tree.had_errors;
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concrete syntax tree toolkit"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string out;
  std::string language;
  std::string objectives = "msp";
  std::string format = "jsonl";
  std::string languages;
  double mask_ratio = 0.15;
  std::uint64_t seed = 0;
  std::size_t shard_size = 100'000;
  unsigned threads = 1;
  bool strict = false;
  bool lenient = false;

  auto add_common = [&](CLI::App* cmd, bool with_language) {
    cmd->add_option("input", input, "input file, or - for stdin");
    cmd->add_option("--out", out, "output file, or - for stdout");
    if (with_language)
      cmd->add_option("--language", language, "source language");
  };

  auto* cmd_parse = app.add_subcommand("parse", "parse source, report node stats");
  add_common(cmd_parse, true);
  auto* cmd_serialize = app.add_subcommand("serialize", "source to token stream");
  add_common(cmd_serialize, true);
  auto* cmd_deserialize =
      app.add_subcommand("deserialize", "validate a token stream, report stats");
  add_common(cmd_deserialize, true);
  auto* cmd_render = app.add_subcommand("render", "token stream to source text");
  add_common(cmd_render, true);

  auto* cmd_mask = app.add_subcommand("mask", "masking pairs from source");
  add_common(cmd_mask, true);
  cmd_mask->add_option("--objectives", objectives, "msp,mnp");
  cmd_mask->add_option("--mask-ratio", mask_ratio, "fraction of nodes to mask");
  cmd_mask->add_option("--seed", seed, "rng seed");

  auto* cmd_vocab = app.add_subcommand("vocab", "emit tokenizer vocab manifest");
  add_common(cmd_vocab, false);
  cmd_vocab->add_option("--format", format, "jsonl|dir");
  cmd_vocab->add_option("--language", languages,
                        "comma separated languages (default: all)");

  auto* cmd_generate =
      app.add_subcommand("generate", "training examples for a corpus");
  add_common(cmd_generate, false);
  cmd_generate->add_option("--format", format, "jsonl|dir");
  cmd_generate->add_option("--objectives", objectives, "comma separated list");
  cmd_generate->add_option("--mask-ratio", mask_ratio, "fraction of nodes to mask");
  cmd_generate->add_option("--seed", seed, "rng seed");
  cmd_generate->add_option("--shard-size", shard_size, "examples per shard");
  cmd_generate->add_option("--threads", threads, "worker threads");

  auto* cmd_stats = app.add_subcommand("stats", "corpus statistics report");
  add_common(cmd_stats, false);
  cmd_stats->add_option("--format", format, "jsonl|dir");

  auto* cmd_decode = app.add_subcommand("decode", "token stream back to code");
  add_common(cmd_decode, true);
  cmd_decode->add_flag("--strict", strict, "fail on any malformed stream");
  cmd_decode->add_flag("--lenient", lenient, "repair malformed streams (default)");

  try {
    app.parse(argc, argv);

    if (app.got_subcommand(cmd_parse)) {
      auto lang = resolve_language(language, input);
      auto tree = cstkit::parse(read_input(input), lang);
      write_output(out, stats_json(tree));
    } else if (app.got_subcommand(cmd_serialize)) {
      auto lang = resolve_language(language, input);
      auto tree = cstkit::parse(read_input(input), lang);
      write_output(out, cstkit::stream_text(cstkit::serialize(tree)) + "\n");
    } else if (app.got_subcommand(cmd_deserialize)) {
      auto lang = resolve_language(language, "-");
      auto tokens = cstkit::lex_stream(read_input(input));
      auto tree = cstkit::deserialize({std::move(tokens), lang});
      write_output(out, stats_json(tree));
    } else if (app.got_subcommand(cmd_render)) {
      auto lang = resolve_language(language, "-");
      auto tokens = cstkit::lex_stream(read_input(input));
      auto tree = cstkit::deserialize({std::move(tokens), lang});
      write_output(out, cstkit::render(tree));
    } else if (app.got_subcommand(cmd_mask)) {
      auto lang = resolve_language(language, input);
      auto tree = cstkit::parse(read_input(input), lang);
      std::string lines;
      for (auto obj : parse_objectives(objectives)) {
        cstkit::ObjectiveExample ex;
        if (obj == cstkit::Objective::msp) {
          cstkit::MaskingConfig cfg;
          cfg.mask_ratio = mask_ratio;
          cfg.rng_seed = seed;
          ex = cstkit::make_msp(tree, cfg);
        } else if (obj == cstkit::Objective::mnp) {
          ex = cstkit::make_mnp(tree);
        } else {
          throw UsageError("mask supports msp,mnp only");
        }
        nlohmann::ordered_json j;
        j["objective"] = std::string(cstkit::objective_name(ex.objective));
        j["input"] = ex.input;
        j["target"] = ex.target;
        lines += j.dump() + "\n";
      }
      write_output(out, lines);
    } else if (app.got_subcommand(cmd_vocab)) {
      std::set<cstkit::Language> langs;
      if (languages.empty()) {
        for (auto lang : cstkit::all_languages()) langs.insert(lang);
      } else {
        for (const auto& name : split_commas(languages)) {
          auto lang = cstkit::language_from_name(name);
          if (!lang) throw UsageError("unknown language: " + name);
          langs.insert(*lang);
        }
      }
      std::vector<cstkit::CorpusRecord> records;
      if (!cmd_vocab->get_option("input")->empty() && input != "-") {
        auto ingested = cstkit::ingest(input, parse_format(format));
        records = std::move(ingested.records);
      }
      auto manifest =
          cstkit::emit_manifest(cstkit::collect_kinds(records, langs, true).kinds);
      write_output(out, cstkit::manifest_to_json(manifest));
    } else if (app.got_subcommand(cmd_generate)) {
      if (out.empty() || out == "-")
        throw UsageError("generate requires --out <directory>");
      auto ingested = cstkit::ingest(input, parse_format(format));
      cstkit::GenerateOptions options;
      options.objectives = parse_objectives(objectives);
      options.mask.mask_ratio = mask_ratio;
      options.mask.rng_seed = seed;
      options.shard_size = shard_size;
      options.threads = threads;
      options.out_dir = out;
      auto summary = cstkit::run_generate(ingested.records, options);
      std::cout << cstkit::summary_to_json(summary);
    } else if (app.got_subcommand(cmd_stats)) {
      auto ingested = cstkit::ingest(input, parse_format(format));
      auto stats = cstkit::compute_stats(ingested.records);
      std::ostringstream report;
      report << cstkit::render_stats_table(stats);
      report << "parse_failure_rate " << stats.parse_failure_rate << "\n";
      report << "expansion mean " << stats.expansion_mean << " p50 "
             << stats.expansion_p50 << " p90 " << stats.expansion_p90
             << " p99 " << stats.expansion_p99 << "\n";
      write_output(out, report.str());
    } else if (app.got_subcommand(cmd_decode)) {
      if (strict && lenient)
        throw UsageError("--strict and --lenient are exclusive");
      auto lang = resolve_language(language, "-");
      auto mode =
          strict ? cstkit::DecodeMode::strict : cstkit::DecodeMode::lenient;
      auto result = cstkit::to_code(read_input(input), lang, mode);
      write_output(out, result.code);
      if (mode == cstkit::DecodeMode::lenient) {
        std::string report = cstkit::repair_report_to_json(result.report);
        if (out.empty() || out == "-") std::cerr << report;
        else write_output(out + ".report.json", report);
      }
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cstkit::UnknownLanguage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cstkit::UnknownFormat& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cstkit::IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cstkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDecode;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
