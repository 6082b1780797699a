// acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each check is self-contained and uses its own oracles.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "cstkit/decode.hpp"
#include "cstkit/errors.hpp"
#include "cstkit/objectives.hpp"
#include "cstkit/parse.hpp"
#include "cstkit/pipeline.hpp"
#include "cstkit/render.hpp"
#include "cstkit/serialize.hpp"
#include "cstkit/vocab.hpp"
#include "support/forge.hpp"
#include "support/objective_oracles.hpp"
#include "support/tree_gen.hpp"

using namespace cstkit;
using testsupport::split_pieces;
namespace fs = std::filesystem;

namespace {

StructToken O(const char* kind) { return StructToken::open(kind); }
StructToken C(const char* kind) { return StructToken::close(kind); }
StructToken T(const char* payload) { return StructToken::terminal(payload); }
StructToken W(WsKind ws) { return StructToken::ws_marker(ws); }

void append(std::vector<StructToken>& out, std::vector<StructToken> part) {
  for (auto& t : part) out.push_back(std::move(t));
}

std::vector<StructToken> ident(const char* name) {
  return {O("identifier"), T(name), C("identifier")};
}

// ---- reference fixtures ----

bool check_fixtures(std::string& detail) {
  const char* py_src = "def add_nums(a, b):\n  c = a + b\n  return c\n";
  CstTree py = parse(py_src, Language::python);
  if (py.had_errors) {
    detail = "python fixture failed to parse cleanly";
    return false;
  }
  std::vector<StructToken> expect;
  append(expect, {O("module"), O("function_definition"), T("def")});
  append(expect, ident("add_nums"));
  append(expect, {O("parameters"), T("(")});
  append(expect, ident("a"));
  append(expect, {T(",")});
  append(expect, ident("b"));
  append(expect, {T(")"), C("parameters"), T(":"), W(WsKind::indent),
                  O("block"), O("expression_statement"), O("assignment")});
  append(expect, ident("c"));
  append(expect, {T("="), O("binary_operator")});
  append(expect, ident("a"));
  append(expect, {T("+")});
  append(expect, ident("b"));
  append(expect, {C("binary_operator"), C("assignment"),
                  C("expression_statement"), W(WsKind::newline),
                  O("return_statement"), T("return")});
  append(expect, ident("c"));
  append(expect, {C("return_statement"), W(WsKind::newline), W(WsKind::dedent),
                  C("block"), C("function_definition"), C("module")});
  if (serialize(py).tokens != expect) {
    detail = "python stream diverges from the reference serialization";
    return false;
  }

  const char* go_src =
      "func main() {\n"
      "\tfmt.Println(\"7.0/3.0 =\", 7.0/3.0)\n"
      "\n"
      "\tfmt.Println(true && false)\n"
      "}\n";
  CstTree go = parse(go_src, Language::go);
  if (go.had_errors || go.root.children.empty() ||
      go.root.children[0].kind() != "function_declaration") {
    detail = "go fixture did not parse into a function declaration";
    return false;
  }
  std::vector<StructToken> got;
  serialize_node(go.root.children[0], got);

  auto call = [&](std::vector<StructToken> args) {
    std::vector<StructToken> out;
    append(out, {O("call_expression"), O("selector_expression")});
    append(out, ident("fmt"));
    append(out, {T("."), O("field_identifier"), T("Println"),
                 C("field_identifier"), C("selector_expression"),
                 O("argument_list"), T("(")});
    append(out, std::move(args));
    append(out, {T(")"), C("argument_list"), C("call_expression")});
    return out;
  };
  std::vector<StructToken> go_expect;
  append(go_expect, {O("function_declaration"), T("func")});
  append(go_expect, ident("main"));
  append(go_expect, {O("parameter_list"), T("("), T(")"), C("parameter_list"),
                     O("block"), T("{")});
  std::vector<StructToken> args1;
  append(args1, {O("interpreted_string_literal"), T("\"7.0/3.0 =\""),
                 C("interpreted_string_literal"), T(","),
                 O("binary_expression"), O("float_literal"), T("7.0"),
                 C("float_literal"), T("/"), O("float_literal"), T("3.0"),
                 C("float_literal"), C("binary_expression")});
  append(go_expect, call(std::move(args1)));
  append(go_expect, {W(WsKind::blank_line)});
  std::vector<StructToken> args2;
  append(args2, {O("binary_expression"), T("true"), T("&&"), T("false"),
                 C("binary_expression")});
  append(go_expect, call(std::move(args2)));
  append(go_expect, {T("\n"), T("}"), C("block"), C("function_declaration")});
  if (got != go_expect) {
    detail = "go stream diverges from the reference serialization";
    return false;
  }
  detail = "python and go streams match token for token";
  return true;
}

// ---- round-trip suite ----

bool check_round_trips(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  auto files = testsupport::forge_corpus(260, 2024);  // 1040 files, 4 languages

  std::size_t parseable = 0;
  std::size_t tree_trips = 0;
  std::size_t text_trips = 0;
  std::vector<std::string> failures;
  for (const auto& file : files) {
    CstTree tree;
    try {
      tree = parse(file.code, file.lang);
    } catch (const Error&) {
      failures.push_back(file.name + " (parse threw)");
      continue;
    }
    if (tree.had_errors) {
      failures.push_back(file.name + " (parse errors)");
      continue;
    }
    ++parseable;
    CstTree back = deserialize(serialize(tree));
    if (node_equal(back.root, tree.root)) ++tree_trips;
    else failures.push_back(file.name + " (stream trip)");

    CstTree again = parse(render(tree), file.lang);
    if (!again.had_errors && tree_equal(tree, again)) ++text_trips;
    else failures.push_back(file.name + " (text trip)");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start).count();
  for (std::size_t i = 0; i < failures.size() && i < 10; ++i)
    std::cout << "         failure: " << failures[i] << "\n";

  if (parseable < files.size()) {
    detail = "only " + std::to_string(parseable) + "/" +
             std::to_string(files.size()) + " files parseable";
    return false;
  }
  if (tree_trips != parseable) {
    detail = std::to_string(parseable - tree_trips) + " stream trips failed";
    return false;
  }
  double stable = double(text_trips) / double(parseable);
  if (stable < 0.999) {
    detail = "text round trip rate " + std::to_string(stable) + " below 0.999";
    return false;
  }
  if (secs >= 120.0) {
    detail = "suite took " + std::to_string(secs) + "s (budget 120s)";
    return false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu files, stream trips 100%%, text trips %.4f%%, %.1fs",
                files.size(), 100.0 * stable, secs);
  detail = buf;
  return true;
}

// ---- masking sweeps ----

struct MaskSweep {
  bool msp_ok = true;
  bool mnp_ok = true;
  std::string msp_detail;
  std::string mnp_detail;
};

MaskSweep run_mask_sweep() {
  MaskSweep sweep;
  std::mt19937_64 rng(31337);
  const int instances = 10000;
  double fraction_sum = 0;
  int window_violations = 0;
  int splice_failures = 0;
  int marker_leaks = 0;
  int target_size_bad = 0;
  int zip_failures = 0;

  for (int i = 0; i < instances; ++i) {
    CstTree tree;
    tree.root = testsupport::mask_bench_tree(rng);
    tree.language = Language::python;
    MaskingConfig cfg;
    cfg.rng_seed = rng();

    NodeStats stats = node_stats(tree);
    auto picked = select_mask_subtrees(tree, cfg);
    double masked = 0;
    double largest = 0;
    for (const CstNode* node : picked) {
      double size = double(node_stats(*node).total_nodes);
      masked += size;
      largest = std::max(largest, size);
    }
    double fraction = masked / double(stats.total_nodes);
    fraction_sum += fraction;
    if (fraction < 0.15 || fraction > 0.15 + largest / double(stats.total_nodes))
      ++window_violations;

    ObjectiveExample msp = make_msp(tree, cfg);
    auto rebuilt = testsupport::msp_splice_back(msp.input, msp.target);
    if (!rebuilt || *rebuilt != stream_text(serialize(tree))) ++splice_failures;

    ObjectiveExample mnp = make_mnp(tree);
    for (const auto& piece : split_pieces(mnp.input)) {
      StructToken tok = classify_piece(piece);
      if (tok.kind == StructToken::Kind::open ||
          tok.kind == StructToken::Kind::close) {
        ++marker_leaks;
        break;
      }
    }
    if (split_pieces(mnp.target).size() != 2 * stats.non_terminals)
      ++target_size_bad;
    auto zipped = testsupport::mnp_zip_back(mnp.input, mnp.target);
    if (!zipped || *zipped != stream_text(serialize(tree))) ++zip_failures;
  }

  double mean = fraction_sum / instances;
  char buf[200];
  if (window_violations > 0 || splice_failures > 0 || mean < 0.14 || mean > 0.18) {
    sweep.msp_ok = false;
    std::snprintf(buf, sizeof buf,
                  "window violations %d, splice failures %d, mean %.4f",
                  window_violations, splice_failures, mean);
    sweep.msp_detail = buf;
  } else {
    std::snprintf(buf, sizeof buf,
                  "%d instances in window, splice-back 100%%, mean %.4f",
                  instances, mean);
    sweep.msp_detail = buf;
  }
  if (marker_leaks > 0 || target_size_bad > 0 || zip_failures > 0) {
    sweep.mnp_ok = false;
    std::snprintf(buf, sizeof buf,
                  "marker leaks %d, bad target sizes %d, zip failures %d",
                  marker_leaks, target_size_bad, zip_failures);
    sweep.mnp_detail = buf;
  } else {
    std::snprintf(buf, sizeof buf,
                  "no marker leaks, |target| = 2x non-terminals, zip-back "
                  "100%% over %d instances",
                  instances);
    sweep.mnp_detail = buf;
  }
  return sweep;
}

// ---- exhaustive small-instance oracle ----

// brute force mask validity: all selected are non-root nonterminals,
// pairwise non-nested, budget reached unless the pool or cap ran out, and
// some selected subtree accounts for the final overshoot
bool mask_selection_valid(const CstTree& tree,
                          const std::vector<const CstNode*>& picked,
                          const MaskingConfig& cfg) {
  std::vector<const CstNode*> all;
  walk(tree.root, [&](const CstNode& n) { all.push_back(&n); });
  auto contains = [&](const CstNode* up, const CstNode* down) {
    bool found = false;
    walk(*up, [&](const CstNode& n) { found |= (&n == down); });
    return found;
  };

  std::vector<const CstNode*> pool;
  for (const CstNode* n : all)
    if (n != &tree.root && n->is_nonterminal()) pool.push_back(n);

  for (const CstNode* n : picked) {
    if (n == &tree.root || !n->is_nonterminal()) return false;
    if (std::count(pool.begin(), pool.end(), n) != 1) return false;
  }
  for (std::size_t i = 0; i < picked.size(); ++i)
    for (std::size_t j = i + 1; j < picked.size(); ++j)
      if (contains(picked[i], picked[j]) || contains(picked[j], picked[i]))
        return false;

  std::size_t total = node_stats(tree).total_nodes;
  std::size_t budget =
      static_cast<std::size_t>(std::ceil(cfg.mask_ratio * double(total)));
  std::size_t masked = 0;
  std::size_t largest = 0;
  for (const CstNode* n : picked) {
    std::size_t size = node_stats(*n).total_nodes;
    masked += size;
    largest = std::max(largest, size);
  }
  if (masked >= budget) {
    // selection stops at the draw that first reaches the budget, so removing
    // some selected subtree must dip back under it
    (void)largest;
    for (const CstNode* n : picked)
      if (masked - node_stats(*n).total_nodes < budget) return true;
    return false;
  }
  // under budget: only legal when everything maskable was taken or the
  // sentinel cap was hit
  if (picked.size() == cfg.max_sentinels) return true;
  for (const CstNode* n : pool) {
    bool in_selection = std::count(picked.begin(), picked.end(), n) > 0;
    bool nested_with_pick = false;
    for (const CstNode* p : picked)
      if (p != n && (contains(p, n) || contains(n, p))) nested_with_pick = true;
    if (!in_selection && !nested_with_pick) return false;  // free candidate ignored
  }
  return true;
}

bool check_small_oracle(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::size_t trees = 0;
  std::size_t stream_collisions = 0;
  std::size_t trip_failures = 0;
  std::size_t mask_failures = 0;
  std::unordered_map<std::string, CstNode> seen;

  for (std::size_t n = 1; n <= 10; ++n) {
    for (const auto& shape : testsupport::tree_shapes(n)) {
      for (int labeling = 0; labeling < 3; ++labeling) {
        CstTree tree;
        tree.root = testsupport::label_shape(shape, labeling);
        tree.language = Language::python;
        ++trees;

        SerializedTree stream = serialize(tree);
        std::string text = stream_text(stream);
        auto it = seen.find(text);
        if (it == seen.end()) {
          seen.emplace(text, tree.root);
        } else if (!node_equal(it->second, tree.root)) {
          ++stream_collisions;  // same stream, different tree: not injective
        }

        CstTree back = deserialize({lex_stream(text), tree.language});
        if (!node_equal(back.root, tree.root)) ++trip_failures;

        bool has_candidate = false;
        walk(tree.root, [&](const CstNode& node) {
          if (&node != &tree.root && node.is_nonterminal()) has_candidate = true;
        });
        for (std::uint64_t seed : {1ull, 99ull}) {
          MaskingConfig cfg;
          cfg.rng_seed = seed;
          try {
            auto picked = select_mask_subtrees(tree, cfg);
            auto again = select_mask_subtrees(tree, cfg);
            if (picked != again || !has_candidate ||
                !mask_selection_valid(tree, picked, cfg))
              ++mask_failures;
          } catch (const NoCandidates&) {
            if (has_candidate) ++mask_failures;
          }
        }
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start).count();
  if (stream_collisions || trip_failures || mask_failures) {
    detail = "collisions " + std::to_string(stream_collisions) + ", trips " +
             std::to_string(trip_failures) + ", mask " +
             std::to_string(mask_failures);
    return false;
  }
  if (secs >= 60.0) {
    detail = "oracle took " + std::to_string(secs) + "s (budget 60s)";
    return false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu trees bijective, selections match brute force, %.1fs",
                trees, secs);
  detail = buf;
  return true;
}

// ---- closed vocabulary ----

bool check_vocab_closure(std::string& detail) {
  auto files = testsupport::forge_corpus(40, 9001);
  auto records = testsupport::corpus_records(files);
  std::set<Language> langs = {Language::python, Language::go, Language::java,
                              Language::javascript};
  VocabManifest manifest = emit_manifest(collect_kinds(records, langs).kinds);

  fs::path out = fs::temp_directory_path() / "cstkit_acceptance_vocab";
  fs::remove_all(out);
  GenerateOptions opt;
  for (Objective obj : all_objectives()) opt.objectives.insert(obj);
  opt.mask.rng_seed = 7;
  opt.out_dir = out;
  run_generate(records, opt);

  std::size_t pieces = 0;
  std::size_t unknown = 0;
  std::string first_unknown;
  for (const auto& entry : fs::directory_iterator(out)) {
    auto name = entry.path().filename().string();
    if (name == "rejects.jsonl" || name == "summary.json") continue;
    std::ifstream in(entry.path());
    std::string line;
    while (std::getline(in, line)) {
      auto j = nlohmann::json::parse(line);
      for (const char* key : {"input", "target"}) {
        for (const auto& piece : split_pieces(j[key].get<std::string>())) {
          ++pieces;
          if (!piece_covered(manifest, piece)) {
            ++unknown;
            if (first_unknown.empty()) first_unknown = piece;
          }
        }
      }
    }
  }
  if (unknown > 0) {
    detail = std::to_string(unknown) + " unknown pieces, first: " + first_unknown;
    return false;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "0 unknowns across %zu stream pieces", pieces);
  detail = buf;
  return true;
}

// ---- decode fuzz ----

bool check_decode_fuzz(std::string& detail) {
  std::mt19937_64 rng(4242);
  const int instances = 10000;
  int lenient_failures = 0;
  int strict_misses = 0;
  int idempotence_failures = 0;
  int corrupted = 0;

  for (int i = 0; i < instances; ++i) {
    CstTree tree;
    // keep at least two opens and two terminals so three edits can never
    // erase both salvage routes
    do {
      tree.root = testsupport::random_tree(rng, 6, 30);
      NodeStats s = node_stats(tree);
      if (s.non_terminals >= 2 && s.terminals >= 2) break;
    } while (true);
    tree.language = (i % 2) ? Language::go : Language::python;
    auto tokens = serialize(tree).tokens;

    std::uniform_int_distribution<int> which(0, 2);
    int edits = 1 + int(rng() % 3);
    for (int e = 0; e < edits && tokens.size() > 1; ++e) {
      std::size_t at =
          std::uniform_int_distribution<std::size_t>(0, tokens.size() - 1)(rng);
      switch (which(rng)) {
        case 0: tokens.erase(tokens.begin() + at); break;
        case 1: {
          StructToken dup = tokens[at];
          std::size_t to =
              std::uniform_int_distribution<std::size_t>(0, tokens.size())(rng);
          tokens.insert(tokens.begin() + to, std::move(dup));
          break;
        }
        default: {
          std::size_t to = std::uniform_int_distribution<std::size_t>(
              0, tokens.size() - 1)(rng);
          std::swap(tokens[at], tokens[to]);
        }
      }
    }
    std::string text = tokens_text(tokens);

    try {
      to_code(text, tree.language, DecodeMode::lenient);
    } catch (const Error&) {
      ++lenient_failures;
      continue;
    }
    if (!stream_valid(tokens)) {
      ++corrupted;
      bool rejected = false;
      try {
        to_code(text, tree.language, DecodeMode::strict);
      } catch (const Error&) {
        rejected = true;
      }
      if (!rejected) ++strict_misses;
    }
    try {
      auto [fixed, report] = repair(tokens);
      if (!report.fallback_only) {
        auto [fixed2, report2] = repair(fixed);
        if (!report2.actions.empty() || fixed2 != fixed)
          ++idempotence_failures;
      }
    } catch (const Unrepairable&) {
      ++lenient_failures;
    }
  }
  if (lenient_failures || strict_misses || idempotence_failures) {
    detail = "lenient failures " + std::to_string(lenient_failures) +
             ", strict misses " + std::to_string(strict_misses) +
             ", idempotence " + std::to_string(idempotence_failures);
    return false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d corruptions decoded, %d invalid all rejected by strict",
                instances, corrupted);
  detail = buf;
  return true;
}

// ---- pipeline determinism, ledger, stats row ----

bool check_pipeline(std::string& detail) {
  auto files = testsupport::forge_corpus(30, 11);
  auto records = testsupport::corpus_records(files);

  fs::path out1 = fs::temp_directory_path() / "cstkit_acceptance_p1";
  fs::path out2 = fs::temp_directory_path() / "cstkit_acceptance_p2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  GenerateOptions opt;
  for (Objective obj : all_objectives()) opt.objectives.insert(obj);
  opt.mask.rng_seed = 99;
  opt.shard_size = 37;
  opt.out_dir = out1;
  GenerateSummary s1 = run_generate(records, opt);
  opt.out_dir = out2;
  opt.threads = 4;
  GenerateSummary s2 = run_generate(records, opt);

  for (const auto& [name, tally] : s1.per_objective)
    if (tally.emitted + tally.rejected != s1.ingested) {
      detail = "ledger leak in " + name;
      return false;
    }

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  for (const auto& entry : fs::directory_iterator(out1)) {
    fs::path twin = out2 / entry.path().filename();
    if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) {
      detail = "byte mismatch in " + entry.path().filename().string();
      return false;
    }
  }

  CorpusStats fixture;
  fixture.per_language["go"] = {347665, 379103};
  std::string table = render_stats_table(fixture);
  if (table.find("Go 347,665 379,103 726,768") == std::string::npos) {
    detail = "stats row format diverged";
    return false;
  }
  (void)s2;
  detail = "byte-identical shards across thread counts, ledger balanced, "
           "stats row exact";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };

  MaskSweep sweep;
  bool sweep_done = false;
  auto ensure_sweep = [&] {
    if (!sweep_done) {
      sweep = run_mask_sweep();
      sweep_done = true;
    }
  };

  std::vector<Criterion> criteria = {
      {1, "reference fixtures", check_fixtures},
      {2, "round-trip suite", check_round_trips},
      {3, "subtree masking budget",
       [&](std::string& d) {
         ensure_sweep();
         d = sweep.msp_detail;
         return sweep.msp_ok;
       }},
      {4, "node masking properties",
       [&](std::string& d) {
         ensure_sweep();
         d = sweep.mnp_detail;
         return sweep.mnp_ok;
       }},
      {5, "small-instance oracle", check_small_oracle},
      {6, "closed vocabulary", check_vocab_closure},
      {7, "decode fuzz", check_decode_fuzz},
      {8, "pipeline determinism and ledger", check_pipeline},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.id << " "
              << criterion.name << ": " << detail << "\n";
  }
  if (failures) std::cout << failures << " criteria failed\n";
  else std::cout << "all criteria passed\n";
  return failures == 0 ? 0 : 1;
}
