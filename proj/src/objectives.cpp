#include "cstkit/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "cstkit/errors.hpp"
#include "cstkit/parse.hpp"

namespace cstkit {

std::string_view objective_name(Objective obj) {
  switch (obj) {
    case Objective::msp: return "msp";
    case Objective::mnp: return "mnp";
    case Objective::tetr: return "tetr";
    case Objective::trte: return "trte";
    case Objective::declm: return "declm";
  }
  return "?";
}

std::optional<Objective> objective_from_name(std::string_view name) {
  for (Objective o : all_objectives())
    if (name == objective_name(o)) return o;
  return std::nullopt;
}

const std::vector<Objective>& all_objectives() {
  static const std::vector<Objective> objs = {Objective::msp, Objective::mnp,
                                              Objective::tetr, Objective::trte,
                                              Objective::declm};
  return objs;
}

namespace sentinels {

std::string span_sentinel(std::size_t i) {
  return "<MASK_" + std::to_string(i) + ">";
}

std::optional<std::size_t> parse_span_sentinel(std::string_view piece) {
  if (piece.size() < 8 || piece.substr(0, 6) != "<MASK_" || piece.back() != '>')
    return std::nullopt;
  std::size_t value = 0;
  for (char c : piece.substr(6, piece.size() - 7)) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

}  // namespace sentinels

namespace {

// uniform draw in [0, n) that behaves identically on every platform
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

struct NodeInfo {
  const CstNode* node;
  std::size_t preorder;  // position of the open marker
  std::size_t subtree_exit;
  std::size_t subtree_size;  // nodes in the subtree, this one included
};

void index_nodes(const CstNode& node, std::vector<NodeInfo>& infos,
                 std::size_t& counter) {
  std::size_t my = counter++;
  std::size_t before = infos.size();
  infos.push_back({&node, my, 0, 1});
  std::size_t me = before;
  for (const auto& c : node.children) index_nodes(c, infos, counter);
  infos[me].subtree_exit = counter;
  infos[me].subtree_size = infos[me].subtree_exit - infos[me].preorder;
}

bool nested(const NodeInfo& a, const NodeInfo& b) {
  auto inside = [](const NodeInfo& x, const NodeInfo& y) {
    return y.preorder <= x.preorder && x.subtree_exit <= y.subtree_exit;
  };
  return inside(a, b) || inside(b, a);
}

}  // namespace

std::vector<const CstNode*> select_mask_subtrees(const CstTree& tree,
                                                 const MaskingConfig& config) {
  std::vector<NodeInfo> infos;
  std::size_t counter = 0;
  index_nodes(tree.root, infos, counter);

  std::vector<std::size_t> pool;  // candidate indexes into infos
  for (std::size_t i = 1; i < infos.size(); ++i)
    if (infos[i].node->is_nonterminal()) pool.push_back(i);
  if (pool.empty()) throw NoCandidates();

  const std::size_t total = infos[0].subtree_size;
  const auto budget = static_cast<std::size_t>(
      std::ceil(config.mask_ratio * static_cast<double>(total)));

  std::mt19937_64 rng(config.rng_seed);
  std::vector<std::size_t> selected;
  std::size_t masked = 0;
  while (masked < budget && selected.size() < config.max_sentinels && !pool.empty()) {
    std::size_t at = bounded_draw(rng, pool.size());
    std::size_t candidate = pool[at];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
    bool blocked = false;
    for (std::size_t s : selected)
      if (nested(infos[candidate], infos[s])) {
        blocked = true;
        break;
      }
    if (blocked) continue;
    selected.push_back(candidate);
    masked += infos[candidate].subtree_size;
  }

  std::sort(selected.begin(), selected.end(), [&](std::size_t a, std::size_t b) {
    return infos[a].preorder < infos[b].preorder;
  });
  std::vector<const CstNode*> out;
  out.reserve(selected.size());
  for (std::size_t s : selected) out.push_back(infos[s].node);
  return out;
}

namespace {

// token index range [open, close] of every node, in serialize() order
void token_ranges(const CstNode& node,
                  std::unordered_map<const CstNode*, std::pair<std::size_t, std::size_t>>& map,
                  std::size_t& cursor) {
  std::size_t open = cursor++;
  for (const auto& c : node.children)
    if (c.is_nonterminal()) token_ranges(c, map, cursor);
    else map[&c] = {cursor, cursor++};
  if (node.is_nonterminal()) {
    map[&node] = {open, cursor};
    ++cursor;
  } else {
    // leaf root: single token
    map[&node] = {open, open};
  }
}

std::string join_range(const std::vector<StructToken>& tokens, std::size_t from,
                       std::size_t to, std::string& out) {
  for (std::size_t i = from; i <= to; ++i) {
    if (!out.empty()) out += ' ';
    out += token_spelling(tokens[i]);
  }
  return out;
}

}  // namespace

ObjectiveExample make_msp(const CstTree& tree, const MaskingConfig& config) {
  auto selected = select_mask_subtrees(tree, config);
  SerializedTree stream = serialize(tree);

  std::unordered_map<const CstNode*, std::pair<std::size_t, std::size_t>> ranges;
  std::size_t cursor = 0;
  token_ranges(tree.root, ranges, cursor);

  std::string input;
  std::string target;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    auto [open, close] = ranges.at(selected[i]);
    join_range(stream.tokens, pos, open - 1, input);
    if (!input.empty()) input += ' ';
    input += sentinels::span_sentinel(i);
    if (!target.empty()) target += ' ';
    target += sentinels::span_sentinel(i);
    join_range(stream.tokens, open, close, target);
    pos = close + 1;
  }
  if (pos < stream.tokens.size())
    join_range(stream.tokens, pos, stream.tokens.size() - 1, input);
  if (!target.empty()) target += ' ';
  target += sentinels::span_sentinel(selected.size());

  ObjectiveExample ex;
  ex.objective = Objective::msp;
  ex.input = std::move(input);
  ex.target = std::move(target);
  ex.language = tree.language;
  ex.seed = config.rng_seed;
  return ex;
}

ObjectiveExample make_mnp(const CstTree& tree) {
  SerializedTree stream = serialize(tree);
  std::string input;
  std::string target;
  for (const auto& t : stream.tokens) {
    if (!input.empty()) input += ' ';
    if (t.kind == StructToken::Kind::open || t.kind == StructToken::Kind::close) {
      input += sentinels::node_mask;
      if (!target.empty()) target += ' ';
      target += token_spelling(t);
    } else {
      input += token_spelling(t);
    }
  }
  ObjectiveExample ex;
  ex.objective = Objective::mnp;
  ex.input = std::move(input);
  ex.target = std::move(target);
  ex.language = tree.language;
  return ex;
}

namespace {

CstTree parse_record(const CorpusRecord& record) {
  return parse(record.code, record.language);
}

}  // namespace

ObjectiveExample make_tetr(const CorpusRecord& record, const CstTree& tree) {
  if (!record.nl || record.nl->empty()) throw MissingNL(record.id);
  ObjectiveExample ex;
  ex.objective = Objective::tetr;
  ex.input = *record.nl;
  ex.target = stream_text(serialize(tree));
  ex.record_id = record.id;
  ex.language = record.language;
  return ex;
}

ObjectiveExample make_trte(const CorpusRecord& record, const CstTree& tree) {
  ObjectiveExample ex = make_tetr(record, tree);
  ex.objective = Objective::trte;
  std::swap(ex.input, ex.target);
  return ex;
}

ObjectiveExample make_declm(const CorpusRecord& record, const CstTree& tree) {
  ObjectiveExample ex;
  ex.objective = Objective::declm;
  std::string z = stream_text(serialize(tree));
  if (record.nl && !record.nl->empty()) {
    ex.input = *record.nl;
    ex.input += ' ';
    ex.input += sentinels::nl_separator;
    ex.input += ' ';
    ex.input += z;
  } else {
    ex.input = std::move(z);
  }
  ex.target = ex.input;
  ex.record_id = record.id;
  ex.language = record.language;
  return ex;
}

ObjectiveExample make_tetr(const CorpusRecord& record) {
  return make_tetr(record, parse_record(record));
}
ObjectiveExample make_trte(const CorpusRecord& record) {
  return make_trte(record, parse_record(record));
}
ObjectiveExample make_declm(const CorpusRecord& record) {
  return make_declm(record, parse_record(record));
}

}  // namespace cstkit
