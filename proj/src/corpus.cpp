#include "cstkit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unordered_set>

#include "cstkit/errors.hpp"
#include "cstkit/parse.hpp"
#include "cstkit/serialize.hpp"

namespace fs = std::filesystem;

namespace cstkit {

std::optional<IngestFormat> ingest_format_from_name(std::string_view name) {
  if (name == "jsonl") return IngestFormat::jsonl;
  if (name == "dir") return IngestFormat::dir;
  return std::nullopt;
}

namespace {

std::optional<CorpusRecord> record_from_json(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("id") || !j["id"].is_string()) return std::nullopt;
  if (!j.contains("language") || !j["language"].is_string()) return std::nullopt;
  if (!j.contains("code") || !j["code"].is_string()) return std::nullopt;
  auto lang = language_from_name(j["language"].get<std::string>());
  if (!lang) return std::nullopt;
  CorpusRecord rec;
  rec.id = j["id"].get<std::string>();
  rec.language = *lang;
  rec.code = j["code"].get<std::string>();
  if (rec.code.empty()) return std::nullopt;
  for (const char* key : {"nl", "docstring"})
    if (j.contains(key) && j[key].is_string()) {
      rec.nl = j[key].get<std::string>();
      break;
    }
  return rec;
}

IngestResult ingest_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure(path.string());
  IngestResult out;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = record_from_json(line);
    if (!rec) {
      ++out.malformed;
      continue;
    }
    if (!seen.insert(rec->id).second) {
      ++out.duplicates;
      continue;
    }
    out.records.push_back(std::move(*rec));
  }
  return out;
}

IngestResult ingest_dir(const fs::path& path) {
  if (!fs::is_directory(path)) throw IoFailure(path.string());
  IngestResult out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(path))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    auto lang = language_from_extension(file.extension().string());
    if (!lang) continue;
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      ++out.malformed;
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string code = buf.str();
    if (code.empty()) {
      ++out.malformed;
      continue;
    }
    CorpusRecord rec;
    rec.id = fs::relative(file, path).generic_string();
    rec.language = *lang;
    rec.code = std::move(code);
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

IngestResult ingest(const fs::path& path, IngestFormat format) {
  switch (format) {
    case IngestFormat::jsonl: return ingest_jsonl(path);
    case IngestFormat::dir: return ingest_dir(path);
  }
  throw UnknownFormat("?");
}

namespace {

std::size_t ws_token_count(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : text) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

double nearest_rank(std::vector<double>& sorted, double pct) {
  if (sorted.empty()) return 0.0;
  auto rank = static_cast<std::size_t>(
      std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

std::size_t length_bucket(std::size_t n) {
  std::size_t bound = 1;
  while (bound < n) bound <<= 1;
  return bound;
}

}  // namespace

CorpusStats compute_stats(const std::vector<CorpusRecord>& records) {
  CorpusStats stats;
  std::vector<double> ratios;
  for (const auto& rec : records) {
    ++stats.records;
    auto& count = stats.per_language[std::string(language_name(rec.language))];
    if (rec.nl && !rec.nl->empty()) ++count.with_nl;
    else ++count.without_nl;
    try {
      CstTree tree = parse(rec.code, rec.language);
      if (tree.had_errors) {
        ++stats.parse_failures;
        continue;
      }
      SerializedTree stream = serialize(tree);
      std::size_t code_tokens = ws_token_count(rec.code);
      if (code_tokens > 0)
        ratios.push_back(static_cast<double>(stream.tokens.size()) /
                         static_cast<double>(code_tokens));
      ++stats.length_histogram[length_bucket(stream.tokens.size())];
    } catch (const Error&) {
      ++stats.parse_failures;
    }
  }
  if (stats.records > 0)
    stats.parse_failure_rate = static_cast<double>(stats.parse_failures) /
                               static_cast<double>(stats.records);
  if (!ratios.empty()) {
    double sum = 0.0;
    for (double r : ratios) sum += r;
    stats.expansion_mean = sum / static_cast<double>(ratios.size());
    std::sort(ratios.begin(), ratios.end());
    stats.expansion_p50 = nearest_rank(ratios, 50.0);
    stats.expansion_p90 = nearest_rank(ratios, 90.0);
    stats.expansion_p99 = nearest_rank(ratios, 99.0);
  }
  return stats;
}

std::string format_thousands(std::uint64_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  std::size_t lead = digits.size() % 3;
  if (lead == 0) lead = 3;
  out.append(digits, 0, lead);
  for (std::size_t i = lead; i < digits.size(); i += 3) {
    out += ',';
    out.append(digits, i, 3);
  }
  return out;
}

std::string display_language(std::string_view name) {
  static const std::map<std::string_view, std::string_view> known = {
      {"go", "Go"},           {"ruby", "Ruby"},
      {"python", "Python"},   {"java", "Java"},
      {"javascript", "JavaScript"}, {"php", "PHP"},
      {"c", "C"},             {"csharp", "C#"},
  };
  auto it = known.find(name);
  if (it != known.end()) return std::string(it->second);
  std::string out(name);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string render_stats_table(const CorpusStats& stats) {
  // fixed row order for known languages, then anything else alphabetically
  static const std::vector<std::string_view> order = {
      "go", "ruby", "python", "java", "javascript", "php", "c", "csharp"};
  std::vector<std::string> keys;
  for (auto name : order)
    if (stats.per_language.count(std::string(name))) keys.emplace_back(name);
  for (const auto& [name, _] : stats.per_language)
    if (std::find(order.begin(), order.end(), name) == order.end())
      keys.push_back(name);

  std::ostringstream out;
  out << "Language With-NL W/O-NL Total\n";
  LanguageCount sum;
  for (const auto& key : keys) {
    const auto& c = stats.per_language.at(key);
    out << display_language(key) << ' ' << format_thousands(c.with_nl) << ' '
        << format_thousands(c.without_nl) << ' ' << format_thousands(c.total())
        << '\n';
    sum.with_nl += c.with_nl;
    sum.without_nl += c.without_nl;
  }
  out << "Total " << format_thousands(sum.with_nl) << ' '
      << format_thousands(sum.without_nl) << ' ' << format_thousands(sum.total())
      << '\n';
  return out.str();
}

}  // namespace cstkit
