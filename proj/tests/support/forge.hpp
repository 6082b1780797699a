#pragma once

// deterministic synthetic corpus: seeded generators that emit valid source
// files in all four languages, for round-trip sweeps and pipeline tests

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cstkit/corpus.hpp"

namespace testsupport {

struct ForgedFile {
  std::string name;
  cstkit::Language lang = cstkit::Language::python;
  std::string code;
  std::optional<std::string> nl;
};

namespace detail {

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

inline int roll(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline const std::vector<std::string>& idents() {
  static const std::vector<std::string> pool = {
      "total", "count", "value", "result", "items", "width", "height",
      "left",  "right", "accum", "index",  "name",  "score", "delta"};
  return pool;
}

inline const std::vector<std::string>& strings() {
  static const std::vector<std::string> pool = {
      "\"hello world\"", "\"a_b (c)\"", "\"7.0/3.0 =\"", "\"done.\"",
      "\"x, y, z\"",     "\"\"",        "\"[nested] {braces}\""};
  return pool;
}

inline std::string gen_python(std::mt19937_64& rng, int index) {
  std::ostringstream out;
  if (roll(rng, 0, 2) == 0) out << "import os\n\n";
  int funcs = roll(rng, 1, 3);
  for (int f = 0; f < funcs; ++f) {
    std::string fn = "fn_" + std::to_string(index) + "_" + std::to_string(f);
    const std::string& a = pick(rng, idents());
    const std::string& b = pick(rng, idents());
    out << "def " << fn << "(" << a << ", " << b << "=3):\n";
    if (roll(rng, 0, 2) == 0)
      out << "    \"\"\"Combine " << a << " with " << b << ".\"\"\"\n";
    int stmts = roll(rng, 1, 4);
    for (int s = 0; s < stmts; ++s) {
      switch (roll(rng, 0, 5)) {
        case 0: out << "    " << a << " = " << a << " + " << roll(rng, 1, 9) << "\n"; break;
        case 1: out << "    print(" << pick(rng, strings()) << ", " << a << ")\n"; break;
        case 2:
          out << "    if " << a << " > " << roll(rng, 1, 9) << ":\n"
              << "        " << b << " = " << a << " * 2\n";
          if (roll(rng, 0, 1)) out << "    else:\n        " << b << " = 0\n";
          break;
        case 3:
          out << "    for i in range(" << roll(rng, 2, 9) << "):\n"
              << "        " << a << " += i\n";
          break;
        case 4: out << "    # running tally for " << b << "\n"; break;
        default:
          out << "    " << b << " = [" << roll(rng, 0, 9) << ", " << roll(rng, 0, 9)
              << "]\n";
      }
    }
    out << "    return " << a << "\n";
    if (f + 1 < funcs) out << "\n\n";
  }
  if (roll(rng, 0, 2) == 0) {
    out << "\n\nclass Holder_" << index << ":\n"
        << "    def get(self):\n"
        << "        return " << roll(rng, 1, 99) << "\n";
  }
  return out.str();
}

inline std::string gen_go(std::mt19937_64& rng, int index) {
  std::ostringstream out;
  out << "package main\n\n";
  bool uses_fmt = roll(rng, 0, 1) == 0;
  if (uses_fmt) out << "import \"fmt\"\n\n";
  if (roll(rng, 0, 2) == 0) {
    out << "type Box" << index << " struct {\n"
        << "\tWidth  int\n"
        << "\tHeight int\n"
        << "}\n\n";
  }
  int funcs = roll(rng, 1, 3);
  for (int f = 0; f < funcs; ++f) {
    std::string fn = "Fn" + std::to_string(index) + "x" + std::to_string(f);
    const std::string& a = pick(rng, idents());
    out << "func " << fn << "(" << a << " int) int {\n";
    int stmts = roll(rng, 1, 3);
    for (int s = 0; s < stmts; ++s) {
      switch (roll(rng, 0, 4)) {
        case 0: out << "\tx := " << a << " * " << roll(rng, 2, 5) << "\n\t" << a << " = x\n"; break;
        case 1:
          out << "\tif " << a << " > " << roll(rng, 1, 9) << " {\n"
              << "\t\t" << a << " -= 1\n"
              << "\t}\n";
          break;
        case 2:
          out << "\tfor i := 0; i < " << roll(rng, 2, 6) << "; i++ {\n"
              << "\t\t" << a << " += i\n"
              << "\t}\n";
          break;
        case 3: out << "\t// adjust " << a << " before returning\n"; break;
        default:
          if (uses_fmt)
            out << "\tfmt.Println(" << pick(rng, strings()) << ", " << a << ")\n";
          else
            out << "\t" << a << " += " << roll(rng, 1, 5) << "\n";
      }
    }
    out << "\treturn " << a << "\n}\n";
    if (f + 1 < funcs) out << "\n";
  }
  return out.str();
}

inline std::string gen_java(std::mt19937_64& rng, int index) {
  std::ostringstream out;
  out << "public class Widget" << index << " {\n";
  out << "    private int seed = " << roll(rng, 1, 99) << ";\n\n";
  int methods = roll(rng, 1, 3);
  for (int m = 0; m < methods; ++m) {
    const std::string& a = pick(rng, idents());
    out << "    public int calc" << m << "(int " << a << ") {\n";
    int stmts = roll(rng, 1, 3);
    for (int s = 0; s < stmts; ++s) {
      switch (roll(rng, 0, 4)) {
        case 0: out << "        " << a << " = " << a << " * " << roll(rng, 2, 5) << ";\n"; break;
        case 1:
          out << "        if (" << a << " > " << roll(rng, 1, 9) << ") {\n"
              << "            " << a << " -= 1;\n"
              << "        } else {\n"
              << "            " << a << " += 1;\n"
              << "        }\n";
          break;
        case 2:
          out << "        for (int i = 0; i < " << roll(rng, 2, 6) << "; i++) {\n"
              << "            " << a << " += i;\n"
              << "        }\n";
          break;
        case 3: out << "        // clamp " << a << " to the valid range\n"; break;
        default:
          out << "        String label = " << pick(rng, strings()) << ";\n"
              << "        " << a << " += label.length();\n";
      }
    }
    out << "        return " << a << " + seed;\n    }\n";
    if (m + 1 < methods) out << "\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string gen_javascript(std::mt19937_64& rng, int index) {
  std::ostringstream out;
  out << "const base" << index << " = " << roll(rng, 1, 99) << ";\n\n";
  int funcs = roll(rng, 1, 3);
  for (int f = 0; f < funcs; ++f) {
    std::string fn = "calc" + std::to_string(index) + "x" + std::to_string(f);
    const std::string& a = pick(rng, idents());
    out << "function " << fn << "(" << a << ") {\n";
    int stmts = roll(rng, 1, 3);
    for (int s = 0; s < stmts; ++s) {
      switch (roll(rng, 0, 4)) {
        case 0: out << "  let x = " << a << " * " << roll(rng, 2, 5) << ";\n  " << a << " = x;\n"; break;
        case 1:
          out << "  if (" << a << " > " << roll(rng, 1, 9) << ") {\n"
              << "    " << a << " -= 1;\n"
              << "  }\n";
          break;
        case 2:
          out << "  for (let i = 0; i < " << roll(rng, 2, 6) << "; i++) {\n"
              << "    " << a << " += i;\n"
              << "  }\n";
          break;
        case 3: out << "  // fold in " << a << "\n"; break;
        default:
          out << "  console.log(" << pick(rng, strings()) << ", " << a << ");\n";
      }
    }
    out << "  return " << a << " + base" << index << ";\n}\n";
    if (f + 1 < funcs) out << "\n";
  }
  if (roll(rng, 0, 2) == 0)
    out << "\nclass Pair" << index << " {\n  sum(a, b) {\n    return a + b;\n  }\n}\n";
  return out.str();
}

inline const std::vector<std::string>& doc_lines() {
  static const std::vector<std::string> pool = {
      "Accumulates values and returns the running total.",
      "Scales the input and clamps it to a small range.",
      "Utility helpers used by the reporting layer.",
      "Iterates the inputs and folds them into one number.",
      "Small example module exercised by the round trip suite.",
  };
  return pool;
}

}  // namespace detail

inline std::vector<ForgedFile> forge_corpus(std::size_t per_language,
                                            std::uint64_t seed) {
  using cstkit::Language;
  std::vector<ForgedFile> out;
  struct Gen {
    Language lang;
    const char* ext;
    std::string (*fn)(std::mt19937_64&, int);
  };
  static const Gen gens[] = {
      {Language::python, ".py", detail::gen_python},
      {Language::go, ".go", detail::gen_go},
      {Language::java, ".java", detail::gen_java},
      {Language::javascript, ".js", detail::gen_javascript},
  };
  for (const auto& gen : gens) {
    for (std::size_t i = 0; i < per_language; ++i) {
      std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(gen.lang) << 32) ^ i);
      ForgedFile file;
      file.name = std::string(cstkit::language_name(gen.lang)) + "_" +
                  std::to_string(i) + gen.ext;
      file.lang = gen.lang;
      file.code = gen.fn(rng, static_cast<int>(i));
      if (i % 2 == 0) file.nl = detail::pick(rng, detail::doc_lines());
      out.push_back(std::move(file));
    }
  }
  return out;
}

inline std::vector<cstkit::CorpusRecord> corpus_records(
    const std::vector<ForgedFile>& files) {
  std::vector<cstkit::CorpusRecord> out;
  for (const auto& f : files) {
    cstkit::CorpusRecord rec;
    rec.id = f.name;
    rec.language = f.lang;
    rec.code = f.code;
    rec.nl = f.nl;
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::string corpus_jsonl(const std::vector<ForgedFile>& files) {
  std::string out;
  for (const auto& f : files) {
    nlohmann::ordered_json j;
    j["id"] = f.name;
    j["language"] = std::string(cstkit::language_name(f.lang));
    j["code"] = f.code;
    if (f.nl) j["nl"] = *f.nl;
    out += j.dump() + "\n";
  }
  return out;
}

inline void write_corpus_dir(const std::vector<ForgedFile>& files,
                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    out << f.code;
  }
}

}  // namespace testsupport
