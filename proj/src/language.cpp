#include "cstkit/language.hpp"

namespace cstkit {

std::string_view language_name(Language lang) {
  switch (lang) {
    case Language::python: return "python";
    case Language::go: return "go";
    case Language::java: return "java";
    case Language::javascript: return "javascript";
  }
  return "?";
}

std::optional<Language> language_from_name(std::string_view name) {
  if (name == "python" || name == "py") return Language::python;
  if (name == "go" || name == "golang") return Language::go;
  if (name == "java") return Language::java;
  if (name == "javascript" || name == "js") return Language::javascript;
  return std::nullopt;
}

std::optional<Language> language_from_extension(std::string_view path) {
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  auto ext = path.substr(dot);
  if (ext == ".py") return Language::python;
  if (ext == ".go") return Language::go;
  if (ext == ".java") return Language::java;
  if (ext == ".js" || ext == ".mjs" || ext == ".cjs") return Language::javascript;
  return std::nullopt;
}

bool whitespace_sensitive(Language lang) { return lang == Language::python; }

const std::vector<Language>& all_languages() {
  static const std::vector<Language> langs = {
      Language::python, Language::go, Language::java, Language::javascript};
  return langs;
}

}  // namespace cstkit
