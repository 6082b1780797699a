#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace cstkit {

enum class Language { python, go, java, javascript };

std::string_view language_name(Language lang);
std::optional<Language> language_from_name(std::string_view name);

// maps .py/.go/.java/.js (and .mjs/.cjs) to a language
std::optional<Language> language_from_extension(std::string_view path);

// true for languages where line structure is syntax (python); these get
// explicit newline/indent/dedent markers in serialized trees
bool whitespace_sensitive(Language lang);

const std::vector<Language>& all_languages();

}  // namespace cstkit
