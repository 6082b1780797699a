#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cstkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownLanguage : Error {
  explicit UnknownLanguage(const std::string& name)
      : Error("unknown language: " + name), name(name) {}
  std::string name;
};

struct ParseFatal : Error {
  using Error::Error;
};

struct UnbalancedStream : Error {
  UnbalancedStream(const std::string& what, std::size_t index)
      : Error(what + " at token " + std::to_string(index)), index(index) {}
  std::size_t index;
};

struct KindMismatch : Error {
  KindMismatch(const std::string& expected, const std::string& got, std::size_t index)
      : Error("close marker '" + got + "' does not match open '" + expected +
              "' at token " + std::to_string(index)),
        expected(expected), got(got), index(index) {}
  std::string expected;
  std::string got;
  std::size_t index;
};

struct RenderFailure : Error {
  using Error::Error;
};

struct NoCandidates : Error {
  NoCandidates() : Error("tree has no maskable non-terminal below the root") {}
};

struct MissingNL : Error {
  explicit MissingNL(const std::string& id)
      : Error("record '" + id + "' has no natural-language text") {}
};

struct Unrepairable : Error {
  Unrepairable() : Error("stream has no structural markers and no terminals") {}
};

struct IoFailure : Error {
  using Error::Error;
};

struct UnknownFormat : Error {
  using Error::Error;
};

struct EmptyKinds : Error {
  EmptyKinds() : Error("no node kinds collected; refusing to emit an empty manifest") {}
};

}  // namespace cstkit
