#include "aeff/error.hpp"

namespace aeff {

std::string SourceLoc::str() const {
  if (!known()) return "<unknown>";
  return std::to_string(line) + ":" + std::to_string(column);
}

namespace {

const char* kind_name(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lexical: return "lexical error";
    case ParseError::Kind::Syntax: return "syntax error";
    case ParseError::Kind::Scope: return "scope error";
  }
  return "error";
}

}  // namespace

ParseError::ParseError(Kind kind, SourceLoc loc, const std::string& message)
    : Error(loc.str() + ": " + kind_name(kind) + ": " + message),
      kind_(kind),
      loc_(loc),
      detail_(message) {}

std::string Diagnostic::str() const {
  std::string out;
  if (loc.known()) out += loc.str() + ": ";
  switch (severity) {
    case Severity::Error: out += "error: "; break;
    case Severity::Warning: out += "warning: "; break;
    case Severity::Note: out += "note: "; break;
  }
  out += message;
  if (expected) out += "\n  expected: " + *expected;
  if (actual) out += "\n  actual:   " + *actual;
  return out;
}

TypeError::TypeError(Diagnostic diagnostic)
    : Error(diagnostic.str()), diagnostic_(std::move(diagnostic)) {}

}  // namespace aeff
