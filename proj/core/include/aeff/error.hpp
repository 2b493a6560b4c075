#ifndef AEFF_ERROR_HPP
#define AEFF_ERROR_HPP

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace aeff {

/// 1-based line/column inside a source text. A zero line means "no location".
struct SourceLoc {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  std::string str() const;
  auto operator<=>(const SourceLoc&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A term mentions a variable that the surrounding operation cannot map.
class ScopeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { Lexical, Syntax, Scope };

  ParseError(Kind kind, SourceLoc loc, const std::string& message);

  Kind kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourceLoc loc_;
  std::string detail_;
};

enum class Severity { Error, Warning, Note };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceLoc loc;
  std::string message;
  std::optional<std::string> expected;
  std::optional<std::string> actual;

  std::string str() const;
};

class TypeError : public Error {
 public:
  explicit TypeError(Diagnostic diagnostic);

  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// A measure was requested for a term outside its domain (not strongly
/// normalising, not effect-typeable with a finite annotation, ...).
class MeasureUndefined : public Error {
 public:
  using Error::Error;
};

}  // namespace aeff

#endif  // AEFF_ERROR_HPP
