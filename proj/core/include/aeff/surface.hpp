#ifndef AEFF_SURFACE_HPP
#define AEFF_SURFACE_HPP

// Concrete syntax for `.aeff` files.
//
//   operation op : T          declares an operation payload type
//   type b                    declares a base type (optional; unknown names in
//                             type position are treated as base types)
//   expect T [! (o, i)]       optional ascription of the body
//   <computation or process>  the body
//
// `#` starts a line comment.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aeff/effects.hpp"
#include "aeff/syntax.hpp"
#include "aeff/types.hpp"

namespace aeff {

struct Ascription {
  TypeExpr type;
  std::optional<EffectAnnotation> effect;
  SourceLoc loc;
};

struct SourceProgram {
  Signature signature;
  std::optional<Ascription> ascription;
  std::variant<Computation, Process> body;

  bool is_process() const { return std::holds_alternative<Process>(body); }
  const Computation& computation() const { return std::get<Computation>(body); }
  const Process& process() const { return std::get<Process>(body); }
};

/// Names of the free variables a fragment may mention, outermost first; the
/// last name is index 0.
using NameContext = std::vector<std::string>;

SourceProgram parse_program(std::string_view text);

Computation parse_computation(std::string_view text, const Signature& sig,
                              const NameContext& free = {});
Value parse_value(std::string_view text, const Signature& sig, const NameContext& free = {});
Process parse_process(std::string_view text, const Signature& sig, const NameContext& free = {});
TypeExpr parse_type(std::string_view text, const Signature& sig);
EffectAnnotation parse_effect(std::string_view text, const Signature& sig);

/// Single-line concrete syntax. Binder names come from the hints, renamed
/// where needed so that the output re-parses to an α-equivalent term.
std::string pretty(const Value& v, const NameContext& free = {});
std::string pretty(const Computation& c, const NameContext& free = {});
std::string pretty(const Process& p, const NameContext& free = {});
std::string pretty(const TypeExpr& t);
std::string pretty(const EffectAnnotation& e);
std::string pretty(const SourceProgram& program);

}  // namespace aeff

#endif  // AEFF_SURFACE_HPP
