#ifndef AEFF_TYPECHECK_HPP
#define AEFF_TYPECHECK_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aeff/effects.hpp"
#include "aeff/error.hpp"
#include "aeff/syntax.hpp"
#include "aeff/surface.hpp"
#include "aeff/types.hpp"

namespace aeff {

enum class TypingMode { Skeletal, Effects };

const char* typing_mode_name(TypingMode mode);

/// Typing context. Entries are ordered outermost first, so de Bruijn index i
/// refers to entry size()-1-i.
class Context {
 public:
  Context() = default;

  void push(std::string name, TypeExpr type);
  void pop();
  std::size_t size() const { return entries_.size(); }
  const TypeExpr& type_of(std::size_t index) const;
  const std::string& name_of(std::size_t index) const;
  NameContext names() const;

 private:
  std::vector<std::pair<std::string, TypeExpr>> entries_;
};

/// X ! (o, i). In skeletal mode the effect is always bottom.
struct CompType {
  TypeExpr type;
  EffectAnnotation effect;
};

std::string format_comp_type(const CompType& t, TypingMode mode);

TypeExpr infer_value(TypingMode mode, const Signature& sig, const Context& ctx, const Value& v);
CompType infer(TypingMode mode, const Signature& sig, const Context& ctx, const Computation& m);

TypeExpr infer_skeletal(const Signature& sig, const Context& ctx, const Computation& m);
TypeExpr infer_skeletal(const Signature& sig, const Context& ctx, const Value& v);

/// Least type and annotation. Rejects legacy reinstallable handlers and
/// unannotated function parameters.
CompType infer_effects(const Signature& sig, const Context& ctx, const Computation& m);

/// Γ ⊢ M : X ! e. Ill-typed terms throw; a well-typed term whose least type
/// or annotation does not fit under (X, e) yields false.
bool check_effects(const Signature& sig, const Context& ctx, const Computation& m,
                   const TypeExpr& x, const EffectAnnotation& e);

/// Value subtyping induced by ⊑ on arrow annotations (contravariant in the
/// domain). Holes match anything.
bool subtype(const TypeExpr& s, const TypeExpr& t);

/// Process types: run X ! e, or C || D.
struct ProcessType {
  std::optional<CompType> run;
  std::shared_ptr<const ProcessType> left;
  std::shared_ptr<const ProcessType> right;

  bool is_run() const { return run.has_value(); }
};

std::string format_process_type(const ProcessType& t, TypingMode mode);

struct LeafTyping {
  /// Frames from the root to the leaf: "left", "right", "signal", "interrupt".
  std::vector<std::string> path;
  CompType type;
};

struct ProcessTypeReport {
  std::vector<LeafTyping> leaves;
  ProcessType composite;
};

std::string format_process_path(const std::vector<std::string>& path);

/// Types every run-leaf, then composes: interrupts act on the annotations of
/// all leaves beneath them.
ProcessTypeReport typecheck_process(TypingMode mode, const Signature& sig, const Context& ctx,
                                    const Process& p);

}  // namespace aeff

#endif  // AEFF_TYPECHECK_HPP
