#ifndef AEFF_EFFECTS_HPP
#define AEFF_EFFECTS_HPP

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace aeff {

/// Name of an operation drawn from the program's finite signature.
struct OpName {
  std::string text;

  OpName() = default;
  explicit OpName(std::string name) : text(std::move(name)) {}

  auto operator<=>(const OpName&) const = default;
};

using OpSet = std::set<OpName>;

/// Address of an entry inside a nested handler map.
using Path = std::vector<OpName>;

struct EffectAnnotation;
struct EffectEntry;

/// Finite partial map from operation names to effect annotations, kept
/// sorted by operation name. Missing keys stand for "undefined".
class EffectMap {
 public:
  using const_iterator = std::vector<EffectEntry>::const_iterator;

  EffectMap() = default;

  bool empty() const { return entries_.empty(); }
  /// Number of top-level entries (not recursive; see handler_size).
  std::size_t size() const { return entries_.size(); }
  bool contains(const OpName& op) const { return find(op) != nullptr; }
  const EffectAnnotation* find(const OpName& op) const;

  /// Inserts or overwrites the entry for `op`.
  void set(const OpName& op, EffectAnnotation effect);
  void erase(const OpName& op);

  const_iterator begin() const;
  const_iterator end() const;

  friend bool operator==(const EffectMap& a, const EffectMap& b);

 private:
  std::vector<EffectEntry> entries_;
};

/// The pair (o, ι): operations a computation may signal, and the handlers it
/// may have installed, each with the effects of its handler code.
struct EffectAnnotation {
  OpSet signals;
  EffectMap handlers;

  friend bool operator==(const EffectAnnotation& a, const EffectAnnotation& b);
};

struct EffectEntry {
  OpName op;
  EffectAnnotation effect;
};

inline EffectMap::const_iterator EffectMap::begin() const { return entries_.begin(); }
inline EffectMap::const_iterator EffectMap::end() const { return entries_.end(); }

/// Pointwise order: signals by inclusion, handler maps recursively.
bool leq(const EffectAnnotation& a, const EffectAnnotation& b);
bool leq(const EffectMap& a, const EffectMap& b);

/// Least upper bound.
EffectAnnotation join(const EffectAnnotation& a, const EffectAnnotation& b);
EffectMap join(const EffectMap& a, const EffectMap& b);

/// Effect-level counterpart of an interrupt: if `op` has a handler entry
/// (o', ι') then the result is (o ⊔ o', ι[op ↦ ⊥] ⊔ ι'), otherwise `e`.
EffectAnnotation op_act(const OpName& op, const EffectAnnotation& e);

/// Total number of defined entries in the map, counted recursively.
std::size_t handler_size(const EffectMap& handlers);
inline std::size_t handler_size(const EffectAnnotation& e) { return handler_size(e.handlers); }

/// Addresses of every defined entry plus the empty root path when the map is
/// non-empty. |paths(ι)| == handler_size(ι) + 1 whenever ι is non-empty.
std::set<Path> paths(const EffectMap& handlers);

/// Nesting depth of handler maps; an empty map has depth 0.
std::size_t depth(const EffectMap& handlers);

/// Every operation name mentioned anywhere inside the annotation.
OpSet mentioned_ops(const EffectAnnotation& e);

std::size_t hash_value(const EffectAnnotation& e);

/// Canonical textual form, e.g. `({a, b}, {op -> ({}, {})})`.
std::string format_effect(const EffectAnnotation& e);
std::string format_op_set(const OpSet& ops);
std::string format_path(const Path& path);

}  // namespace aeff

#endif  // AEFF_EFFECTS_HPP
