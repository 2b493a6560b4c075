#ifndef AEFF_MEASURES_HPP
#define AEFF_MEASURES_HPP

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "aeff/effects.hpp"
#include "aeff/explorer.hpp"
#include "aeff/reduce_par.hpp"
#include "aeff/syntax.hpp"
#include "aeff/types.hpp"

namespace aeff {

/// |ι|_i: defined entries of ι, counted recursively.
std::size_t size_i(const EffectMap& iota);
inline std::size_t size_i(const EffectAnnotation& e) { return size_i(e.handlers); }

/// |paths(ι)|: the node-count variant (entries plus the root when ι ≠ ∅).
std::size_t size_i_paths(const EffectMap& iota);

/// Largest signal spine over the normal forms of `m`. Throws
/// MeasureUndefined unless the graph is SN within the budget.
std::size_t max_signals(const Computation& m, std::size_t budget = default_budget());

/// Longest reduction of `m`. Throws MeasureUndefined unless SN.
std::size_t max_steps(const Computation& m, std::size_t budget = default_budget());

// ---------------------------------------------------------------------------
// Parallel shapes

class ParallelShape {
 public:
  enum class Kind { Run, Par, Down, Up };

  static ParallelShape run();
  static ParallelShape par(ParallelShape left, ParallelShape right);
  static ParallelShape down(ParallelShape body);
  static ParallelShape up(ParallelShape body);

  Kind kind() const { return node_->kind; }
  /// Children: none for Run, (left, right) for Par, one otherwise.
  const ParallelShape& left() const;
  const ParallelShape& right() const;
  const ParallelShape& body() const { return left(); }

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }
  bool operator==(const ParallelShape& other) const;

 private:
  struct Node {
    Kind kind;
    std::vector<ParallelShape> children;
    std::size_t hash;
    std::size_t size;
  };
  explicit ParallelShape(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static ParallelShape make(Kind kind, std::vector<ParallelShape> children);
  std::shared_ptr<const Node> node_;
};

struct ShapeHash {
  std::size_t operator()(const ParallelShape& s) const { return s.hash(); }
};
struct ShapeEqual {
  bool operator()(const ParallelShape& a, const ParallelShape& b) const { return a == b; }
};

/// `run`, `S || T`, `down S`, `up S`.
std::string format_shape(const ParallelShape& s);

ParallelShape shape_of(const Process& p);

struct ShapeStep {
  ProcRuleLabel label;
  ParallelShape result;
};

/// Process rules r16-r20 restricted to shapes, closed under r21 congruence.
std::vector<ShapeStep> step_shape(const ParallelShape& s);

using ShapeExploration = Exploration<ParallelShape, ProcRuleLabel>;
ShapeExploration explore(const ParallelShape& root, std::size_t budget = default_budget());

/// Longest shape reduction; throws MeasureUndefined if exploration does not
/// finish within the budget.
std::size_t max_sh(const ParallelShape& s, std::size_t budget = default_budget());

// ---------------------------------------------------------------------------
// Process measures

struct LeafMeasures {
  EffectAnnotation effect;  ///< least annotation of the leaf computation
  std::size_t size_i = 0;
  std::size_t max_signals = 0;
  std::size_t max_steps = 0;
};

/// Memo tables shared between measure computations. Safe for concurrent use:
/// lookups take a shared lock, inserts an exclusive one, and entries never
/// change once written.
class MeasureCache {
 public:
  explicit MeasureCache(Signature sig, std::size_t budget = default_budget());

  const Signature& signature() const { return sig_; }
  std::size_t budget() const { return budget_; }

  /// Throws MeasureUndefined when the leaf is not effect-typeable or not SN.
  LeafMeasures leaf(const Computation& m);
  std::size_t max_sh(const ParallelShape& s);

 private:
  struct Dynamics {
    std::size_t max_signals;
    std::size_t max_steps;
  };
  Dynamics dynamics(const Computation& m);

  Signature sig_;
  std::size_t budget_;
  std::shared_mutex mutex_;
  std::unordered_map<Computation, EffectAnnotation, AlphaHash, AlphaEqual> effects_;
  std::unordered_map<Computation, Dynamics, AlphaHash, AlphaEqual> dynamics_;
  std::unordered_map<ParallelShape, std::size_t, ShapeHash, ShapeEqual> shapes_;
};

struct ProcMeasures {
  std::size_t size_i = 0;
  std::size_t max_up = 0;
  std::size_t max_sh = 0;
  std::size_t max_run = 0;

  auto tuple() const { return std::make_tuple(size_i, max_up, max_sh, max_run); }
  std::string str() const;
};

struct FlatMeasures {
  std::size_t size_i = 0;
  std::size_t max_up = 0;
  std::size_t max_run = 0;

  auto tuple() const { return std::make_tuple(size_i, max_up, max_run); }
  std::string str() const;
};

struct LeafReport {
  std::string path;  ///< e.g. "left.interrupt", "root", or "thread 2"
  Computation computation;
  LeafMeasures measures;
};

struct ProcMeasureReport {
  ProcMeasures totals;
  std::vector<LeafReport> leaves;
};

struct FlatMeasureReport {
  FlatMeasures totals;
  std::vector<LeafReport> leaves;
};

/// Throws MeasureUndefined naming the offending leaf.
ProcMeasureReport proc_measures(const Process& p, MeasureCache& cache);
FlatMeasureReport flat_measures(const FlatProcess& p, MeasureCache& cache);

}  // namespace aeff

#endif  // AEFF_MEASURES_HPP
