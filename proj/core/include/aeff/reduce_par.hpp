#ifndef AEFF_REDUCE_PAR_HPP
#define AEFF_REDUCE_PAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "aeff/reduce_seq.hpp"
#include "aeff/syntax.hpp"

namespace aeff {

enum class ProcRule { R14, R15, R16, R17, R18, R19, R20 };

const char* rule_name(ProcRule rule);

/// Positions of the process context grammar: `F || Q`, `P || F`,
/// `send op V ; F`, `recv op V ; F`.
enum class ProcFrame { ParLeft, ParRight, Signal, Interrupt };

const char* frame_name(ProcFrame frame);

struct ProcRuleLabel {
  enum class Kind { Tree, FlatRun, FlatBroadcast };

  Kind kind = Kind::Tree;
  ProcRule rule = ProcRule::R14;
  /// Tree steps: outermost frame first; non-empty means an r21 instance.
  std::vector<ProcFrame> path;
  /// The computation step lifted by r14 or by a flat-run step.
  std::optional<RuleLabel> inner;
  /// Flat steps: index of the computation that moved or emitted.
  std::size_t index = 0;
  /// Flat broadcasts: the emitted signal.
  OpName op;
  std::optional<Value> payload;

  /// "r16", "r21@left.signal:r18", "r14[r13@let:r2]", "flat-run(1)[r2]",
  /// "flat-broadcast(op,(),0)".
  std::string str() const;
};

struct ProcStep {
  ProcRuleLabel label;
  Process result;
};

std::vector<ProcStep> step_proc(const Process& p);

/// Non-empty list of computations running side by side.
struct FlatProcess {
  std::vector<Computation> threads;
};

bool alpha_eq(const FlatProcess& a, const FlatProcess& b);
std::size_t flat_hash(const FlatProcess& p);

struct FlatHash {
  std::size_t operator()(const FlatProcess& p) const { return flat_hash(p); }
};
struct FlatEqual {
  bool operator()(const FlatProcess& a, const FlatProcess& b) const { return alpha_eq(a, b); }
};

/// Reads `run M1 || ... || run Mn` (any nesting of || over run leaves).
/// Empty if the process has signal or interrupt nodes.
std::optional<FlatProcess> to_flat(const Process& p);

std::string pretty(const FlatProcess& p);

struct FlatStep {
  ProcRuleLabel label;
  FlatProcess result;
};

/// Per-computation steps and, for every computation headed by a signal, the
/// broadcast that strips it and wraps every other computation in the matching
/// interrupt.
std::vector<FlatStep> step_flat(const FlatProcess& p);

}  // namespace aeff

#endif  // AEFF_REDUCE_PAR_HPP
