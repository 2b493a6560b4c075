#ifndef AEFF_REDUCE_SEQ_HPP
#define AEFF_REDUCE_SEQ_HPP

#include <optional>
#include <string>
#include <vector>

#include "aeff/syntax.hpp"

namespace aeff {

enum class SeqRule {
  R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12,
  MatchInl, MatchInr, R9Legacy, R9Sum,
};

/// Stable name used in traces: "r1".."r12", "match-inl", "match-inr",
/// "r9-legacy", "r9-sum".
const char* rule_name(SeqRule rule);

/// Evaluation-context positions: `let x = E in N`, `send op V ; E`,
/// `recv op V ; E`, `promise (...) as p in E`.
enum class SeqFrame { Let, Signal, Interrupt, Handler };

const char* frame_name(SeqFrame frame);

struct RuleLabel {
  SeqRule rule;
  /// Outermost frame first. Empty for a root-level step; otherwise the step
  /// is an instance of r13.
  std::vector<SeqFrame> path;

  bool is_congruence() const { return !path.empty(); }
  /// "r2" at the root, "r13@let.handler:r2" under a context.
  std::string str() const;

  friend bool operator==(const RuleLabel&, const RuleLabel&) = default;
};

struct SeqStep {
  RuleLabel label;
  Computation result;
};

/// Root-level rule instances only (no r13).
std::vector<SeqStep> step_root(const Computation& m);

/// Every one-step reduct: root instances first, then r13 into the single
/// evaluation position of the node, recursively.
std::vector<SeqStep> step_seq(const Computation& m);

bool is_normal(const Computation& m);

/// The first reduct in `step_seq` order.
std::optional<SeqStep> step_leftmost(const Computation& m);

/// Plugs `hole` into the context addressed by `path` inside `context`
/// (whose own subterm at that position is replaced).
Computation plug(const Computation& context, const std::vector<SeqFrame>& path,
                 const Computation& hole);

/// The subterm of `m` at an evaluation-context path, if the path exists.
std::optional<Computation> subterm_at(const Computation& m, const std::vector<SeqFrame>& path);

}  // namespace aeff

#endif  // AEFF_REDUCE_SEQ_HPP
