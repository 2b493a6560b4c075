#ifndef AEFF_AUDIT_HPP
#define AEFF_AUDIT_HPP

// Runtime check of the lexicographic termination argument: every edge of a
// process graph must strictly decrease (size_i, max_up, max_sh, max_run) for
// trees, or (size_i, max_up, max_run) for the flat model.

#include <cstddef>
#include <string>
#include <vector>

#include "aeff/explorer.hpp"
#include "aeff/measures.hpp"
#include "aeff/reduce_par.hpp"
#include "aeff/syntax.hpp"
#include "aeff/types.hpp"

namespace aeff {

struct AuditViolation {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::string label;
  std::string src_measures;
  std::string dst_measures;
};

struct AuditReport {
  /// Reasons the audit could not run (reinstall handlers, type errors,
  /// non-SN leaves). Empty when the precondition holds.
  std::vector<std::string> precondition_failures;
  /// Nodes whose measures could not be computed during exploration.
  std::vector<std::string> measure_failures;
  std::vector<AuditViolation> violations;
  VerdictKind verdict = VerdictKind::SN;
  bool quiescent = false;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  /// Measures of the root, formatted as a tuple.
  std::string root_measures;

  bool precondition_ok() const { return precondition_failures.empty(); }
  bool passed() const {
    return precondition_ok() && measure_failures.empty() && violations.empty() && quiescent;
  }
};

AuditReport audit_lex_decrease(const Process& p, MeasureCache& cache);
AuditReport audit_lex_decrease(const FlatProcess& p, MeasureCache& cache);

AuditReport audit_lex_decrease(const Process& p, const Signature& sig, std::size_t budget = default_budget());
AuditReport audit_lex_decrease(const FlatProcess& p, const Signature& sig,
                               std::size_t budget = default_budget());

}  // namespace aeff

#endif  // AEFF_AUDIT_HPP
