#include "aeff/audit.hpp"

#include <optional>

#include "aeff/error.hpp"
#include "aeff/typecheck.hpp"

namespace aeff {

namespace {

void check_typing(const Process& p, const Signature& sig, AuditReport& report) {
  try {
    typecheck_process(TypingMode::Effects, sig, Context(), p);
  } catch (const TypeError& e) {
    report.precondition_failures.push_back(std::string("not effect-typeable: ") + e.what());
  }
}

void check_typing(const FlatProcess& p, const Signature& sig, AuditReport& report) {
  for (std::size_t i = 0; i < p.threads.size(); ++i) {
    try {
      infer_effects(sig, Context(), p.threads[i]);
    } catch (const TypeError& e) {
      report.precondition_failures.push_back("thread " + std::to_string(i) + " is not effect-typeable: " +
                                             e.what());
    }
  }
}

bool reinstall_present(const Process& p) { return has_reinstall(p); }

bool reinstall_present(const FlatProcess& p) {
  for (const auto& t : p.threads) {
    if (has_reinstall(t)) return true;
  }
  return false;
}

auto totals_of(const Process& p, MeasureCache& cache) { return proc_measures(p, cache).totals; }
auto totals_of(const FlatProcess& p, MeasureCache& cache) { return flat_measures(p, cache).totals; }

template <class Node>
AuditReport run_audit(const Node& root, MeasureCache& cache) {
  AuditReport report;
  if (reinstall_present(root)) {
    report.precondition_failures.push_back("reinstallable handlers present");
    return report;
  }
  check_typing(root, cache.signature(), report);
  if (!report.precondition_ok()) return report;
  try {
    report.root_measures = totals_of(root, cache).str();
  } catch (const MeasureUndefined& e) {
    report.precondition_failures.push_back(e.what());
    return report;
  }

  auto ex = explore(root, cache.budget());
  const auto& g = ex.graph;
  report.verdict = ex.verdict.kind;
  report.quiescent = g.complete && ex.strongly_normalising();
  report.nodes = g.nodes.size();
  report.edges = g.edges.size();

  using Totals = decltype(totals_of(root, cache));
  std::vector<std::optional<Totals>> measured(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    try {
      measured[i] = totals_of(g.nodes[i], cache);
    } catch (const MeasureUndefined& e) {
      report.measure_failures.push_back("node " + std::to_string(i) + ": " + e.what());
    }
  }
  for (const auto& edge : g.edges) {
    const auto& a = measured[edge.src];
    const auto& b = measured[edge.dst];
    if (!a || !b) continue;
    if (b->tuple() < a->tuple()) continue;
    report.violations.push_back(AuditViolation{edge.src, edge.dst, edge.label.str(), a->str(), b->str()});
  }
  return report;
}

}  // namespace

AuditReport audit_lex_decrease(const Process& p, MeasureCache& cache) { return run_audit(p, cache); }
AuditReport audit_lex_decrease(const FlatProcess& p, MeasureCache& cache) { return run_audit(p, cache); }

AuditReport audit_lex_decrease(const Process& p, const Signature& sig, std::size_t budget) {
  MeasureCache cache(sig, budget);
  return run_audit(p, cache);
}

AuditReport audit_lex_decrease(const FlatProcess& p, const Signature& sig, std::size_t budget) {
  MeasureCache cache(sig, budget);
  return run_audit(p, cache);
}

}  // namespace aeff
