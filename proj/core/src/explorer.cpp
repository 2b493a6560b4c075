#include "aeff/explorer.hpp"

#include <cstdlib>
#include <string>

namespace aeff {

const char* verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::SN: return "SN";
    case VerdictKind::NonSN: return "NonSN";
    case VerdictKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

std::size_t default_budget() {
  if (const char* env = std::getenv("AEFF_BUDGET")) {
    try {
      std::size_t pos = 0;
      unsigned long long n = std::stoull(env, &pos);
      if (pos == std::string(env).size() && n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return 100000;
}

SeqExploration explore(const Computation& root, std::size_t budget) {
  return explore_graph<Computation, RuleLabel, AlphaHash, AlphaEqual>(
      root, budget, [](const Computation& m) { return step_seq(m); });
}

ProcExploration explore(const Process& root, std::size_t budget) {
  return explore_graph<Process, ProcRuleLabel, AlphaHash, AlphaEqual>(
      root, budget, [](const Process& p) { return step_proc(p); });
}

FlatExploration explore(const FlatProcess& root, std::size_t budget) {
  return explore_graph<FlatProcess, ProcRuleLabel, FlatHash, FlatEqual>(
      root, budget, [](const FlatProcess& p) { return step_flat(p); });
}

bool verify_witness(const SeqExploration& ex) {
  return verify_cycle<Computation, RuleLabel, AlphaEqual>(ex, [](const Computation& m) { return step_seq(m); });
}

bool verify_witness(const ProcExploration& ex) {
  return verify_cycle<Process, ProcRuleLabel, AlphaEqual>(ex, [](const Process& p) { return step_proc(p); });
}

bool verify_witness(const FlatExploration& ex) {
  return verify_cycle<FlatProcess, ProcRuleLabel, FlatEqual>(ex,
                                                              [](const FlatProcess& p) { return step_flat(p); });
}

}  // namespace aeff
