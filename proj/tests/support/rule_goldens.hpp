#ifndef AEFF_TESTS_RULE_GOLDENS_HPP
#define AEFF_TESTS_RULE_GOLDENS_HPP

#include <string>
#include <vector>

#include "aeff/surface.hpp"

namespace aeff::testing {

/// One rule instance: `input` must have a step labelled `label` whose result
/// is α-equal to `expected`. Both sides may mention the free names v and w.
struct RuleGolden {
  std::string rule;
  std::string label;
  bool process;
  std::string input;
  std::string expected;
};

const std::vector<RuleGolden>& rule_goldens();

/// Operations op, op2 and note, all carrying unit.
const Signature& golden_signature();
/// Free names available to every golden, outermost first.
const NameContext& golden_free_names();

struct GoldenOutcome {
  bool passed = false;
  std::string detail;
};

/// Parses both sides, steps the input and compares.
GoldenOutcome run_golden(const RuleGolden& g);

}  // namespace aeff::testing

#endif  // AEFF_TESTS_RULE_GOLDENS_HPP
