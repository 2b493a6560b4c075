#ifndef AEFF_EXPLORER_HPP
#define AEFF_EXPLORER_HPP

// Exhaustive construction of reduction graphs. Nodes are deduplicated up to
// α-equivalence; exploration is breadth-first and stops at quiescence or when
// the node budget is used up. The verdict is computed afterwards:
//
//   NonSN           the explored part contains a cycle (a genuine infinite
//                   reduction, since every edge is a real step)
//   BudgetExceeded  no cycle found, but some node was left unexpanded
//   SN              fully explored and acyclic

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aeff/error.hpp"
#include "aeff/reduce_par.hpp"
#include "aeff/reduce_seq.hpp"
#include "aeff/syntax.hpp"

namespace aeff {

enum class VerdictKind { SN, NonSN, BudgetExceeded };

const char* verdict_name(VerdictKind kind);

/// Node budget used when none is given: $AEFF_BUDGET if set, else 100000.
std::size_t default_budget();

template <class Label>
struct GraphEdge {
  std::size_t src;
  Label label;
  std::size_t dst;
};

template <class Node, class Label>
struct ReductionGraph {
  std::vector<Node> nodes;  ///< nodes[0] is the root
  std::vector<GraphEdge<Label>> edges;
  std::vector<std::vector<std::size_t>> out_edges;  ///< edge ids per node
  std::vector<bool> expanded;
  bool complete = false;
  std::size_t budget = 0;

  bool is_sink(std::size_t id) const { return expanded[id] && out_edges[id].empty(); }
};

struct Verdict {
  VerdictKind kind = VerdictKind::SN;
  std::size_t nodes_explored = 0;
  /// SN only.
  std::size_t max_steps = 0;
  std::vector<std::size_t> normal_forms;
  /// NonSN only: edge ids forming a closed walk; the source of the first edge
  /// is the target of the last.
  std::vector<std::size_t> cycle;
};

template <class Node, class Label>
struct Exploration {
  ReductionGraph<Node, Label> graph;
  Verdict verdict;
  /// Longest reduction length from each node; filled only for SN graphs.
  std::vector<std::size_t> longest;

  bool strongly_normalising() const { return verdict.kind == VerdictKind::SN; }
};

namespace detail {

/// Finds a cycle reachable from the root, or computes longest paths when
/// there is none. Iterative so that long reduction chains do not overflow.
template <class Node, class Label>
bool find_cycle_or_longest(const ReductionGraph<Node, Label>& g, std::vector<std::size_t>& cycle,
                           std::vector<std::size_t>& longest) {
  enum Color : unsigned char { White, Grey, Black };
  const std::size_t n = g.nodes.size();
  std::vector<Color> color(n, White);
  longest.assign(n, 0);
  struct Frame {
    std::size_t node;
    std::size_t next;
    std::size_t via;  // edge id used to enter the node
  };
  std::vector<Frame> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (color[start] != White) continue;
    stack.push_back({start, 0, static_cast<std::size_t>(-1)});
    color[start] = Grey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& outs = g.out_edges[top.node];
      if (top.next < outs.size()) {
        std::size_t eid = outs[top.next++];
        std::size_t dst = g.edges[eid].dst;
        if (color[dst] == White) {
          color[dst] = Grey;
          stack.push_back({dst, 0, eid});
        } else if (color[dst] == Grey) {
          cycle.clear();
          std::size_t i = stack.size();
          while (i-- > 0 && stack[i].node != dst) cycle.push_back(stack[i].via);
          std::reverse(cycle.begin(), cycle.end());
          cycle.push_back(eid);
          return true;
        }
        continue;
      }
      std::size_t best = 0;
      for (std::size_t eid : outs) best = std::max(best, longest[g.edges[eid].dst] + 1);
      longest[top.node] = best;
      color[top.node] = Black;
      stack.pop_back();
    }
  }
  return false;
}

}  // namespace detail

/// `step(node)` returns a sequence of records with `label` and `result`.
template <class Node, class Label, class Hash, class Eq, class StepFn>
Exploration<Node, Label> explore_graph(const Node& root, std::size_t budget, StepFn&& step) {
  if (budget == 0) throw Error("exploration budget must be at least 1");
  Exploration<Node, Label> ex;
  auto& g = ex.graph;
  g.budget = budget;
  std::unordered_map<Node, std::size_t, Hash, Eq> index;
  auto add = [&](const Node& node) {
    g.nodes.push_back(node);
    g.out_edges.emplace_back();
    g.expanded.push_back(false);
    index.emplace(node, g.nodes.size() - 1);
    return g.nodes.size() - 1;
  };
  add(root);
  bool exhausted = false;
  for (std::size_t cur = 0; cur < g.nodes.size() && !exhausted; ++cur) {
    auto steps = step(g.nodes[cur]);
    std::vector<std::pair<Label, std::size_t>> targets;
    targets.reserve(steps.size());
    for (auto& s : steps) {
      auto it = index.find(s.result);
      std::size_t dst;
      if (it != index.end()) {
        dst = it->second;
      } else if (g.nodes.size() >= budget) {
        exhausted = true;
        break;
      } else {
        dst = add(s.result);
      }
      targets.emplace_back(std::move(s.label), dst);
    }
    if (exhausted) break;
    for (auto& [label, dst] : targets) {
      g.edges.push_back({cur, std::move(label), dst});
      g.out_edges[cur].push_back(g.edges.size() - 1);
    }
    g.expanded[cur] = true;
  }
  g.complete = !exhausted;
  ex.verdict.nodes_explored = g.nodes.size();

  std::vector<std::size_t> cycle;
  std::vector<std::size_t> longest;
  if (detail::find_cycle_or_longest(g, cycle, longest)) {
    ex.verdict.kind = VerdictKind::NonSN;
    ex.verdict.cycle = std::move(cycle);
  } else if (!g.complete) {
    ex.verdict.kind = VerdictKind::BudgetExceeded;
  } else {
    ex.verdict.kind = VerdictKind::SN;
    ex.verdict.max_steps = longest[0];
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      if (g.out_edges[i].empty()) ex.verdict.normal_forms.push_back(i);
    }
    ex.longest = std::move(longest);
  }
  return ex;
}

/// Re-checks a NonSN witness: every edge of the cycle must be a step the
/// step function produces again (same label, α-equal target), and the walk
/// must close.
template <class Node, class Label, class Eq, class StepFn>
bool verify_cycle(const Exploration<Node, Label>& ex, StepFn&& step) {
  const auto& cycle = ex.verdict.cycle;
  if (ex.verdict.kind != VerdictKind::NonSN || cycle.empty()) return false;
  const auto& g = ex.graph;
  Eq eq;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& edge = g.edges[cycle[i]];
    const auto& next = g.edges[cycle[(i + 1) % cycle.size()]];
    if (edge.dst != next.src) return false;
    bool found = false;
    for (const auto& s : step(g.nodes[edge.src])) {
      if (s.label.str() == edge.label.str() && eq(s.result, g.nodes[edge.dst])) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return eq(g.nodes[g.edges[cycle.front()].src], g.nodes[g.edges[cycle.back()].dst]);
}

using SeqExploration = Exploration<Computation, RuleLabel>;
using ProcExploration = Exploration<Process, ProcRuleLabel>;
using FlatExploration = Exploration<FlatProcess, ProcRuleLabel>;

SeqExploration explore(const Computation& root, std::size_t budget = default_budget());
ProcExploration explore(const Process& root, std::size_t budget = default_budget());
FlatExploration explore(const FlatProcess& root, std::size_t budget = default_budget());

bool verify_witness(const SeqExploration& ex);
bool verify_witness(const ProcExploration& ex);
bool verify_witness(const FlatExploration& ex);

/// Longest reduction sequence from the root; throws MeasureUndefined unless SN.
template <class Node, class Label>
std::size_t max_steps(const Exploration<Node, Label>& ex) {
  if (!ex.strongly_normalising()) {
    throw MeasureUndefined(std::string("max_steps needs a strongly normalising graph, verdict is ") +
                           verdict_name(ex.verdict.kind));
  }
  return ex.verdict.max_steps;
}

/// Sinks of an SN graph; throws MeasureUndefined otherwise.
template <class Node, class Label>
std::vector<Node> normal_forms(const Exploration<Node, Label>& ex) {
  if (!ex.strongly_normalising()) {
    throw MeasureUndefined(std::string("normal forms need a strongly normalising graph, verdict is ") +
                           verdict_name(ex.verdict.kind));
  }
  std::vector<Node> out;
  for (std::size_t id : ex.verdict.normal_forms) out.push_back(ex.graph.nodes[id]);
  return out;
}

}  // namespace aeff

#endif  // AEFF_EXPLORER_HPP
