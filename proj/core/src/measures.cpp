#include "aeff/measures.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "aeff/error.hpp"
#include "aeff/typecheck.hpp"

namespace aeff {

std::size_t size_i(const EffectMap& iota) { return handler_size(iota); }

std::size_t size_i_paths(const EffectMap& iota) { return paths(iota).size(); }

namespace {

/// Largest signal spine reachable from every node of an SN graph.
std::vector<std::size_t> signals_per_node(const SeqExploration& ex) {
  const auto& g = ex.graph;
  std::vector<std::size_t> order(g.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  // Every successor has a strictly smaller longest path, so this is a
  // topological order from the sinks upwards.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ex.longest[a] < ex.longest[b]; });
  std::vector<std::size_t> best(g.nodes.size(), 0);
  for (std::size_t id : order) {
    if (g.out_edges[id].empty()) {
      best[id] = signal_spine(g.nodes[id]);
      continue;
    }
    for (std::size_t eid : g.out_edges[id]) best[id] = std::max(best[id], best[g.edges[eid].dst]);
  }
  return best;
}

SeqExploration explore_sn(const Computation& m, std::size_t budget, const char* what) {
  auto ex = explore(m, budget);
  if (!ex.strongly_normalising()) {
    throw MeasureUndefined(std::string(what) + " is undefined: verdict " + verdict_name(ex.verdict.kind) +
                           " for " + pretty(m));
  }
  return ex;
}

}  // namespace

std::size_t max_signals(const Computation& m, std::size_t budget) {
  auto ex = explore_sn(m, budget, "max_signals");
  return signals_per_node(ex)[0];
}

std::size_t max_steps(const Computation& m, std::size_t budget) {
  return explore_sn(m, budget, "max_steps").verdict.max_steps;
}

// ---------------------------------------------------------------------------

ParallelShape ParallelShape::make(Kind kind, std::vector<ParallelShape> children) {
  std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL + 17;
  std::size_t size = 1;
  for (const auto& c : children) {
    h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    size += c.size();
  }
  return ParallelShape(std::make_shared<const Node>(Node{kind, std::move(children), h, size}));
}

ParallelShape ParallelShape::run() { return make(Kind::Run, {}); }
ParallelShape ParallelShape::par(ParallelShape left, ParallelShape right) {
  return make(Kind::Par, {std::move(left), std::move(right)});
}
ParallelShape ParallelShape::down(ParallelShape body) { return make(Kind::Down, {std::move(body)}); }
ParallelShape ParallelShape::up(ParallelShape body) { return make(Kind::Up, {std::move(body)}); }

const ParallelShape& ParallelShape::left() const {
  if (node_->children.empty()) throw Error("run shape has no children");
  return node_->children[0];
}

const ParallelShape& ParallelShape::right() const {
  if (node_->kind != Kind::Par) throw Error("only parallel shapes have a right child");
  return node_->children[1];
}

bool ParallelShape::operator==(const ParallelShape& other) const {
  if (node_ == other.node_) return true;
  if (hash() != other.hash() || kind() != other.kind() || size() != other.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i) {
    if (!(node_->children[i] == other.node_->children[i])) return false;
  }
  return true;
}

std::string format_shape(const ParallelShape& s) {
  switch (s.kind()) {
    case ParallelShape::Kind::Run: return "run";
    case ParallelShape::Kind::Par: {
      std::string l = format_shape(s.left());
      if (s.left().kind() == ParallelShape::Kind::Par) l = "(" + l + ")";
      return l + " || " + (s.right().kind() == ParallelShape::Kind::Par ? "(" + format_shape(s.right()) + ")"
                                                                         : format_shape(s.right()));
    }
    case ParallelShape::Kind::Down:
    case ParallelShape::Kind::Up: {
      std::string inner = format_shape(s.body());
      if (s.body().kind() == ParallelShape::Kind::Par) inner = "(" + inner + ")";
      return (s.kind() == ParallelShape::Kind::Down ? "down " : "up ") + inner;
    }
  }
  return "?";
}

ParallelShape shape_of(const Process& p) {
  if (p.as<proc::Run>()) return ParallelShape::run();
  if (auto x = p.as<proc::Par>()) return ParallelShape::par(shape_of(x->left), shape_of(x->right));
  if (auto x = p.as<proc::Signal>()) return ParallelShape::up(shape_of(x->body));
  return ParallelShape::down(shape_of(p.as<proc::Interrupt>()->body));
}

namespace {

using SK = ParallelShape::Kind;

void shape_steps(const ParallelShape& s, std::vector<ShapeStep>& out) {
  auto root = [&](ProcRule rule, ParallelShape result) {
    ProcRuleLabel label;
    label.rule = rule;
    out.push_back(ShapeStep{std::move(label), std::move(result)});
  };
  auto descend = [&](const ParallelShape& sub, ProcFrame frame, auto rebuild) {
    std::vector<ShapeStep> inner;
    shape_steps(sub, inner);
    for (auto& st : inner) {
      st.label.path.insert(st.label.path.begin(), frame);
      out.push_back(ShapeStep{std::move(st.label), rebuild(st.result)});
    }
  };
  switch (s.kind()) {
    case SK::Run: return;
    case SK::Par: {
      const auto& l = s.left();
      const auto& r = s.right();
      if (l.kind() == SK::Up) {
        root(ProcRule::R16, ParallelShape::up(ParallelShape::par(l.body(), ParallelShape::down(r))));
      }
      if (r.kind() == SK::Up) {
        root(ProcRule::R17, ParallelShape::up(ParallelShape::par(ParallelShape::down(l), r.body())));
      }
      descend(l, ProcFrame::ParLeft, [&](const ParallelShape& x) { return ParallelShape::par(x, r); });
      descend(r, ProcFrame::ParRight, [&](const ParallelShape& x) { return ParallelShape::par(l, x); });
      return;
    }
    case SK::Down: {
      const auto& b = s.body();
      if (b.kind() == SK::Run) root(ProcRule::R18, ParallelShape::run());
      if (b.kind() == SK::Par) {
        root(ProcRule::R19, ParallelShape::par(ParallelShape::down(b.left()), ParallelShape::down(b.right())));
      }
      if (b.kind() == SK::Up) root(ProcRule::R20, ParallelShape::up(ParallelShape::down(b.body())));
      descend(b, ProcFrame::Interrupt, [](const ParallelShape& x) { return ParallelShape::down(x); });
      return;
    }
    case SK::Up:
      descend(s.body(), ProcFrame::Signal, [](const ParallelShape& x) { return ParallelShape::up(x); });
      return;
  }
}

}  // namespace

std::vector<ShapeStep> step_shape(const ParallelShape& s) {
  std::vector<ShapeStep> out;
  shape_steps(s, out);
  return out;
}

ShapeExploration explore(const ParallelShape& root, std::size_t budget) {
  return explore_graph<ParallelShape, ProcRuleLabel, ShapeHash, ShapeEqual>(
      root, budget, [](const ParallelShape& s) { return step_shape(s); });
}

std::size_t max_sh(const ParallelShape& s, std::size_t budget) {
  auto ex = explore(s, budget);
  if (!ex.strongly_normalising()) {
    throw MeasureUndefined(std::string("max_sh is undefined: verdict ") + verdict_name(ex.verdict.kind) +
                           " for shape " + format_shape(s));
  }
  return ex.verdict.max_steps;
}

// ---------------------------------------------------------------------------

MeasureCache::MeasureCache(Signature sig, std::size_t budget) : sig_(std::move(sig)), budget_(budget) {}

MeasureCache::Dynamics MeasureCache::dynamics(const Computation& m) {
  {
    std::shared_lock lock(mutex_);
    auto it = dynamics_.find(m);
    if (it != dynamics_.end()) return it->second;
  }
  auto ex = explore_sn(m, budget_, "leaf measure");
  auto signals = signals_per_node(ex);
  std::unique_lock lock(mutex_);
  for (std::size_t i = 0; i < ex.graph.nodes.size(); ++i) {
    dynamics_.emplace(ex.graph.nodes[i], Dynamics{signals[i], ex.longest[i]});
  }
  return Dynamics{signals[0], ex.longest[0]};
}

LeafMeasures MeasureCache::leaf(const Computation& m) {
  std::optional<EffectAnnotation> effect;
  {
    std::shared_lock lock(mutex_);
    auto it = effects_.find(m);
    if (it != effects_.end()) effect = it->second;
  }
  if (!effect) {
    try {
      effect = infer_effects(sig_, Context(), m).effect;
    } catch (const TypeError& e) {
      throw MeasureUndefined(std::string("leaf is not effect-typeable: ") + e.what());
    }
    std::unique_lock lock(mutex_);
    effects_.emplace(m, *effect);
  }
  auto d = dynamics(m);
  LeafMeasures out;
  out.effect = *effect;
  out.size_i = size_i(*effect);
  out.max_signals = d.max_signals;
  out.max_steps = d.max_steps;
  return out;
}

std::size_t MeasureCache::max_sh(const ParallelShape& s) {
  {
    std::shared_lock lock(mutex_);
    auto it = shapes_.find(s);
    if (it != shapes_.end()) return it->second;
  }
  auto ex = explore(s, budget_);
  if (!ex.strongly_normalising()) {
    throw MeasureUndefined(std::string("max_sh is undefined: verdict ") + verdict_name(ex.verdict.kind) +
                           " for shape " + format_shape(s));
  }
  std::unique_lock lock(mutex_);
  for (std::size_t i = 0; i < ex.graph.nodes.size(); ++i) shapes_.emplace(ex.graph.nodes[i], ex.longest[i]);
  return ex.longest[0];
}

std::string ProcMeasures::str() const {
  return "(" + std::to_string(size_i) + ", " + std::to_string(max_up) + ", " + std::to_string(max_sh) + ", " +
         std::to_string(max_run) + ")";
}

std::string FlatMeasures::str() const {
  return "(" + std::to_string(size_i) + ", " + std::to_string(max_up) + ", " + std::to_string(max_run) + ")";
}

namespace {

void collect_leaves(const Process& p, std::vector<std::string>& path,
                    std::vector<std::pair<std::string, Computation>>& out) {
  if (auto x = p.as<proc::Run>()) {
    out.emplace_back(format_process_path(path), x->computation);
    return;
  }
  if (auto x = p.as<proc::Par>()) {
    path.push_back("left");
    collect_leaves(x->left, path, out);
    path.back() = "right";
    collect_leaves(x->right, path, out);
    path.pop_back();
    return;
  }
  if (auto x = p.as<proc::Signal>()) {
    path.push_back("signal");
    collect_leaves(x->body, path, out);
  } else {
    path.push_back("interrupt");
    collect_leaves(p.as<proc::Interrupt>()->body, path, out);
  }
  path.pop_back();
}

LeafMeasures measure_leaf(MeasureCache& cache, const std::string& path, const Computation& m) {
  try {
    return cache.leaf(m);
  } catch (const MeasureUndefined& e) {
    throw MeasureUndefined("leaf " + path + ": " + e.what());
  }
}

}  // namespace

ProcMeasureReport proc_measures(const Process& p, MeasureCache& cache) {
  std::vector<std::string> path;
  std::vector<std::pair<std::string, Computation>> leaves;
  collect_leaves(p, path, leaves);
  ProcMeasureReport report;
  for (auto& [where, m] : leaves) {
    LeafMeasures lm = measure_leaf(cache, where, m);
    report.totals.size_i += lm.size_i;
    report.totals.max_up += lm.max_signals;
    report.totals.max_run += lm.max_steps;
    report.leaves.push_back(LeafReport{where, m, std::move(lm)});
  }
  report.totals.max_sh = cache.max_sh(shape_of(p));
  return report;
}

FlatMeasureReport flat_measures(const FlatProcess& p, MeasureCache& cache) {
  FlatMeasureReport report;
  for (std::size_t i = 0; i < p.threads.size(); ++i) {
    std::string where = "thread " + std::to_string(i);
    LeafMeasures lm = measure_leaf(cache, where, p.threads[i]);
    report.totals.size_i += lm.size_i;
    report.totals.max_up += lm.max_signals;
    report.totals.max_run += lm.max_steps;
    report.leaves.push_back(LeafReport{where, p.threads[i], std::move(lm)});
  }
  return report;
}

}  // namespace aeff
