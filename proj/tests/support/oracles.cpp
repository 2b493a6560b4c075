#include "oracles.hpp"

#include <algorithm>
#include <sstream>

#include "aeff/reduce_seq.hpp"
#include "aeff/surface.hpp"

namespace aeff::testing {

namespace {

struct Fuel {
  std::size_t left;
  bool spend() {
    if (left == 0) return false;
    --left;
    return true;
  }
};

std::optional<std::size_t> steps_rec(const Computation& m, Fuel& fuel) {
  if (!fuel.spend()) return std::nullopt;
  std::size_t best = 0;
  for (const auto& s : step_seq(m)) {
    auto sub = steps_rec(s.result, fuel);
    if (!sub) return std::nullopt;
    best = std::max(best, *sub + 1);
  }
  return best;
}

std::optional<std::size_t> signals_rec(const Computation& m, Fuel& fuel) {
  if (!fuel.spend()) return std::nullopt;
  auto steps = step_seq(m);
  if (steps.empty()) return count_signals(m);
  std::size_t best = 0;
  for (const auto& s : steps) {
    auto sub = signals_rec(s.result, fuel);
    if (!sub) return std::nullopt;
    best = std::max(best, *sub);
  }
  return best;
}

// Shape reduction written out from the rules, independently of step_shape.
using Kind = ParallelShape::Kind;

std::vector<ParallelShape> shape_reducts(const ParallelShape& s) {
  std::vector<ParallelShape> out;
  switch (s.kind()) {
    case Kind::Run: break;
    case Kind::Par: {
      const auto& l = s.left();
      const auto& r = s.right();
      if (l.kind() == Kind::Up) out.push_back(ParallelShape::up(ParallelShape::par(l.body(), ParallelShape::down(r))));
      if (r.kind() == Kind::Up) out.push_back(ParallelShape::up(ParallelShape::par(ParallelShape::down(l), r.body())));
      for (auto& x : shape_reducts(l)) out.push_back(ParallelShape::par(x, r));
      for (auto& x : shape_reducts(r)) out.push_back(ParallelShape::par(l, x));
      break;
    }
    case Kind::Up:
      for (auto& x : shape_reducts(s.body())) out.push_back(ParallelShape::up(x));
      break;
    case Kind::Down: {
      const auto& b = s.body();
      if (b.kind() == Kind::Run) out.push_back(ParallelShape::run());
      if (b.kind() == Kind::Par) {
        out.push_back(ParallelShape::par(ParallelShape::down(b.left()), ParallelShape::down(b.right())));
      }
      if (b.kind() == Kind::Up) out.push_back(ParallelShape::up(ParallelShape::down(b.body())));
      for (auto& x : shape_reducts(b)) out.push_back(ParallelShape::down(x));
      break;
    }
  }
  return out;
}

std::optional<std::size_t> shape_rec(const ParallelShape& s, Fuel& fuel) {
  if (!fuel.spend()) return std::nullopt;
  std::size_t best = 0;
  for (const auto& r : shape_reducts(s)) {
    auto sub = shape_rec(r, fuel);
    if (!sub) return std::nullopt;
    best = std::max(best, *sub + 1);
  }
  return best;
}

}  // namespace

std::optional<std::size_t> naive_max_steps(const Computation& m, std::size_t fuel) {
  Fuel f{fuel};
  return steps_rec(m, f);
}

std::optional<std::size_t> naive_max_signals(const Computation& m, std::size_t fuel) {
  Fuel f{fuel};
  return signals_rec(m, f);
}

std::optional<std::size_t> naive_max_sh(const ParallelShape& s, std::size_t fuel) {
  Fuel f{fuel};
  return shape_rec(s, f);
}

std::size_t count_signals(const Computation& m) {
  std::size_t n = 0;
  const Computation* cur = &m;
  while (auto s = cur->as<comp::Signal>()) {
    ++n;
    cur = &s->body;
  }
  return n;
}

std::size_t count_entries(const EffectMap& iota) {
  std::size_t n = 0;
  for (const auto& entry : iota) n += 1 + count_entries(entry.effect.handlers);
  return n;
}

EffectAnnotation act(const OpName& op, const EffectAnnotation& e) {
  const EffectAnnotation* inner = e.handlers.find(op);
  if (inner == nullptr) return e;
  EffectAnnotation rest = e;
  rest.handlers.erase(op);
  return join(rest, *inner);
}

bool is_result_form(const Computation& m) {
  if (m.is<comp::Return>()) return true;
  if (auto s = m.as<comp::Signal>()) return is_result_form(s->body);
  if (auto h = m.as<comp::Handler>()) return is_result_form(h->cont);
  if (auto a = m.as<comp::Await>()) return a->promise.is<val::Var>();
  return false;
}

bool is_process_result(const Process& p) {
  if (auto r = p.as<proc::Run>()) return is_result_form(r->computation) && !r->computation.is<comp::Signal>();
  if (auto x = p.as<proc::Par>()) return is_process_result(x->left) && is_process_result(x->right);
  if (auto s = p.as<proc::Signal>()) return is_process_result(s->body);
  return false;
}

// ---------------------------------------------------------------------------

DeclarativeTyping::DeclarativeTyping(Signature sig, std::vector<TypeExpr> types,
                                     std::vector<EffectAnnotation> annotations)
    : sig_(std::move(sig)), types_(std::move(types)), annotations_(std::move(annotations)) {}

bool DeclarativeTyping::accepts(const Computation& m, const TypeExpr& x, const EffectAnnotation& e) {
  std::vector<TypeExpr> ctx;
  return comp(ctx, m, x, e);
}

std::string DeclarativeTyping::key(const std::vector<TypeExpr>& ctx, const Computation& m,
                                   const TypeExpr& x, const EffectAnnotation& e) const {
  std::ostringstream out;
  for (const auto& t : ctx) out << format_type(t) << ';';
  NameContext names;
  for (std::size_t i = 0; i < ctx.size(); ++i) names.push_back("v" + std::to_string(i));
  out << '|' << pretty(m, names) << '|' << format_type(x) << '|' << format_effect(e);
  return out.str();
}

bool DeclarativeTyping::value(std::vector<TypeExpr>& ctx, const Value& v, const TypeExpr& x) {
  if (auto var = v.as<val::Var>()) return var->index < ctx.size() && ctx[ctx.size() - 1 - var->index] == x;
  if (v.is<val::Unit>()) return x.is<type::Unit>();
  if (auto p = v.as<val::Promise>()) {
    auto t = x.as<type::Promise>();
    return t != nullptr && value(ctx, p->payload, t->payload);
  }
  if (auto l = v.as<val::Inl>()) {
    auto t = x.as<type::Sum>();
    return t != nullptr && value(ctx, l->payload, t->left);
  }
  if (auto r = v.as<val::Inr>()) {
    auto t = x.as<type::Sum>();
    return t != nullptr && value(ctx, r->payload, t->right);
  }
  auto f = v.as<val::Fun>();
  auto t = x.as<type::Arrow>();
  if (t == nullptr || !f->param_type || !(*f->param_type == t->domain)) return false;
  ctx.push_back(t->domain);
  bool ok = comp(ctx, f->body, t->codomain, t->effect ? *t->effect : EffectAnnotation{});
  ctx.pop_back();
  return ok;
}

bool DeclarativeTyping::comp(std::vector<TypeExpr>& ctx, const Computation& m, const TypeExpr& x,
                             const EffectAnnotation& e) {
  std::string k = key(ctx, m, x, e);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  auto under = [&](const TypeExpr& t, const Computation& body, const TypeExpr& y, const EffectAnnotation& f) {
    ctx.push_back(t);
    bool ok = comp(ctx, body, y, f);
    ctx.pop_back();
    return ok;
  };
  bool ok = false;
  if (auto r = m.as<comp::Return>()) {
    ok = value(ctx, r->value, x);
  } else if (auto l = m.as<comp::Let>()) {
    for (const auto& t : types_) {
      if (comp(ctx, l->bound, t, e) && under(t, l->body, x, e)) {
        ok = true;
        break;
      }
    }
  } else if (auto a = m.as<comp::App>()) {
    // Only literal functions applied in place belong to the fragment.
    if (auto f = a->fn.as<val::Fun>(); f && f->param_type) {
      ok = value(ctx, a->arg, *f->param_type) && under(*f->param_type, f->body, x, e);
    }
  } else if (auto s = m.as<comp::Signal>()) {
    const TypeExpr* payload = sig_.lookup(s->op);
    ok = payload && e.signals.count(s->op) > 0 && value(ctx, s->payload, *payload) && comp(ctx, s->body, x, e);
  } else if (auto i = m.as<comp::Interrupt>()) {
    const TypeExpr* payload = sig_.lookup(i->op);
    if (payload && value(ctx, i->payload, *payload)) {
      for (const auto& inner : annotations_) {
        if (leq(act(i->op, inner), e) && comp(ctx, i->body, x, inner)) {
          ok = true;
          break;
        }
      }
    }
  } else if (auto h = m.as<comp::Handler>()) {
    const TypeExpr* payload = sig_.lookup(h->op);
    const EffectAnnotation* code = e.handlers.find(h->op);
    if (h->kind == HandlerKind::Plain && payload && code) {
      for (const auto& t : types_) {
        auto promised = t.as<type::Promise>();
        if (promised == nullptr) continue;
        if (under(*payload, h->handler_body, t, *code) && under(t, h->cont, x, e)) {
          ok = true;
          break;
        }
      }
    }
  } else if (auto w = m.as<comp::Await>()) {
    for (const auto& t : types_) {
      if (value(ctx, w->promise, TypeExpr::promise(t)) && under(t, w->body, x, e)) {
        ok = true;
        break;
      }
    }
  } else if (auto mt = m.as<comp::Match>()) {
    for (const auto& t : types_) {
      auto sum = t.as<type::Sum>();
      if (sum && value(ctx, mt->scrutinee, t) && under(sum->left, mt->left, x, e) &&
          under(sum->right, mt->right, x, e)) {
        ok = true;
        break;
      }
    }
  }
  memo_.emplace(std::move(k), ok);
  return ok;
}

std::vector<EffectAnnotation> shallow_annotations(const std::vector<std::string>& ops) {
  const std::size_t n = ops.size();
  std::vector<OpSet> sets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    OpSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s.insert(OpName(ops[i]));
    }
    sets.push_back(std::move(s));
  }
  // Each op is either absent from ι or maps to (o', ∅) for one of the sets.
  std::vector<EffectMap> maps{EffectMap{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<EffectMap> next;
    for (const auto& base : maps) {
      next.push_back(base);
      for (const auto& s : sets) {
        EffectMap m = base;
        m.set(OpName(ops[i]), EffectAnnotation{s, {}});
        next.push_back(std::move(m));
      }
    }
    maps = std::move(next);
  }
  std::vector<EffectAnnotation> out;
  for (const auto& s : sets) {
    for (const auto& m : maps) out.push_back(EffectAnnotation{s, m});
  }
  return out;
}

}  // namespace aeff::testing
