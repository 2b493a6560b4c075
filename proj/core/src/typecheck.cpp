#include "aeff/typecheck.hpp"

namespace aeff {

const char* typing_mode_name(TypingMode mode) {
  return mode == TypingMode::Skeletal ? "skeletal" : "effects";
}

void Context::push(std::string name, TypeExpr type) {
  entries_.emplace_back(std::move(name), std::move(type));
}

void Context::pop() { entries_.pop_back(); }

const TypeExpr& Context::type_of(std::size_t index) const {
  return entries_.at(entries_.size() - 1 - index).second;
}

const std::string& Context::name_of(std::size_t index) const {
  return entries_.at(entries_.size() - 1 - index).first;
}

NameContext Context::names() const {
  NameContext out;
  out.reserve(entries_.size());
  for (const auto& [name, type] : entries_) out.push_back(name);
  return out;
}

std::string format_comp_type(const CompType& t, TypingMode mode) {
  if (mode == TypingMode::Skeletal) return format_type(t.type);
  std::string x = format_type(t.type);
  if (t.type.is<type::Arrow>()) x = "(" + x + ")";
  return x + " ! " + format_effect(t.effect);
}

namespace {

const EffectAnnotation kBottom{};

const EffectAnnotation& effect_or_bottom(const std::optional<EffectAnnotation>& e) {
  return e ? *e : kBottom;
}

class Inference {
 public:
  Inference(TypingMode mode, const Signature& sig) : mode_(mode), sig_(sig) {}

  TypeExpr fresh() {
    holes_.emplace_back();
    return TypeExpr::hole(holes_.size() - 1);
  }

  TypeExpr resolve(TypeExpr t) const {
    while (auto h = t.as<type::Hole>()) {
      if (h->id >= holes_.size() || !holes_[h->id]) break;
      t = *holes_[h->id];
    }
    return t;
  }

  TypeExpr zonk(const TypeExpr& t) const {
    TypeExpr r = resolve(t);
    if (auto a = r.as<type::Arrow>()) {
      return TypeExpr::arrow(zonk(a->domain), zonk(a->codomain), a->effect);
    }
    if (auto p = r.as<type::Promise>()) return TypeExpr::promise(zonk(p->payload));
    if (auto s = r.as<type::Sum>()) return TypeExpr::sum(zonk(s->left), zonk(s->right));
    return r;
  }

  /// Context types are translated to the current mode once, on entry.
  TypeExpr adapt(const TypeExpr& t) const {
    return mode_ == TypingMode::Skeletal ? erase(t) : with_bottom_effects(t);
  }

  /// Checks S ≤ T, binding holes as needed.
  bool subsume(const TypeExpr& s0, const TypeExpr& t0) {
    TypeExpr s = resolve(s0);
    TypeExpr t = resolve(t0);
    if (auto hs = s.as<type::Hole>()) {
      if (auto ht = t.as<type::Hole>(); ht && ht->id == hs->id) return true;
      return bind(hs->id, t);
    }
    if (auto ht = t.as<type::Hole>()) return bind(ht->id, s);
    if (s.node().data.index() != t.node().data.index()) return false;
    if (auto b = s.as<type::Base>()) return b->name == t.as<type::Base>()->name;
    if (s.is<type::Unit>()) return true;
    if (auto p = s.as<type::Promise>()) return subsume(p->payload, t.as<type::Promise>()->payload);
    if (auto x = s.as<type::Sum>()) {
      auto y = t.as<type::Sum>();
      return subsume(x->left, y->left) && subsume(x->right, y->right);
    }
    auto x = s.as<type::Arrow>();
    auto y = t.as<type::Arrow>();
    if (!subsume(y->domain, x->domain) || !subsume(x->codomain, y->codomain)) return false;
    if (mode_ == TypingMode::Skeletal) return true;
    return leq(effect_or_bottom(x->effect), effect_or_bottom(y->effect));
  }

  /// Least common supertype.
  std::optional<TypeExpr> join_types(const TypeExpr& s0, const TypeExpr& t0) {
    TypeExpr s = resolve(s0);
    TypeExpr t = resolve(t0);
    if (auto hs = s.as<type::Hole>()) {
      if (auto ht = t.as<type::Hole>(); ht && ht->id == hs->id) return s;
      if (!bind(hs->id, t)) return std::nullopt;
      return t;
    }
    if (auto ht = t.as<type::Hole>()) {
      if (!bind(ht->id, s)) return std::nullopt;
      return s;
    }
    if (s.node().data.index() != t.node().data.index()) return std::nullopt;
    if (auto b = s.as<type::Base>()) {
      if (b->name != t.as<type::Base>()->name) return std::nullopt;
      return s;
    }
    if (s.is<type::Unit>()) return s;
    if (auto p = s.as<type::Promise>()) {
      auto inner = join_types(p->payload, t.as<type::Promise>()->payload);
      if (!inner) return std::nullopt;
      return TypeExpr::promise(*inner);
    }
    if (auto x = s.as<type::Sum>()) {
      auto y = t.as<type::Sum>();
      auto l = join_types(x->left, y->left);
      auto r = join_types(x->right, y->right);
      if (!l || !r) return std::nullopt;
      return TypeExpr::sum(*l, *r);
    }
    auto x = s.as<type::Arrow>();
    auto y = t.as<type::Arrow>();
    if (!subsume(x->domain, y->domain) || !subsume(y->domain, x->domain)) return std::nullopt;
    auto cod = join_types(x->codomain, y->codomain);
    if (!cod) return std::nullopt;
    std::optional<EffectAnnotation> e;
    if (mode_ == TypingMode::Effects) e = join(effect_or_bottom(x->effect), effect_or_bottom(y->effect));
    return TypeExpr::arrow(x->domain, *cod, e);
  }

  TypeExpr value(std::vector<TypeExpr>& ctx, const Value& v);
  CompType computation(std::vector<TypeExpr>& ctx, const Computation& m);

  [[noreturn]] void fail(SourceLoc loc, std::string message,
                         std::optional<TypeExpr> expected = std::nullopt,
                         std::optional<TypeExpr> actual = std::nullopt) const {
    Diagnostic d;
    d.loc = loc;
    d.message = std::move(message);
    if (expected) d.expected = format_type(zonk(*expected));
    if (actual) d.actual = format_type(zonk(*actual));
    throw TypeError(std::move(d));
  }

  void require_subtype(SourceLoc loc, const std::string& what, const TypeExpr& actual,
                       const TypeExpr& expected) {
    if (!subsume(actual, expected)) fail(loc, "type mismatch in " + what, expected, actual);
  }

  const TypeExpr& payload_type(SourceLoc loc, const OpName& op) const {
    const TypeExpr* t = sig_.lookup(op);
    if (t == nullptr) fail(loc, "undeclared operation " + op.text);
    return *t;
  }

  TypingMode mode() const { return mode_; }

 private:
  bool occurs(std::size_t id, const TypeExpr& t0) const {
    TypeExpr t = resolve(t0);
    if (auto h = t.as<type::Hole>()) return h->id == id;
    if (auto a = t.as<type::Arrow>()) return occurs(id, a->domain) || occurs(id, a->codomain);
    if (auto p = t.as<type::Promise>()) return occurs(id, p->payload);
    if (auto s = t.as<type::Sum>()) return occurs(id, s->left) || occurs(id, s->right);
    return false;
  }

  bool bind(std::size_t id, const TypeExpr& t) {
    if (occurs(id, t)) return false;
    holes_[id] = t;
    return true;
  }

  TypingMode mode_;
  const Signature& sig_;
  std::vector<std::optional<TypeExpr>> holes_;
};

TypeExpr Inference::value(std::vector<TypeExpr>& ctx, const Value& v) {
  if (auto x = v.as<val::Var>()) {
    if (x->index >= ctx.size()) fail(v.loc(), "unbound variable " + x->hint);
    return ctx[ctx.size() - 1 - x->index];
  }
  if (v.is<val::Unit>()) return TypeExpr::unit();
  if (auto x = v.as<val::Promise>()) return TypeExpr::promise(value(ctx, x->payload));
  if (auto x = v.as<val::Inl>()) return TypeExpr::sum(value(ctx, x->payload), fresh());
  if (auto x = v.as<val::Inr>()) return TypeExpr::sum(fresh(), value(ctx, x->payload));
  auto f = v.as<val::Fun>();
  TypeExpr param = [&] {
    if (f->param_type) return adapt(*f->param_type);
    if (mode_ == TypingMode::Effects) {
      fail(v.loc(), "function parameter " + f->hint + " needs a type annotation in effects mode");
    }
    return fresh();
  }();
  ctx.push_back(param);
  CompType body = computation(ctx, f->body);
  ctx.pop_back();
  std::optional<EffectAnnotation> e;
  if (mode_ == TypingMode::Effects) e = body.effect;
  return TypeExpr::arrow(param, body.type, e);
}

CompType Inference::computation(std::vector<TypeExpr>& ctx, const Computation& m) {
  if (auto x = m.as<comp::Return>()) return {value(ctx, x->value), {}};
  if (auto x = m.as<comp::Let>()) {
    CompType bound = computation(ctx, x->bound);
    ctx.push_back(bound.type);
    CompType body = computation(ctx, x->body);
    ctx.pop_back();
    return {body.type, join(bound.effect, body.effect)};
  }
  if (auto x = m.as<comp::App>()) {
    TypeExpr fn = resolve(value(ctx, x->fn));
    TypeExpr arg = value(ctx, x->arg);
    if (fn.is<type::Hole>()) {
      TypeExpr result = fresh();
      std::optional<EffectAnnotation> e;
      if (mode_ == TypingMode::Effects) e = EffectAnnotation{};
      subsume(fn, TypeExpr::arrow(arg, result, e));
      return {result, {}};
    }
    auto arrow = fn.as<type::Arrow>();
    if (arrow == nullptr) {
      fail(x->fn.loc().known() ? x->fn.loc() : m.loc(), "applying a value that is not a function",
           std::nullopt, fn);
    }
    require_subtype(x->arg.loc().known() ? x->arg.loc() : m.loc(), "function argument", arg,
                    arrow->domain);
    return {arrow->codomain, effect_or_bottom(arrow->effect)};
  }
  if (auto x = m.as<comp::Signal>()) {
    require_subtype(m.loc(), "payload of signal " + x->op.text, value(ctx, x->payload),
                    payload_type(m.loc(), x->op));
    CompType body = computation(ctx, x->body);
    if (mode_ == TypingMode::Effects) body.effect.signals.insert(x->op);
    return body;
  }
  if (auto x = m.as<comp::Interrupt>()) {
    require_subtype(m.loc(), "payload of interrupt " + x->op.text, value(ctx, x->payload),
                    payload_type(m.loc(), x->op));
    CompType body = computation(ctx, x->body);
    if (mode_ == TypingMode::Effects) body.effect = op_act(x->op, body.effect);
    return body;
  }
  if (auto x = m.as<comp::Handler>()) {
    const TypeExpr& payload = payload_type(m.loc(), x->op);
    if (x->kind == HandlerKind::LegacyReinstall && mode_ == TypingMode::Effects) {
      fail(m.loc(),
           "handler 'promise rec' for " + x->op.text +
               " has no finite effect annotation; check it in skeletal mode");
    }
    TypeExpr result = fresh();
    TypeExpr promised = TypeExpr::promise(result);
    ctx.push_back(payload);
    if (x->kind == HandlerKind::LegacyReinstall) {
      ctx.push_back(TypeExpr::arrow(TypeExpr::unit(), promised));
    }
    CompType body = computation(ctx, x->handler_body);
    for (std::size_t i = 0; i < x->body_binders(); ++i) ctx.pop_back();
    SourceLoc body_loc = x->handler_body.loc().known() ? x->handler_body.loc() : m.loc();
    if (x->kind == HandlerKind::SumReinstall) {
      require_subtype(body_loc, "handler code of " + x->op.text, body.type,
                      TypeExpr::sum(promised, TypeExpr::unit()));
    } else {
      require_subtype(body_loc, "handler code of " + x->op.text, body.type, promised);
    }
    ctx.push_back(promised);
    CompType cont = computation(ctx, x->cont);
    ctx.pop_back();
    if (mode_ == TypingMode::Effects) {
      EffectAnnotation own;
      own.handlers.set(x->op, body.effect);
      cont.effect = join(cont.effect, own);
    }
    return cont;
  }
  if (auto x = m.as<comp::Await>()) {
    TypeExpr t = resolve(value(ctx, x->promise));
    if (t.is<type::Hole>()) subsume(t, TypeExpr::promise(fresh()));
    auto p = resolve(t).as<type::Promise>();
    if (p == nullptr) {
      fail(x->promise.loc().known() ? x->promise.loc() : m.loc(), "expected a promise",
           TypeExpr::promise(fresh()), t);
    }
    TypeExpr inner = p->payload;
    ctx.push_back(inner);
    CompType body = computation(ctx, x->body);
    ctx.pop_back();
    return body;
  }
  auto x = m.as<comp::Match>();
  TypeExpr t = resolve(value(ctx, x->scrutinee));
  if (t.is<type::Hole>()) {
    TypeExpr l = fresh();
    TypeExpr r = fresh();
    subsume(t, TypeExpr::sum(l, r));
    t = TypeExpr::sum(l, r);
  }
  auto sum = t.as<type::Sum>();
  if (sum == nullptr) {
    fail(x->scrutinee.loc().known() ? x->scrutinee.loc() : m.loc(), "expected a sum",
         TypeExpr::sum(fresh(), fresh()), t);
  }
  ctx.push_back(sum->left);
  CompType left = computation(ctx, x->left);
  ctx.pop_back();
  ctx.push_back(sum->right);
  CompType right = computation(ctx, x->right);
  ctx.pop_back();
  auto joined = join_types(left.type, right.type);
  if (!joined) fail(m.loc(), "match branches have incompatible types", left.type, right.type);
  return {*joined, join(left.effect, right.effect)};
}

std::vector<TypeExpr> initial(const Inference& inf, const Context& ctx) {
  std::vector<TypeExpr> out;
  out.reserve(ctx.size());
  for (std::size_t i = ctx.size(); i-- > 0;) out.push_back(inf.adapt(ctx.type_of(i)));
  return out;
}

}  // namespace

TypeExpr infer_value(TypingMode mode, const Signature& sig, const Context& ctx, const Value& v) {
  Inference inf(mode, sig);
  auto types = initial(inf, ctx);
  return inf.zonk(inf.value(types, v));
}

CompType infer(TypingMode mode, const Signature& sig, const Context& ctx, const Computation& m) {
  Inference inf(mode, sig);
  auto types = initial(inf, ctx);
  CompType out = inf.computation(types, m);
  out.type = inf.zonk(out.type);
  return out;
}

TypeExpr infer_skeletal(const Signature& sig, const Context& ctx, const Computation& m) {
  return infer(TypingMode::Skeletal, sig, ctx, m).type;
}

TypeExpr infer_skeletal(const Signature& sig, const Context& ctx, const Value& v) {
  return infer_value(TypingMode::Skeletal, sig, ctx, v);
}

CompType infer_effects(const Signature& sig, const Context& ctx, const Computation& m) {
  return infer(TypingMode::Effects, sig, ctx, m);
}

bool check_effects(const Signature& sig, const Context& ctx, const Computation& m,
                   const TypeExpr& x, const EffectAnnotation& e) {
  CompType inferred = infer_effects(sig, ctx, m);
  if (!leq(inferred.effect, e)) return false;
  return subtype(inferred.type, with_bottom_effects(x));
}

bool subtype(const TypeExpr& s, const TypeExpr& t) {
  static const Signature empty;
  Inference inf(TypingMode::Effects, empty);
  return inf.subsume(s, t);
}

std::string format_process_type(const ProcessType& t, TypingMode mode) {
  if (t.is_run()) return "run " + format_comp_type(*t.run, mode);
  std::string left = format_process_type(*t.left, mode);
  if (!t.left->is_run()) left = "(" + left + ")";
  return left + " || " + format_process_type(*t.right, mode);
}

std::string format_process_path(const std::vector<std::string>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (const auto& frame : path) {
    if (!out.empty()) out += ".";
    out += frame;
  }
  return out;
}

namespace {

ProcessType act_on_leaves(const OpName& op, const ProcessType& t) {
  if (t.is_run()) {
    ProcessType out;
    out.run = CompType{t.run->type, op_act(op, t.run->effect)};
    return out;
  }
  ProcessType out;
  out.left = std::make_shared<ProcessType>(act_on_leaves(op, *t.left));
  out.right = std::make_shared<ProcessType>(act_on_leaves(op, *t.right));
  return out;
}

ProcessType type_process(TypingMode mode, const Signature& sig, const Context& ctx,
                         const Process& p, std::vector<std::string>& path,
                         std::vector<LeafTyping>& leaves) {
  if (auto x = p.as<proc::Run>()) {
    std::optional<CompType> t;
    try {
      t = infer(mode, sig, ctx, x->computation);
    } catch (const TypeError& e) {
      Diagnostic d = e.diagnostic();
      d.message = "in process leaf " + format_process_path(path) + ": " + d.message;
      throw TypeError(std::move(d));
    }
    leaves.push_back({path, *t});
    ProcessType out;
    out.run = t;
    return out;
  }
  if (auto x = p.as<proc::Par>()) {
    path.push_back("left");
    auto left = type_process(mode, sig, ctx, x->left, path, leaves);
    path.back() = "right";
    auto right = type_process(mode, sig, ctx, x->right, path, leaves);
    path.pop_back();
    ProcessType out;
    out.left = std::make_shared<ProcessType>(std::move(left));
    out.right = std::make_shared<ProcessType>(std::move(right));
    return out;
  }
  const bool is_signal = p.is<proc::Signal>();
  const OpName& op = is_signal ? p.as<proc::Signal>()->op : p.as<proc::Interrupt>()->op;
  const Value& payload = is_signal ? p.as<proc::Signal>()->payload : p.as<proc::Interrupt>()->payload;
  const Process& body = is_signal ? p.as<proc::Signal>()->body : p.as<proc::Interrupt>()->body;
  const TypeExpr* expected = sig.lookup(op);
  if (expected == nullptr) {
    throw TypeError(Diagnostic{Severity::Error, p.loc(), "undeclared operation " + op.text, {}, {}});
  }
  TypeExpr actual = infer_value(mode, sig, ctx, payload);
  if (!subtype(actual, *expected)) {
    throw TypeError(Diagnostic{Severity::Error, p.loc(),
                               "type mismatch in payload of " + op.text + " at " +
                                   format_process_path(path),
                               format_type(*expected), format_type(actual)});
  }
  path.push_back(is_signal ? "signal" : "interrupt");
  ProcessType inner = type_process(mode, sig, ctx, body, path, leaves);
  path.pop_back();
  if (is_signal || mode == TypingMode::Skeletal) return inner;
  return act_on_leaves(op, inner);
}

}  // namespace

ProcessTypeReport typecheck_process(TypingMode mode, const Signature& sig, const Context& ctx,
                                    const Process& p) {
  ProcessTypeReport report;
  std::vector<std::string> path;
  report.composite = type_process(mode, sig, ctx, p, path, report.leaves);
  return report;
}

}  // namespace aeff
