#include "aeff/syntax.hpp"

#include <functional>

namespace aeff {

namespace {

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_op(const OpName& op) { return std::hash<std::string>{}(op.text); }

std::size_t compute_hash(const ValueNode& node) {
  std::size_t seed = 0x100 + node.data.index();
  std::visit(
      [&](const auto& alt) {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, val::Var>) {
          hash_combine(seed, alt.index);
        } else if constexpr (std::is_same_v<T, val::Fun>) {
          hash_combine(seed, alt.param_type ? alt.param_type->hash() : 3);
          hash_combine(seed, alt.body.hash());
        } else if constexpr (std::is_same_v<T, val::Unit>) {
          hash_combine(seed, 11);
        } else {
          hash_combine(seed, alt.payload.hash());
        }
      },
      node.data);
  return seed;
}

std::size_t compute_hash(const ComputationNode& node) {
  std::size_t seed = 0x200 + node.data.index();
  std::visit(
      [&](const auto& alt) {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, comp::Return>) {
          hash_combine(seed, alt.value.hash());
        } else if constexpr (std::is_same_v<T, comp::Let>) {
          hash_combine(seed, alt.bound.hash());
          hash_combine(seed, alt.body.hash());
        } else if constexpr (std::is_same_v<T, comp::App>) {
          hash_combine(seed, alt.fn.hash());
          hash_combine(seed, alt.arg.hash());
        } else if constexpr (std::is_same_v<T, comp::Signal> || std::is_same_v<T, comp::Interrupt>) {
          hash_combine(seed, hash_op(alt.op));
          hash_combine(seed, alt.payload.hash());
          hash_combine(seed, alt.body.hash());
        } else if constexpr (std::is_same_v<T, Boxed<comp::Handler>>) {
          hash_combine(seed, hash_op(alt.ptr->op));
          hash_combine(seed, static_cast<std::size_t>(alt.ptr->kind));
          hash_combine(seed, alt.ptr->handler_body.hash());
          hash_combine(seed, alt.ptr->cont.hash());
        } else if constexpr (std::is_same_v<T, comp::Await>) {
          hash_combine(seed, alt.promise.hash());
          hash_combine(seed, alt.body.hash());
        } else if constexpr (std::is_same_v<T, Boxed<comp::Match>>) {
          hash_combine(seed, alt.ptr->scrutinee.hash());
          hash_combine(seed, alt.ptr->left.hash());
          hash_combine(seed, alt.ptr->right.hash());
        }
      },
      node.data);
  return seed;
}

std::size_t compute_hash(const ProcessNode& node) {
  std::size_t seed = 0x300 + node.data.index();
  std::visit(
      [&](const auto& alt) {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, proc::Run>) {
          hash_combine(seed, alt.computation.hash());
        } else if constexpr (std::is_same_v<T, proc::Par>) {
          hash_combine(seed, alt.left.hash());
          hash_combine(seed, alt.right.hash());
        } else {
          hash_combine(seed, hash_op(alt.op));
          hash_combine(seed, alt.payload.hash());
          hash_combine(seed, alt.body.hash());
        }
      },
      node.data);
  return seed;
}

template <class Node, class Alt>
std::shared_ptr<const Node> make_node(Alt alt, SourceLoc loc) {
  auto node = std::make_shared<Node>(Node{std::move(alt), 0, loc});
  node->hash = compute_hash(*node);
  return node;
}

}  // namespace

// ---------------------------------------------------------------------------
// Constructors

Value Value::var(std::size_t index, std::string hint, SourceLoc loc) {
  return Value(make_node<ValueNode>(val::Var{index, std::move(hint)}, loc));
}
Value Value::fun(std::string hint, std::optional<TypeExpr> param_type, Computation body,
                 SourceLoc loc) {
  return Value(make_node<ValueNode>(val::Fun{std::move(hint), std::move(param_type), std::move(body)},
                                    loc));
}
Value Value::promise(Value payload, SourceLoc loc) {
  return Value(make_node<ValueNode>(val::Promise{std::move(payload)}, loc));
}
Value Value::unit(SourceLoc loc) {
  if (!loc.known()) {
    static const Value shared(make_node<ValueNode>(val::Unit{}, SourceLoc{}));
    return shared;
  }
  return Value(make_node<ValueNode>(val::Unit{}, loc));
}
Value Value::inl(Value payload, SourceLoc loc) {
  return Value(make_node<ValueNode>(val::Inl{std::move(payload)}, loc));
}
Value Value::inr(Value payload, SourceLoc loc) {
  return Value(make_node<ValueNode>(val::Inr{std::move(payload)}, loc));
}
std::size_t Value::hash() const { return node_->hash; }
SourceLoc Value::loc() const { return node_->loc; }

const char* handler_kind_name(HandlerKind kind) {
  switch (kind) {
    case HandlerKind::Plain: return "plain";
    case HandlerKind::LegacyReinstall: return "legacy-reinstall";
    case HandlerKind::SumReinstall: return "sum-reinstall";
  }
  return "?";
}

Computation Computation::ret(Value v, SourceLoc loc) {
  return Computation(make_node<ComputationNode>(comp::Return{std::move(v)}, loc));
}
Computation Computation::let(std::string hint, Computation bound, Computation body, SourceLoc loc) {
  return Computation(
      make_node<ComputationNode>(comp::Let{std::move(hint), std::move(bound), std::move(body)}, loc));
}
Computation Computation::app(Value fn, Value arg, SourceLoc loc) {
  return Computation(make_node<ComputationNode>(comp::App{std::move(fn), std::move(arg)}, loc));
}
Computation Computation::signal(OpName op, Value payload, Computation body, SourceLoc loc) {
  return Computation(make_node<ComputationNode>(
      comp::Signal{std::move(op), std::move(payload), std::move(body)}, loc));
}
Computation Computation::interrupt(OpName op, Value payload, Computation body, SourceLoc loc) {
  return Computation(make_node<ComputationNode>(
      comp::Interrupt{std::move(op), std::move(payload), std::move(body)}, loc));
}
Computation Computation::handler(OpName op, std::string payload_hint, Computation handler_body,
                                 std::string promise_hint, Computation cont, HandlerKind kind,
                                 std::string reinstall_hint, SourceLoc loc) {
  auto boxed = std::make_shared<const comp::Handler>(
      comp::Handler{std::move(op), std::move(payload_hint), std::move(reinstall_hint),
                    std::move(handler_body), std::move(promise_hint), std::move(cont), kind});
  return Computation(make_node<ComputationNode>(Boxed<comp::Handler>{std::move(boxed)}, loc));
}
Computation Computation::await(Value promise, std::string hint, Computation body, SourceLoc loc) {
  return Computation(make_node<ComputationNode>(
      comp::Await{std::move(promise), std::move(hint), std::move(body)}, loc));
}
Computation Computation::match(Value scrutinee, std::string left_hint, Computation left,
                               std::string right_hint, Computation right, SourceLoc loc) {
  auto boxed = std::make_shared<const comp::Match>(comp::Match{
      std::move(scrutinee), std::move(left_hint), std::move(left), std::move(right_hint), std::move(right)});
  return Computation(make_node<ComputationNode>(Boxed<comp::Match>{std::move(boxed)}, loc));
}
std::size_t Computation::hash() const { return node_->hash; }
SourceLoc Computation::loc() const { return node_->loc; }

Process Process::run(Computation c, SourceLoc loc) {
  return Process(make_node<ProcessNode>(proc::Run{std::move(c)}, loc));
}
Process Process::par(Process left, Process right, SourceLoc loc) {
  return Process(make_node<ProcessNode>(proc::Par{std::move(left), std::move(right)}, loc));
}
Process Process::signal(OpName op, Value payload, Process body, SourceLoc loc) {
  return Process(make_node<ProcessNode>(
      proc::Signal{std::move(op), std::move(payload), std::move(body)}, loc));
}
Process Process::interrupt(OpName op, Value payload, Process body, SourceLoc loc) {
  return Process(make_node<ProcessNode>(
      proc::Interrupt{std::move(op), std::move(payload), std::move(body)}, loc));
}
std::size_t Process::hash() const { return node_->hash; }
SourceLoc Process::loc() const { return node_->loc; }

// ---------------------------------------------------------------------------
// α-equivalence

bool alpha_eq(const Value& a, const Value& b) {
  if (a.identity() == b.identity()) return true;
  if (a.hash() != b.hash() || a.node().data.index() != b.node().data.index()) return false;
  if (auto x = a.as<val::Var>()) return x->index == b.as<val::Var>()->index;
  if (auto x = a.as<val::Fun>()) {
    auto y = b.as<val::Fun>();
    if (x->param_type.has_value() != y->param_type.has_value()) return false;
    if (x->param_type && !(*x->param_type == *y->param_type)) return false;
    return alpha_eq(x->body, y->body);
  }
  if (auto x = a.as<val::Promise>()) return alpha_eq(x->payload, b.as<val::Promise>()->payload);
  if (auto x = a.as<val::Inl>()) return alpha_eq(x->payload, b.as<val::Inl>()->payload);
  if (auto x = a.as<val::Inr>()) return alpha_eq(x->payload, b.as<val::Inr>()->payload);
  return true;
}

bool alpha_eq(const Computation& a, const Computation& b) {
  if (a.identity() == b.identity()) return true;
  if (a.hash() != b.hash() || a.node().data.index() != b.node().data.index()) return false;
  if (auto x = a.as<comp::Return>()) return alpha_eq(x->value, b.as<comp::Return>()->value);
  if (auto x = a.as<comp::Let>()) {
    auto y = b.as<comp::Let>();
    return alpha_eq(x->bound, y->bound) && alpha_eq(x->body, y->body);
  }
  if (auto x = a.as<comp::App>()) {
    auto y = b.as<comp::App>();
    return alpha_eq(x->fn, y->fn) && alpha_eq(x->arg, y->arg);
  }
  if (auto x = a.as<comp::Signal>()) {
    auto y = b.as<comp::Signal>();
    return x->op == y->op && alpha_eq(x->payload, y->payload) && alpha_eq(x->body, y->body);
  }
  if (auto x = a.as<comp::Interrupt>()) {
    auto y = b.as<comp::Interrupt>();
    return x->op == y->op && alpha_eq(x->payload, y->payload) && alpha_eq(x->body, y->body);
  }
  if (auto x = a.as<comp::Handler>()) {
    auto y = b.as<comp::Handler>();
    return x->op == y->op && x->kind == y->kind && alpha_eq(x->handler_body, y->handler_body) &&
           alpha_eq(x->cont, y->cont);
  }
  if (auto x = a.as<comp::Await>()) {
    auto y = b.as<comp::Await>();
    return alpha_eq(x->promise, y->promise) && alpha_eq(x->body, y->body);
  }
  auto x = a.as<comp::Match>();
  auto y = b.as<comp::Match>();
  return alpha_eq(x->scrutinee, y->scrutinee) && alpha_eq(x->left, y->left) &&
         alpha_eq(x->right, y->right);
}

bool alpha_eq(const Process& a, const Process& b) {
  if (a.identity() == b.identity()) return true;
  if (a.hash() != b.hash() || a.node().data.index() != b.node().data.index()) return false;
  if (auto x = a.as<proc::Run>()) return alpha_eq(x->computation, b.as<proc::Run>()->computation);
  if (auto x = a.as<proc::Par>()) {
    auto y = b.as<proc::Par>();
    return alpha_eq(x->left, y->left) && alpha_eq(x->right, y->right);
  }
  if (auto x = a.as<proc::Signal>()) {
    auto y = b.as<proc::Signal>();
    return x->op == y->op && alpha_eq(x->payload, y->payload) && alpha_eq(x->body, y->body);
  }
  auto x = a.as<proc::Interrupt>();
  auto y = b.as<proc::Interrupt>();
  return x->op == y->op && alpha_eq(x->payload, y->payload) && alpha_eq(x->body, y->body);
}

// ---------------------------------------------------------------------------
// Variable traversal. `on_var(index, hint, depth, loc)` is called for every
// variable occurrence whose index is >= depth (i.e. free at the root) and
// returns its replacement, already valid under `depth` binders.

namespace {

using VarFn = std::function<Value(std::size_t, const std::string&, std::size_t, SourceLoc)>;

Computation map_vars(const Computation& c, std::size_t depth, const VarFn& on_var);

Value map_vars(const Value& v, std::size_t depth, const VarFn& on_var) {
  if (auto x = v.as<val::Var>()) {
    if (x->index < depth) return v;
    return on_var(x->index, x->hint, depth, v.loc());
  }
  if (auto x = v.as<val::Fun>()) {
    auto body = map_vars(x->body, depth + 1, on_var);
    if (body.identity() == x->body.identity()) return v;
    return Value::fun(x->hint, x->param_type, body, v.loc());
  }
  if (auto x = v.as<val::Promise>()) {
    auto p = map_vars(x->payload, depth, on_var);
    return p.identity() == x->payload.identity() ? v : Value::promise(p, v.loc());
  }
  if (auto x = v.as<val::Inl>()) {
    auto p = map_vars(x->payload, depth, on_var);
    return p.identity() == x->payload.identity() ? v : Value::inl(p, v.loc());
  }
  if (auto x = v.as<val::Inr>()) {
    auto p = map_vars(x->payload, depth, on_var);
    return p.identity() == x->payload.identity() ? v : Value::inr(p, v.loc());
  }
  return v;
}

template <class T>
bool same(const T& a, const T& b) {
  return a.identity() == b.identity();
}

Computation map_vars(const Computation& c, std::size_t depth, const VarFn& on_var) {
  if (auto x = c.as<comp::Return>()) {
    auto v = map_vars(x->value, depth, on_var);
    return same(v, x->value) ? c : Computation::ret(v, c.loc());
  }
  if (auto x = c.as<comp::Let>()) {
    auto m = map_vars(x->bound, depth, on_var);
    auto n = map_vars(x->body, depth + 1, on_var);
    if (same(m, x->bound) && same(n, x->body)) return c;
    return Computation::let(x->hint, m, n, c.loc());
  }
  if (auto x = c.as<comp::App>()) {
    auto f = map_vars(x->fn, depth, on_var);
    auto a = map_vars(x->arg, depth, on_var);
    if (same(f, x->fn) && same(a, x->arg)) return c;
    return Computation::app(f, a, c.loc());
  }
  if (auto x = c.as<comp::Signal>()) {
    auto v = map_vars(x->payload, depth, on_var);
    auto m = map_vars(x->body, depth, on_var);
    if (same(v, x->payload) && same(m, x->body)) return c;
    return Computation::signal(x->op, v, m, c.loc());
  }
  if (auto x = c.as<comp::Interrupt>()) {
    auto v = map_vars(x->payload, depth, on_var);
    auto m = map_vars(x->body, depth, on_var);
    if (same(v, x->payload) && same(m, x->body)) return c;
    return Computation::interrupt(x->op, v, m, c.loc());
  }
  if (auto x = c.as<comp::Handler>()) {
    auto body = map_vars(x->handler_body, depth + x->body_binders(), on_var);
    auto cont = map_vars(x->cont, depth + 1, on_var);
    if (same(body, x->handler_body) && same(cont, x->cont)) return c;
    return Computation::handler(x->op, x->payload_hint, body, x->promise_hint, cont, x->kind,
                                x->reinstall_hint, c.loc());
  }
  if (auto x = c.as<comp::Await>()) {
    auto v = map_vars(x->promise, depth, on_var);
    auto m = map_vars(x->body, depth + 1, on_var);
    if (same(v, x->promise) && same(m, x->body)) return c;
    return Computation::await(v, x->hint, m, c.loc());
  }
  auto x = c.as<comp::Match>();
  auto v = map_vars(x->scrutinee, depth, on_var);
  auto l = map_vars(x->left, depth + 1, on_var);
  auto r = map_vars(x->right, depth + 1, on_var);
  if (same(v, x->scrutinee) && same(l, x->left) && same(r, x->right)) return c;
  return Computation::match(v, x->left_hint, l, x->right_hint, r, c.loc());
}

Process map_vars(const Process& p, std::size_t depth, const VarFn& on_var) {
  if (auto x = p.as<proc::Run>()) {
    auto m = map_vars(x->computation, depth, on_var);
    return same(m, x->computation) ? p : Process::run(m, p.loc());
  }
  if (auto x = p.as<proc::Par>()) {
    auto l = map_vars(x->left, depth, on_var);
    auto r = map_vars(x->right, depth, on_var);
    if (same(l, x->left) && same(r, x->right)) return p;
    return Process::par(l, r, p.loc());
  }
  if (auto x = p.as<proc::Signal>()) {
    auto v = map_vars(x->payload, depth, on_var);
    auto b = map_vars(x->body, depth, on_var);
    if (same(v, x->payload) && same(b, x->body)) return p;
    return Process::signal(x->op, v, b, p.loc());
  }
  auto x = p.as<proc::Interrupt>();
  auto v = map_vars(x->payload, depth, on_var);
  auto b = map_vars(x->body, depth, on_var);
  if (same(v, x->payload) && same(b, x->body)) return p;
  return Process::interrupt(x->op, v, b, p.loc());
}

VarFn shifter(std::size_t by, std::size_t cutoff) {
  return [by, cutoff](std::size_t index, const std::string& hint, std::size_t depth, SourceLoc loc) {
    if (index - depth < cutoff) return Value::var(index, hint, loc);
    return Value::var(index + by, hint, loc);
  };
}

VarFn renamer(const Renaming& r) {
  return [&r](std::size_t index, const std::string& hint, std::size_t depth, SourceLoc loc) {
    auto image = r.apply(index - depth);
    if (!image) {
      throw ScopeError("free variable " + hint + " (index " + std::to_string(index - depth) +
                       ") is not covered by the renaming");
    }
    return Value::var(*image + depth, hint, loc);
  };
}

VarFn substituter(const Substitution& s) {
  return [&s](std::size_t index, const std::string& hint, std::size_t depth, SourceLoc loc) {
    auto it = s.find(index - depth);
    if (it == s.end()) return Value::var(index, hint, loc);
    return depth == 0 ? it->second : shift(it->second, depth);
  };
}

}  // namespace

Renaming Renaming::identity(std::size_t size) {
  std::vector<std::size_t> image(size);
  for (std::size_t i = 0; i < size; ++i) image[i] = i;
  return Renaming(std::move(image));
}

Renaming Renaming::weaken(std::size_t size) {
  std::vector<std::size_t> image(size);
  for (std::size_t i = 0; i < size; ++i) image[i] = i + 1;
  return Renaming(std::move(image));
}

Renaming Renaming::lift() const {
  std::vector<std::size_t> image;
  image.reserve(image_.size() + 1);
  image.push_back(0);
  for (auto target : image_) image.push_back(target + 1);
  return Renaming(std::move(image));
}

Renaming Renaming::then(const Renaming& after) const {
  std::vector<std::size_t> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    auto target = after.apply(image_[i]);
    if (!target) throw ScopeError("renamings do not compose: index outside target context");
    image[i] = *target;
  }
  return Renaming(std::move(image));
}

std::optional<std::size_t> Renaming::apply(std::size_t index) const {
  if (index >= image_.size()) return std::nullopt;
  return image_[index];
}

Value rename(const Value& v, const Renaming& r) { return map_vars(v, 0, renamer(r)); }
Computation rename(const Computation& c, const Renaming& r) { return map_vars(c, 0, renamer(r)); }
Process rename(const Process& p, const Renaming& r) { return map_vars(p, 0, renamer(r)); }

Value substitute(const Value& v, const Substitution& s) {
  return s.empty() ? v : map_vars(v, 0, substituter(s));
}
Computation substitute(const Computation& c, const Substitution& s) {
  return s.empty() ? c : map_vars(c, 0, substituter(s));
}
Process substitute(const Process& p, const Substitution& s) {
  return s.empty() ? p : map_vars(p, 0, substituter(s));
}

Value shift(const Value& v, std::size_t by, std::size_t cutoff) {
  return by == 0 ? v : map_vars(v, 0, shifter(by, cutoff));
}
Computation shift(const Computation& c, std::size_t by, std::size_t cutoff) {
  return by == 0 ? c : map_vars(c, 0, shifter(by, cutoff));
}
Process shift(const Process& p, std::size_t by, std::size_t cutoff) {
  return by == 0 ? p : map_vars(p, 0, shifter(by, cutoff));
}

Computation instantiate(const Computation& body, const Value& v) {
  return map_vars(body, 0,
                  [&v](std::size_t index, const std::string& hint, std::size_t depth, SourceLoc loc) {
                    std::size_t free = index - depth;
                    if (free == 0) return shift(v, depth);
                    return Value::var(index - 1, hint, loc);
                  });
}

Computation instantiate2(const Computation& body, const Value& outer, const Value& inner) {
  return map_vars(body, 0,
                  [&](std::size_t index, const std::string& hint, std::size_t depth, SourceLoc loc) {
                    std::size_t free = index - depth;
                    if (free == 0) return shift(inner, depth);
                    if (free == 1) return shift(outer, depth);
                    return Value::var(index - 2, hint, loc);
                  });
}

std::optional<Value> unshift(const Value& v) {
  bool mentions = false;
  Value out = map_vars(v, 0,
                       [&](std::size_t index, const std::string& hint, std::size_t depth, SourceLoc loc) {
                         if (index == depth) {
                           mentions = true;
                           return Value::var(index, hint, loc);
                         }
                         return Value::var(index - 1, hint, loc);
                       });
  if (mentions) return std::nullopt;
  return out;
}

namespace {

VarFn collector(std::set<std::size_t>& out) {
  return [&out](std::size_t index, const std::string& hint, std::size_t depth, SourceLoc loc) {
    out.insert(index - depth);
    return Value::var(index, hint, loc);
  };
}

}  // namespace

std::set<std::size_t> free_vars(const Value& v) {
  std::set<std::size_t> out;
  map_vars(v, 0, collector(out));
  return out;
}
std::set<std::size_t> free_vars(const Computation& c) {
  std::set<std::size_t> out;
  map_vars(c, 0, collector(out));
  return out;
}
std::set<std::size_t> free_vars(const Process& p) {
  std::set<std::size_t> out;
  map_vars(p, 0, collector(out));
  return out;
}

bool occurs_free(const Computation& c, std::size_t index) { return free_vars(c).count(index) > 0; }

// ---------------------------------------------------------------------------
// Structural queries

std::size_t term_size(const Value& v) {
  if (auto x = v.as<val::Fun>()) return 1 + term_size(x->body);
  if (auto x = v.as<val::Promise>()) return 1 + term_size(x->payload);
  if (auto x = v.as<val::Inl>()) return 1 + term_size(x->payload);
  if (auto x = v.as<val::Inr>()) return 1 + term_size(x->payload);
  return 1;
}

std::size_t term_size(const Computation& c) {
  if (auto x = c.as<comp::Return>()) return 1 + term_size(x->value);
  if (auto x = c.as<comp::Let>()) return 1 + term_size(x->bound) + term_size(x->body);
  if (auto x = c.as<comp::App>()) return 1 + term_size(x->fn) + term_size(x->arg);
  if (auto x = c.as<comp::Signal>()) return 1 + term_size(x->payload) + term_size(x->body);
  if (auto x = c.as<comp::Interrupt>()) return 1 + term_size(x->payload) + term_size(x->body);
  if (auto x = c.as<comp::Handler>()) return 1 + term_size(x->handler_body) + term_size(x->cont);
  if (auto x = c.as<comp::Await>()) return 1 + term_size(x->promise) + term_size(x->body);
  auto x = c.as<comp::Match>();
  return 1 + term_size(x->scrutinee) + term_size(x->left) + term_size(x->right);
}

std::size_t term_size(const Process& p) {
  if (auto x = p.as<proc::Run>()) return 1 + term_size(x->computation);
  if (auto x = p.as<proc::Par>()) return 1 + term_size(x->left) + term_size(x->right);
  if (auto x = p.as<proc::Signal>()) return 1 + term_size(x->payload) + term_size(x->body);
  auto x = p.as<proc::Interrupt>();
  return 1 + term_size(x->payload) + term_size(x->body);
}

namespace {

template <class Pred>
bool any_handler(const Computation& c, const Pred& pred);

template <class Pred>
bool any_handler(const Value& v, const Pred& pred) {
  if (auto x = v.as<val::Fun>()) return any_handler(x->body, pred);
  if (auto x = v.as<val::Promise>()) return any_handler(x->payload, pred);
  if (auto x = v.as<val::Inl>()) return any_handler(x->payload, pred);
  if (auto x = v.as<val::Inr>()) return any_handler(x->payload, pred);
  return false;
}

template <class Pred>
bool any_handler(const Computation& c, const Pred& pred) {
  if (auto x = c.as<comp::Return>()) return any_handler(x->value, pred);
  if (auto x = c.as<comp::Let>()) return any_handler(x->bound, pred) || any_handler(x->body, pred);
  if (auto x = c.as<comp::App>()) return any_handler(x->fn, pred) || any_handler(x->arg, pred);
  if (auto x = c.as<comp::Signal>()) {
    return any_handler(x->payload, pred) || any_handler(x->body, pred);
  }
  if (auto x = c.as<comp::Interrupt>()) {
    return any_handler(x->payload, pred) || any_handler(x->body, pred);
  }
  if (auto x = c.as<comp::Handler>()) {
    return pred(*x) || any_handler(x->handler_body, pred) || any_handler(x->cont, pred);
  }
  if (auto x = c.as<comp::Await>()) {
    return any_handler(x->promise, pred) || any_handler(x->body, pred);
  }
  auto x = c.as<comp::Match>();
  return any_handler(x->scrutinee, pred) || any_handler(x->left, pred) ||
         any_handler(x->right, pred);
}

bool is_reinstall(const comp::Handler& h) { return h.kind != HandlerKind::Plain; }

}  // namespace

bool has_reinstall(const Computation& c) { return any_handler(c, is_reinstall); }

bool has_reinstall(const Process& p) {
  for (const auto& leaf : run_leaves(p)) {
    if (has_reinstall(leaf)) return true;
  }
  return false;
}

bool has_legacy_reinstall(const Computation& c) {
  return any_handler(c, [](const comp::Handler& h) { return h.kind == HandlerKind::LegacyReinstall; });
}

namespace {

void collect_leaves(const Process& p, std::vector<Computation>& out) {
  if (auto x = p.as<proc::Run>()) {
    out.push_back(x->computation);
  } else if (auto x = p.as<proc::Par>()) {
    collect_leaves(x->left, out);
    collect_leaves(x->right, out);
  } else if (auto x = p.as<proc::Signal>()) {
    collect_leaves(x->body, out);
  } else if (auto x = p.as<proc::Interrupt>()) {
    collect_leaves(x->body, out);
  }
}

}  // namespace

std::vector<Computation> run_leaves(const Process& p) {
  std::vector<Computation> out;
  collect_leaves(p, out);
  return out;
}

std::size_t signal_spine(const Computation& c) {
  std::size_t n = 0;
  const Computation* cur = &c;
  while (auto s = cur->as<comp::Signal>()) {
    ++n;
    cur = &s->body;
  }
  return n;
}

}  // namespace aeff
