#ifndef AEFF_SYNTAX_HPP
#define AEFF_SYNTAX_HPP

// Terms of the calculus: values, sequential computations and parallel
// processes. Binders are positional (de Bruijn indices, 0 = innermost); every
// binder keeps the name it was written with as a printing hint only. Nodes are
// immutable and shared, so terms are cheap to copy and safe to read from
// several threads.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "aeff/error.hpp"
#include "aeff/effects.hpp"
#include "aeff/types.hpp"

namespace aeff {

struct ValueNode;
struct ComputationNode;
struct ProcessNode;
class Computation;

class Value {
 public:
  static Value var(std::size_t index, std::string hint = "x", SourceLoc loc = {});
  static Value fun(std::string hint, std::optional<TypeExpr> param_type, Computation body,
                   SourceLoc loc = {});
  static Value promise(Value payload, SourceLoc loc = {});
  static Value unit(SourceLoc loc = {});
  static Value inl(Value payload, SourceLoc loc = {});
  static Value inr(Value payload, SourceLoc loc = {});

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  const ValueNode& node() const { return *node_; }
  const ValueNode* identity() const { return node_.get(); }
  std::size_t hash() const;
  SourceLoc loc() const;

 private:
  explicit Value(std::shared_ptr<const ValueNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ValueNode> node_;
};

enum class HandlerKind {
  Plain,           ///< promise (op x -> M) as p in N
  LegacyReinstall, ///< promise rec (op x r -> M) as p in N; r is bound in M
  SumReinstall,    ///< promise loop (op x -> M) as p in N; M returns inl/inr
};

const char* handler_kind_name(HandlerKind kind);

class Computation {
 public:
  static Computation ret(Value v, SourceLoc loc = {});
  static Computation let(std::string hint, Computation bound, Computation body, SourceLoc loc = {});
  static Computation app(Value fn, Value arg, SourceLoc loc = {});
  static Computation signal(OpName op, Value payload, Computation body, SourceLoc loc = {});
  static Computation interrupt(OpName op, Value payload, Computation body, SourceLoc loc = {});
  /// `handler_body` binds the payload (index 0) or, for legacy handlers, the
  /// payload (index 1) and the reinstall function (index 0). `cont` binds the
  /// promise (index 0).
  static Computation handler(OpName op, std::string payload_hint, Computation handler_body,
                             std::string promise_hint, Computation cont,
                             HandlerKind kind = HandlerKind::Plain,
                             std::string reinstall_hint = "r", SourceLoc loc = {});
  static Computation await(Value promise, std::string hint, Computation body, SourceLoc loc = {});
  static Computation match(Value scrutinee, std::string left_hint, Computation left,
                           std::string right_hint, Computation right, SourceLoc loc = {});

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  const ComputationNode& node() const { return *node_; }
  const ComputationNode* identity() const { return node_.get(); }
  std::size_t hash() const;
  SourceLoc loc() const;

 private:
  explicit Computation(std::shared_ptr<const ComputationNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ComputationNode> node_;
};

class Process {
 public:
  static Process run(Computation c, SourceLoc loc = {});
  static Process par(Process left, Process right, SourceLoc loc = {});
  static Process signal(OpName op, Value payload, Process body, SourceLoc loc = {});
  static Process interrupt(OpName op, Value payload, Process body, SourceLoc loc = {});

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  const ProcessNode& node() const { return *node_; }
  const ProcessNode* identity() const { return node_.get(); }
  std::size_t hash() const;
  SourceLoc loc() const;

 private:
  explicit Process(std::shared_ptr<const ProcessNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ProcessNode> node_;
};

namespace val {
struct Var {
  std::size_t index;
  std::string hint;
};
struct Fun {
  std::string hint;
  std::optional<TypeExpr> param_type;
  Computation body;
};
struct Promise {
  Value payload;
};
struct Unit {};
struct Inl {
  Value payload;
};
struct Inr {
  Value payload;
};
}  // namespace val

namespace comp {
struct Return {
  Value value;
};
struct Let {
  std::string hint;
  Computation bound;
  Computation body;
};
struct App {
  Value fn;
  Value arg;
};
struct Signal {
  OpName op;
  Value payload;
  Computation body;
};
struct Interrupt {
  OpName op;
  Value payload;
  Computation body;
};
struct Handler {
  OpName op;
  std::string payload_hint;
  std::string reinstall_hint;
  Computation handler_body;
  std::string promise_hint;
  Computation cont;
  HandlerKind kind;

  /// Number of variables `handler_body` binds (2 for legacy handlers).
  std::size_t body_binders() const { return kind == HandlerKind::LegacyReinstall ? 2 : 1; }
};
struct Await {
  Value promise;
  std::string hint;
  Computation body;
};
struct Match {
  Value scrutinee;
  std::string left_hint;
  Computation left;
  std::string right_hint;
  Computation right;
};
}  // namespace comp

namespace proc {
struct Run {
  Computation computation;
};
struct Par {
  Process left;
  Process right;
};
struct Signal {
  OpName op;
  Value payload;
  Process body;
};
struct Interrupt {
  OpName op;
  Value payload;
  Process body;
};
}  // namespace proc

struct ValueNode {
  std::variant<val::Var, val::Fun, val::Promise, val::Unit, val::Inl, val::Inr> data;
  std::size_t hash = 0;
  SourceLoc loc;
};

/// Handlers and matches are stored out of line so that the frequent nodes
/// (let, signal, interrupt) stay small.
template <class T>
struct Boxed {
  std::shared_ptr<const T> ptr;
};

struct ComputationNode {
  std::variant<comp::Return, comp::Let, comp::App, comp::Signal, comp::Interrupt, Boxed<comp::Handler>,
               comp::Await, Boxed<comp::Match>>
      data;
  std::size_t hash = 0;
  SourceLoc loc;
};

struct ProcessNode {
  std::variant<proc::Run, proc::Par, proc::Signal, proc::Interrupt> data;
  std::size_t hash = 0;
  SourceLoc loc;
};

template <class T>
const T* Value::as() const {
  return std::get_if<T>(&node_->data);
}
template <class T>
const T* Computation::as() const {
  if constexpr (std::is_same_v<T, comp::Handler> || std::is_same_v<T, comp::Match>) {
    auto boxed = std::get_if<Boxed<T>>(&node_->data);
    return boxed ? boxed->ptr.get() : nullptr;
  } else {
    return std::get_if<T>(&node_->data);
  }
}
template <class T>
const T* Process::as() const {
  return std::get_if<T>(&node_->data);
}

// ---------------------------------------------------------------------------
// α-equivalence. With positional binders this is structural equality that
// ignores name hints and source locations.

bool alpha_eq(const Value& a, const Value& b);
bool alpha_eq(const Computation& a, const Computation& b);
bool alpha_eq(const Process& a, const Process& b);

struct AlphaHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
  std::size_t operator()(const Computation& c) const { return c.hash(); }
  std::size_t operator()(const Process& p) const { return p.hash(); }
};

struct AlphaEqual {
  bool operator()(const Value& a, const Value& b) const { return alpha_eq(a, b); }
  bool operator()(const Computation& a, const Computation& b) const { return alpha_eq(a, b); }
  bool operator()(const Process& a, const Process& b) const { return alpha_eq(a, b); }
};

// ---------------------------------------------------------------------------
// Renamings Γ → Γ'. Variables are numbered by de Bruijn index, so a renaming
// is a vector `image[i]` giving the target index of source index i.

class Renaming {
 public:
  explicit Renaming(std::vector<std::size_t> image) : image_(std::move(image)) {}

  static Renaming identity(std::size_t size);
  /// wk : Γ → Γ, x: every variable moves one step outwards.
  static Renaming weaken(std::size_t size);

  /// lift(ρ) : Γ, x → Γ', x: fixes the new variable.
  Renaming lift() const;
  /// `after ∘ this`: apply this renaming first.
  Renaming then(const Renaming& after) const;

  std::size_t source_size() const { return image_.size(); }
  std::optional<std::size_t> apply(std::size_t index) const;

 private:
  std::vector<std::size_t> image_;
};

/// Throws ScopeError when a free variable lies outside the renaming's source.
Value rename(const Value& v, const Renaming& r);
Computation rename(const Computation& c, const Renaming& r);
Process rename(const Process& p, const Renaming& r);

/// Simultaneous capture-avoiding substitution of free variables. Indices not in
/// the map are left untouched (the context keeps its shape).
using Substitution = std::map<std::size_t, Value>;
Value substitute(const Value& v, const Substitution& s);
Computation substitute(const Computation& c, const Substitution& s);
Process substitute(const Process& p, const Substitution& s);

/// M[V/x] for the innermost binder x of `body`: index 0 becomes `v` and every
/// other free index drops by one.
Computation instantiate(const Computation& body, const Value& v);
/// M[inner/r, outer/x] for a body binding x (index 1) and r (index 0).
Computation instantiate2(const Computation& body, const Value& outer, const Value& inner);

/// Adds `by` to every free index >= cutoff.
Value shift(const Value& v, std::size_t by, std::size_t cutoff = 0);
Computation shift(const Computation& c, std::size_t by, std::size_t cutoff = 0);
Process shift(const Process& p, std::size_t by, std::size_t cutoff = 0);

/// Moves a value out from under one binder; empty if it mentions that binder.
std::optional<Value> unshift(const Value& v);

std::set<std::size_t> free_vars(const Value& v);
std::set<std::size_t> free_vars(const Computation& c);
std::set<std::size_t> free_vars(const Process& p);
bool occurs_free(const Computation& c, std::size_t index);
inline bool is_closed(const Computation& c) { return free_vars(c).empty(); }
inline bool is_closed(const Process& p) { return free_vars(p).empty(); }

// ---------------------------------------------------------------------------
// Small structural queries used across modules.

/// Number of term nodes (values, computations and processes).
std::size_t term_size(const Value& v);
std::size_t term_size(const Computation& c);
std::size_t term_size(const Process& p);

/// True if any handler in the term is a reinstallable one (either variant).
bool has_reinstall(const Computation& c);
bool has_reinstall(const Process& p);
bool has_legacy_reinstall(const Computation& c);

/// Computations at the run-leaves, left to right.
std::vector<Computation> run_leaves(const Process& p);

/// Length of the outermost chain of `send` constructors.
std::size_t signal_spine(const Computation& c);

}  // namespace aeff

#endif  // AEFF_SYNTAX_HPP
