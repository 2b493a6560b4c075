#include <functional>

#include "aeff/surface.hpp"
#include "lexer.hpp"

namespace aeff {

namespace {

using detail::Token;
using detail::TokenKind;

class Parser {
 public:
  Parser(std::string_view text, Signature& sig, NameContext scope)
      : tokens_(detail::tokenize(text)), sig_(sig), scope_(std::move(scope)) {}

  SourceProgram program();

  template <class T>
  T whole(T (Parser::*rule)()) {
    T result = (this->*rule)();
    expect_end();
    return result;
  }

  Value value();
  Computation computation();
  Process process();
  TypeExpr type();
  EffectAnnotation effect();

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at(std::string_view sym) const { return peek().is(sym); }
  bool at_ident(std::string_view word) const {
    return peek().kind == TokenKind::Ident && peek().text == word;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(peek().loc, message); }
  [[noreturn]] static void fail_at(SourceLoc loc, const std::string& message) {
    throw ParseError(ParseError::Kind::Syntax, loc, message);
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) return "end of input";
    return "'" + t.text + "'";
  }

  void expect(std::string_view sym) {
    if (!at(sym)) fail("expected '" + std::string(sym) + "' but found " + describe(peek()));
    next();
  }
  void expect_end() {
    if (peek().kind != TokenKind::End) fail("unexpected " + describe(peek()));
  }

  std::string identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident || detail::is_keyword(t.text)) {
      fail(std::string("expected ") + what + " but found " + describe(t));
    }
    return next().text;
  }

  std::string binder() {
    if (at("_")) {
      next();
      return "_";
    }
    return identifier("a variable name");
  }

  OpName operation() {
    SourceLoc loc = peek().loc;
    OpName op{identifier("an operation name")};
    if (!sig_.declares(op)) {
      throw ParseError(ParseError::Kind::Scope, loc, "undeclared operation " + op.text);
    }
    return op;
  }

  Value variable() {
    SourceLoc loc = peek().loc;
    std::string name = identifier("a value");
    for (std::size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == name) return Value::var(scope_.size() - 1 - i, name, loc);
    }
    throw ParseError(ParseError::Kind::Scope, loc, "unbound variable " + name);
  }

  template <class F>
  auto under(std::initializer_list<std::string> names, F&& body) {
    for (const auto& n : names) scope_.push_back(n);
    auto result = body();
    scope_.resize(scope_.size() - names.size());
    return result;
  }

  /// Runs the alternatives in order from the same position and returns the
  /// first success; if all fail, rethrows the error that got furthest.
  template <class T>
  T first_of(std::initializer_list<std::function<T()>> alternatives) {
    std::size_t start = pos_;
    std::size_t depth = scope_.size();
    std::optional<ParseError> best;
    for (const auto& alt : alternatives) {
      try {
        return alt();
      } catch (const ParseError& e) {
        if (!best || best->loc() < e.loc()) best = e;
        pos_ = start;
        scope_.resize(depth);
      }
    }
    throw *best;
  }

  Value atomic_value();
  Computation handler(SourceLoc loc);
  TypeExpr sum_type();
  TypeExpr prefix_type();
  OpSet op_set();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Signature& sig_;
  NameContext scope_;
};

// ---------------------------------------------------------------------------
// Values

Value Parser::value() {
  SourceLoc loc = peek().loc;
  if (at_ident("fun")) {
    next();
    std::string name = "_";
    std::optional<TypeExpr> annotation;
    if (at("(")) {
      next();
      if (at(")")) {
        next();
        annotation = TypeExpr::unit();
      } else {
        name = binder();
        expect(":");
        annotation = type();
        expect(")");
      }
    } else {
      name = binder();
    }
    expect("->");
    Computation body = under({name}, [&] { return computation(); });
    return Value::fun(name, annotation, body, loc);
  }
  if (at_ident("inl")) {
    next();
    return Value::inl(value(), loc);
  }
  if (at_ident("inr")) {
    next();
    return Value::inr(value(), loc);
  }
  return atomic_value();
}

Value Parser::atomic_value() {
  SourceLoc loc = peek().loc;
  if (at("(")) {
    next();
    if (at(")")) {
      next();
      return Value::unit(loc);
    }
    Value inner = value();
    expect(")");
    return inner;
  }
  if (at("<")) {
    next();
    Value inner = value();
    expect(">");
    return Value::promise(inner, loc);
  }
  if (peek().kind == TokenKind::Ident && !detail::is_keyword(peek().text)) return variable();
  fail("expected a value but found " + describe(peek()));
}

// ---------------------------------------------------------------------------
// Computations

Computation Parser::computation() {
  SourceLoc loc = peek().loc;
  if (at_ident("return")) {
    next();
    return Computation::ret(value(), loc);
  }
  if (at_ident("let")) {
    next();
    std::string name = binder();
    expect("=");
    Computation bound = computation();
    if (!at_ident("in")) fail("expected 'in' but found " + describe(peek()));
    next();
    Computation body = under({name}, [&] { return computation(); });
    return Computation::let(name, bound, body, loc);
  }
  if (at_ident("send") || at_ident("recv")) {
    bool is_send = peek().text == "send";
    next();
    OpName op = operation();
    Value payload = value();
    expect(";");
    Computation body = computation();
    return is_send ? Computation::signal(op, payload, body, loc)
                   : Computation::interrupt(op, payload, body, loc);
  }
  if (at_ident("promise")) return handler(loc);
  if (at_ident("await")) {
    next();
    Value promise = value();
    if (!at_ident("as")) fail("expected 'as' but found " + describe(peek()));
    next();
    std::string name = binder();
    if (!at_ident("in")) fail("expected 'in' but found " + describe(peek()));
    next();
    Computation body = under({name}, [&] { return computation(); });
    return Computation::await(promise, name, body, loc);
  }
  if (at_ident("match")) {
    next();
    Value scrutinee = value();
    if (!at_ident("with")) fail("expected 'with' but found " + describe(peek()));
    next();
    expect("{");
    if (!at_ident("inl")) fail("expected 'inl' but found " + describe(peek()));
    next();
    std::string left_name = binder();
    expect("->");
    Computation left = under({left_name}, [&] { return computation(); });
    expect("|");
    if (!at_ident("inr")) fail("expected 'inr' but found " + describe(peek()));
    next();
    std::string right_name = binder();
    expect("->");
    Computation right = under({right_name}, [&] { return computation(); });
    expect("}");
    return Computation::match(scrutinee, left_name, left, right_name, right, loc);
  }
  auto application = [&] {
    Value fn = value();
    Value arg = value();
    return Computation::app(fn, arg, loc);
  };
  if (!at("(")) return application();
  return first_of<Computation>({application, [&] {
                                  expect("(");
                                  Computation inner = computation();
                                  expect(")");
                                  return inner;
                                }});
}

Computation Parser::handler(SourceLoc loc) {
  next();  // promise
  HandlerKind kind = HandlerKind::Plain;
  if (at_ident("rec")) {
    next();
    kind = HandlerKind::LegacyReinstall;
  } else if (at_ident("loop")) {
    next();
    kind = HandlerKind::SumReinstall;
  }
  expect("(");
  OpName op = operation();
  std::string payload_name = binder();
  std::string reinstall_name = "r";
  if (kind == HandlerKind::LegacyReinstall) reinstall_name = binder();
  expect("->");
  Computation body = kind == HandlerKind::LegacyReinstall
                         ? under({payload_name, reinstall_name}, [&] { return computation(); })
                         : under({payload_name}, [&] { return computation(); });
  expect(")");
  if (!at_ident("as")) fail("expected 'as' but found " + describe(peek()));
  next();
  std::string promise_name = binder();
  if (!at_ident("in")) fail("expected 'in' but found " + describe(peek()));
  next();
  Computation cont = under({promise_name}, [&] { return computation(); });
  return Computation::handler(op, payload_name, body, promise_name, cont, kind, reinstall_name, loc);
}

// ---------------------------------------------------------------------------
// Processes

Process Parser::process() {
  SourceLoc loc = peek().loc;
  Process left = [&]() -> Process {
    if (at_ident("run")) {
      next();
      return Process::run(computation(), loc);
    }
    if (at_ident("send") || at_ident("recv")) {
      bool is_send = peek().text == "send";
      next();
      OpName op = operation();
      Value payload = value();
      expect(";");
      Process body = process();
      return is_send ? Process::signal(op, payload, body, loc)
                     : Process::interrupt(op, payload, body, loc);
    }
    if (at("(")) {
      next();
      Process inner = process();
      expect(")");
      return inner;
    }
    fail("expected a process but found " + describe(peek()));
  }();
  if (at("||")) {
    next();
    return Process::par(left, process(), loc);
  }
  return left;
}

// ---------------------------------------------------------------------------
// Types and annotations

TypeExpr Parser::type() {
  TypeExpr domain = sum_type();
  if (!at("->")) return domain;
  next();
  TypeExpr codomain = type();
  std::optional<EffectAnnotation> annotation;
  if (at("!")) {
    next();
    annotation = effect();
  }
  return TypeExpr::arrow(domain, codomain, annotation);
}

TypeExpr Parser::sum_type() {
  TypeExpr left = prefix_type();
  while (at("+")) {
    next();
    left = TypeExpr::sum(left, prefix_type());
  }
  return left;
}

TypeExpr Parser::prefix_type() {
  if (at_ident("promise")) {
    next();
    return TypeExpr::promise(prefix_type());
  }
  if (at_ident("unit")) {
    next();
    return TypeExpr::unit();
  }
  if (at("(")) {
    next();
    TypeExpr inner = type();
    expect(")");
    return inner;
  }
  return TypeExpr::base(identifier("a type"));
}

OpSet Parser::op_set() {
  OpSet out;
  expect("{");
  if (!at("}")) {
    out.insert(operation());
    while (at(",")) {
      next();
      out.insert(operation());
    }
  }
  expect("}");
  return out;
}

EffectAnnotation Parser::effect() {
  EffectAnnotation out;
  expect("(");
  out.signals = op_set();
  expect(",");
  expect("{");
  if (!at("}")) {
    while (true) {
      SourceLoc loc = peek().loc;
      OpName op = operation();
      if (out.handlers.contains(op)) fail_at(loc, "duplicate entry for " + op.text);
      expect("->");
      out.handlers.set(op, effect());
      if (!at(",")) break;
      next();
    }
  }
  expect("}");
  expect(")");
  return out;
}

// ---------------------------------------------------------------------------
// Programs

SourceProgram Parser::program() {
  std::optional<Ascription> ascription;
  while (true) {
    SourceLoc loc = peek().loc;
    if (at_ident("operation")) {
      next();
      std::string name = identifier("an operation name");
      expect(":");
      SourceLoc type_loc = peek().loc;
      TypeExpr payload = type();
      if (!is_ground(payload)) {
        fail_at(type_loc, "payload type of " + name + " must be a ground type, got " +
                              format_type(payload));
      }
      if (sig_.declares(OpName{name})) fail_at(loc, "operation " + name + " declared twice");
      sig_.declare(name, payload);
      continue;
    }
    if (at_ident("type")) {
      next();
      sig_.base_types.insert(identifier("a type name"));
      continue;
    }
    if (at_ident("expect")) {
      next();
      if (ascription) fail_at(loc, "more than one 'expect' declaration");
      TypeExpr t = type();
      std::optional<EffectAnnotation> e;
      if (at("!")) {
        next();
        e = effect();
      }
      ascription = Ascription{t, e, loc};
      continue;
    }
    break;
  }
  if (peek().kind == TokenKind::End) fail("expected a computation or process");
  std::variant<Computation, Process> body = first_of<std::variant<Computation, Process>>(
      {[&]() -> std::variant<Computation, Process> { return whole(&Parser::process); },
       [&]() -> std::variant<Computation, Process> { return whole(&Parser::computation); }});
  return SourceProgram{sig_, ascription, std::move(body)};
}

}  // namespace

SourceProgram parse_program(std::string_view text) {
  Signature sig;
  Parser parser(text, sig, {});
  return parser.program();
}

Computation parse_computation(std::string_view text, const Signature& sig, const NameContext& free) {
  Signature copy = sig;
  Parser parser(text, copy, free);
  return parser.whole(&Parser::computation);
}

Value parse_value(std::string_view text, const Signature& sig, const NameContext& free) {
  Signature copy = sig;
  Parser parser(text, copy, free);
  return parser.whole(&Parser::value);
}

Process parse_process(std::string_view text, const Signature& sig, const NameContext& free) {
  Signature copy = sig;
  Parser parser(text, copy, free);
  return parser.whole(&Parser::process);
}

TypeExpr parse_type(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  Parser parser(text, copy, {});
  return parser.whole(&Parser::type);
}

EffectAnnotation parse_effect(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  Parser parser(text, copy, {});
  return parser.whole(&Parser::effect);
}

}  // namespace aeff
