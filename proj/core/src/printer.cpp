#include "aeff/surface.hpp"
#include "lexer.hpp"

namespace aeff {

namespace {

class Printer {
 public:
  explicit Printer(NameContext names) : names_(std::move(names)) {}

  std::string value(const Value& v, bool atomic);
  std::string computation(const Computation& c);
  std::string process(const Process& p);

 private:
  bool taken(const std::string& name) const {
    if (detail::is_keyword(name)) return true;
    for (const auto& n : names_) {
      if (n == name) return true;
    }
    return false;
  }

  /// Picks a printable name for a binder whose body is `body`.
  std::string fresh(const std::string& hint, const Computation& body, std::size_t index) {
    std::string base = hint;
    if (base.empty() || base == "_") {
      if (!occurs_free(body, index)) return "_";
      base = "v";
    }
    if (!taken(base)) return base;
    for (std::size_t n = 1;; ++n) {
      std::string candidate = base + std::to_string(n);
      if (!taken(candidate)) return candidate;
    }
  }

  template <class F>
  std::string under(const std::string& name, F&& body) {
    names_.push_back(name);
    std::string out = body();
    names_.pop_back();
    return out;
  }

  std::string variable(const val::Var& v) const {
    if (v.index < names_.size()) return names_[names_.size() - 1 - v.index];
    return v.hint;
  }

  NameContext names_;
};

std::string Printer::value(const Value& v, bool atomic) {
  if (auto x = v.as<val::Var>()) return variable(*x);
  if (v.is<val::Unit>()) return "()";
  if (auto x = v.as<val::Promise>()) return "<" + value(x->payload, false) + ">";
  std::string out;
  if (auto x = v.as<val::Fun>()) {
    std::string name = fresh(x->hint, x->body, 0);
    out = "fun ";
    if (x->param_type) {
      out += "(" + name + " : " + format_type(*x->param_type) + ")";
    } else {
      out += name;
    }
    out += " -> " + under(name, [&] { return computation(x->body); });
  } else if (auto x = v.as<val::Inl>()) {
    out = "inl " + value(x->payload, true);
  } else if (auto x = v.as<val::Inr>()) {
    out = "inr " + value(x->payload, true);
  }
  return atomic ? "(" + out + ")" : out;
}

std::string Printer::computation(const Computation& c) {
  if (auto x = c.as<comp::Return>()) return "return " + value(x->value, false);
  if (auto x = c.as<comp::Let>()) {
    std::string name = fresh(x->hint, x->body, 0);
    std::string bound = computation(x->bound);
    return "let " + name + " = " + bound + " in " + under(name, [&] { return computation(x->body); });
  }
  if (auto x = c.as<comp::App>()) return value(x->fn, true) + " " + value(x->arg, true);
  if (auto x = c.as<comp::Signal>()) {
    return "send " + x->op.text + " " + value(x->payload, true) + " ; " + computation(x->body);
  }
  if (auto x = c.as<comp::Interrupt>()) {
    return "recv " + x->op.text + " " + value(x->payload, true) + " ; " + computation(x->body);
  }
  if (auto x = c.as<comp::Handler>()) {
    std::string out = "promise ";
    if (x->kind == HandlerKind::LegacyReinstall) out += "rec ";
    if (x->kind == HandlerKind::SumReinstall) out += "loop ";
    out += "(" + x->op.text + " ";
    if (x->kind == HandlerKind::LegacyReinstall) {
      std::string payload = fresh(x->payload_hint, x->handler_body, 1);
      std::string body = under(payload, [&] {
        std::string reinstall = fresh(x->reinstall_hint, x->handler_body, 0);
        return payload + " " + reinstall + " -> " +
               under(reinstall, [&] { return computation(x->handler_body); });
      });
      out += body;
    } else {
      std::string payload = fresh(x->payload_hint, x->handler_body, 0);
      out += payload + " -> " + under(payload, [&] { return computation(x->handler_body); });
    }
    std::string promise = fresh(x->promise_hint, x->cont, 0);
    return out + ") as " + promise + " in " + under(promise, [&] { return computation(x->cont); });
  }
  if (auto x = c.as<comp::Await>()) {
    std::string name = fresh(x->hint, x->body, 0);
    return "await " + value(x->promise, true) + " as " + name + " in " +
           under(name, [&] { return computation(x->body); });
  }
  auto x = c.as<comp::Match>();
  std::string left = fresh(x->left_hint, x->left, 0);
  std::string right = fresh(x->right_hint, x->right, 0);
  return "match " + value(x->scrutinee, true) + " with { inl " + left + " -> " +
         under(left, [&] { return computation(x->left); }) + " | inr " + right + " -> " +
         under(right, [&] { return computation(x->right); }) + " }";
}

std::string Printer::process(const Process& p) {
  if (auto x = p.as<proc::Run>()) return "run (" + computation(x->computation) + ")";
  if (auto x = p.as<proc::Par>()) {
    std::string left = process(x->left);
    if (!x->left.is<proc::Run>()) left = "(" + left + ")";
    return left + " || " + process(x->right);
  }
  if (auto x = p.as<proc::Signal>()) {
    return "send " + x->op.text + " " + value(x->payload, true) + " ; " + process(x->body);
  }
  auto x = p.as<proc::Interrupt>();
  return "recv " + x->op.text + " " + value(x->payload, true) + " ; " + process(x->body);
}

}  // namespace

std::string pretty(const Value& v, const NameContext& free) { return Printer(free).value(v, false); }
std::string pretty(const Computation& c, const NameContext& free) {
  return Printer(free).computation(c);
}
std::string pretty(const Process& p, const NameContext& free) { return Printer(free).process(p); }
std::string pretty(const TypeExpr& t) { return format_type(t); }
std::string pretty(const EffectAnnotation& e) { return format_effect(e); }

std::string pretty(const SourceProgram& program) {
  std::string out;
  for (const auto& name : program.signature.base_types) out += "type " + name + "\n";
  for (const auto& [op, payload] : program.signature.operations) {
    out += "operation " + op.text + " : " + format_type(payload) + "\n";
  }
  if (program.ascription) {
    const auto& a = *program.ascription;
    std::string t = format_type(a.type);
    if (a.effect) {
      if (a.type.is<type::Arrow>()) t = "(" + t + ")";
      t += " ! " + format_effect(*a.effect);
    }
    out += "expect " + t + "\n";
  }
  if (program.is_process()) {
    out += pretty(program.process());
  } else {
    out += pretty(program.computation());
  }
  return out + "\n";
}

}  // namespace aeff
