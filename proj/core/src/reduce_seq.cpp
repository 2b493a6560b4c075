#include "aeff/reduce_seq.hpp"

#include <algorithm>

namespace aeff {

const char* rule_name(SeqRule rule) {
  switch (rule) {
    case SeqRule::R1: return "r1";
    case SeqRule::R2: return "r2";
    case SeqRule::R3: return "r3";
    case SeqRule::R4: return "r4";
    case SeqRule::R5: return "r5";
    case SeqRule::R6: return "r6";
    case SeqRule::R7: return "r7";
    case SeqRule::R8: return "r8";
    case SeqRule::R9: return "r9";
    case SeqRule::R10: return "r10";
    case SeqRule::R11: return "r11";
    case SeqRule::R12: return "r12";
    case SeqRule::MatchInl: return "match-inl";
    case SeqRule::MatchInr: return "match-inr";
    case SeqRule::R9Legacy: return "r9-legacy";
    case SeqRule::R9Sum: return "r9-sum";
  }
  return "?";
}

const char* frame_name(SeqFrame frame) {
  switch (frame) {
    case SeqFrame::Let: return "let";
    case SeqFrame::Signal: return "signal";
    case SeqFrame::Interrupt: return "interrupt";
    case SeqFrame::Handler: return "handler";
  }
  return "?";
}

std::string RuleLabel::str() const {
  if (path.empty()) return rule_name(rule);
  std::string out = "r13@";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ".";
    out += frame_name(path[i]);
  }
  return out + ":" + rule_name(rule);
}

namespace {

SeqStep root(SeqRule rule, Computation result) { return SeqStep{RuleLabel{rule, {}}, std::move(result)}; }

std::optional<SeqStep> interrupt_root(const comp::Interrupt& in) {
  const Computation& body = in.body;
  if (auto r = body.as<comp::Return>()) return root(SeqRule::R7, Computation::ret(r->value));
  if (auto s = body.as<comp::Signal>()) {
    return root(SeqRule::R8, Computation::signal(s->op, s->payload,
                                                 Computation::interrupt(in.op, in.payload, s->body)));
  }
  if (auto a = body.as<comp::Await>()) {
    return root(SeqRule::R11,
                Computation::await(a->promise, a->hint,
                                   Computation::interrupt(in.op, shift(in.payload, 1), a->body)));
  }
  auto h = body.as<comp::Handler>();
  if (h == nullptr) return std::nullopt;
  Value payload_under_p = shift(in.payload, 1);
  if (h->op != in.op) {
    return root(SeqRule::R10,
                Computation::handler(h->op, h->payload_hint, h->handler_body, h->promise_hint,
                                     Computation::interrupt(in.op, payload_under_p, h->cont), h->kind,
                                     h->reinstall_hint));
  }
  Computation rest = Computation::interrupt(in.op, payload_under_p, h->cont);
  switch (h->kind) {
    case HandlerKind::Plain:
      return root(SeqRule::R9,
                  Computation::let(h->promise_hint, instantiate(h->handler_body, in.payload), rest));
    case HandlerKind::LegacyReinstall: {
      // fun () -> promise rec (op x r -> M) as q in return q
      Computation again = Computation::handler(
          h->op, h->payload_hint, shift(h->handler_body, 1, 2), "q", Computation::ret(Value::var(0, "q")),
          HandlerKind::LegacyReinstall, h->reinstall_hint);
      Value reinstall = Value::fun("_", TypeExpr::unit(), again);
      return root(SeqRule::R9Legacy,
                  Computation::let(h->promise_hint,
                                   instantiate2(h->handler_body, in.payload, reinstall), rest));
    }
    case HandlerKind::SumReinstall: {
      // let y = M[V/x] in match y with { inl z -> return z | inr w -> R }
      Computation again = Computation::handler(h->op, h->payload_hint, shift(h->handler_body, 2, 1), "q",
                                               Computation::ret(Value::var(0, "q")),
                                               HandlerKind::SumReinstall);
      Computation dispatch = Computation::match(Value::var(0, "y"), "z",
                                                Computation::ret(Value::var(0, "z")), "w", again);
      Computation triggered =
          Computation::let("y", instantiate(h->handler_body, in.payload), dispatch);
      return root(SeqRule::R9Sum, Computation::let(h->promise_hint, triggered, rest));
    }
  }
  return std::nullopt;
}

std::optional<SeqStep> root_step(const Computation& m) {
  if (auto app = m.as<comp::App>()) {
    if (auto f = app->fn.as<val::Fun>()) return root(SeqRule::R1, instantiate(f->body, app->arg));
    return std::nullopt;
  }
  if (auto let = m.as<comp::Let>()) {
    const Computation& bound = let->bound;
    if (auto r = bound.as<comp::Return>()) return root(SeqRule::R2, instantiate(let->body, r->value));
    if (auto s = bound.as<comp::Signal>()) {
      return root(SeqRule::R3,
                  Computation::signal(s->op, s->payload, Computation::let(let->hint, s->body, let->body)));
    }
    if (auto h = bound.as<comp::Handler>()) {
      Computation cont = Computation::let(let->hint, h->cont, shift(let->body, 1, 1));
      return root(SeqRule::R4, Computation::handler(h->op, h->payload_hint, h->handler_body,
                                                    h->promise_hint, cont, h->kind, h->reinstall_hint));
    }
    if (auto a = bound.as<comp::Await>()) {
      Computation body = Computation::let(let->hint, a->body, shift(let->body, 1, 1));
      return root(SeqRule::R5, Computation::await(a->promise, a->hint, body));
    }
    return std::nullopt;
  }
  if (auto h = m.as<comp::Handler>()) {
    auto s = h->cont.as<comp::Signal>();
    if (s == nullptr) return std::nullopt;
    // The payload moves out from under p; a payload mentioning p stays put.
    auto payload = unshift(s->payload);
    if (!payload) return std::nullopt;
    return root(SeqRule::R6,
                Computation::signal(s->op, *payload,
                                    Computation::handler(h->op, h->payload_hint, h->handler_body,
                                                         h->promise_hint, s->body, h->kind,
                                                         h->reinstall_hint)));
  }
  if (auto in = m.as<comp::Interrupt>()) return interrupt_root(*in);
  if (auto a = m.as<comp::Await>()) {
    if (auto p = a->promise.as<val::Promise>()) return root(SeqRule::R12, instantiate(a->body, p->payload));
    return std::nullopt;
  }
  if (auto mt = m.as<comp::Match>()) {
    if (auto l = mt->scrutinee.as<val::Inl>()) return root(SeqRule::MatchInl, instantiate(mt->left, l->payload));
    if (auto r = mt->scrutinee.as<val::Inr>()) return root(SeqRule::MatchInr, instantiate(mt->right, r->payload));
  }
  return std::nullopt;
}

/// The evaluation position of `m`, if it has one.
std::optional<std::pair<SeqFrame, Computation>> eval_position(const Computation& m) {
  if (auto x = m.as<comp::Let>()) return std::pair{SeqFrame::Let, x->bound};
  if (auto x = m.as<comp::Signal>()) return std::pair{SeqFrame::Signal, x->body};
  if (auto x = m.as<comp::Interrupt>()) return std::pair{SeqFrame::Interrupt, x->body};
  if (auto x = m.as<comp::Handler>()) return std::pair{SeqFrame::Handler, x->cont};
  return std::nullopt;
}

Computation replace_position(const Computation& m, const Computation& inner) {
  if (auto x = m.as<comp::Let>()) return Computation::let(x->hint, inner, x->body, m.loc());
  if (auto x = m.as<comp::Signal>()) return Computation::signal(x->op, x->payload, inner, m.loc());
  if (auto x = m.as<comp::Interrupt>()) return Computation::interrupt(x->op, x->payload, inner, m.loc());
  auto x = m.as<comp::Handler>();
  return Computation::handler(x->op, x->payload_hint, x->handler_body, x->promise_hint, inner, x->kind,
                              x->reinstall_hint, m.loc());
}

void collect(const Computation& m, std::vector<SeqStep>& out) {
  if (auto s = root_step(m)) out.push_back(std::move(*s));
  auto position = eval_position(m);
  if (!position) return;
  std::vector<SeqStep> inner;
  collect(position->second, inner);
  for (auto& step : inner) {
    step.label.path.push_back(position->first);
    out.push_back(SeqStep{std::move(step.label), replace_position(m, step.result)});
  }
}

}  // namespace

std::vector<SeqStep> step_root(const Computation& m) {
  std::vector<SeqStep> out;
  if (auto s = root_step(m)) out.push_back(std::move(*s));
  return out;
}

std::vector<SeqStep> step_seq(const Computation& m) {
  std::vector<SeqStep> out;
  collect(m, out);
  // collect appends frames innermost first
  for (auto& s : out) std::reverse(s.label.path.begin(), s.label.path.end());
  return out;
}

bool is_normal(const Computation& m) {
  if (root_step(m)) return false;
  auto position = eval_position(m);
  return !position || is_normal(position->second);
}

namespace {

std::optional<SeqStep> leftmost(const Computation& m) {
  if (auto s = root_step(m)) return s;
  auto position = eval_position(m);
  if (!position) return std::nullopt;
  auto inner = leftmost(position->second);
  if (!inner) return std::nullopt;
  inner->label.path.push_back(position->first);
  return SeqStep{std::move(inner->label), replace_position(m, inner->result)};
}

}  // namespace

std::optional<SeqStep> step_leftmost(const Computation& m) {
  auto s = leftmost(m);
  if (s) std::reverse(s->label.path.begin(), s->label.path.end());
  return s;
}

std::optional<Computation> subterm_at(const Computation& m, const std::vector<SeqFrame>& path) {
  Computation cur = m;
  for (SeqFrame frame : path) {
    auto position = eval_position(cur);
    if (!position || position->first != frame) return std::nullopt;
    cur = position->second;
  }
  return cur;
}

Computation plug(const Computation& context, const std::vector<SeqFrame>& path, const Computation& hole) {
  if (path.empty()) return hole;
  auto position = eval_position(context);
  if (!position || position->first != path.front()) {
    throw Error(std::string("context has no '") + frame_name(path.front()) + "' position");
  }
  std::vector<SeqFrame> rest(path.begin() + 1, path.end());
  return replace_position(context, plug(position->second, rest, hole));
}

}  // namespace aeff
