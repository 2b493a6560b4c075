#include "aeff/continuation.hpp"

#include "aeff/error.hpp"

namespace aeff {

Continuation Continuation::then_let(std::string hint, Computation body) const {
  if (cap_) throw Error("cannot extend a capped continuation");
  Continuation k = *this;
  k.frames_.push_back(LetFrameK{std::move(hint), std::move(body)});
  return k;
}

Continuation Continuation::then_interrupt(OpName op, Value payload) const {
  if (cap_) throw Error("cannot extend a capped continuation");
  Continuation k = *this;
  k.frames_.push_back(InterruptFrameK{std::move(op), std::move(payload)});
  return k;
}

Continuation Continuation::capped_await(std::string hint, Computation body) const {
  if (cap_) throw Error("continuation already has a cap");
  Continuation k = *this;
  k.cap_ = AwaitCap{std::move(hint), std::move(body)};
  return k;
}

Continuation Continuation::capped_match(std::string left_hint, Computation left, std::string right_hint,
                                        Computation right) const {
  if (cap_) throw Error("continuation already has a cap");
  Continuation k = *this;
  k.cap_ = SumCap{std::move(left_hint), std::move(left), std::move(right_hint), std::move(right)};
  return k;
}

namespace {

Computation wrap_frames(const Continuation& k, Computation m) {
  const auto& frames = k.frames();
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    if (auto f = std::get_if<LetFrameK>(&*it)) {
      m = Computation::let(f->hint, m, f->body);
    } else {
      const auto& i = std::get<InterruptFrameK>(*it);
      m = Computation::interrupt(i.op, i.payload, m);
    }
  }
  return m;
}

}  // namespace

Computation apply_cont(const Continuation& k, const Computation& m) {
  if (k.has_cap()) throw Error("a capped continuation must be applied to a value");
  return wrap_frames(k, m);
}

Computation apply_cont(const Continuation& k, const Value& v) {
  if (!k.has_cap()) throw Error("an uncapped continuation must be applied to a computation");
  const auto& cap = *k.cap();
  Computation inner = [&] {
    if (auto a = std::get_if<AwaitCap>(&cap)) return Computation::await(v, a->hint, a->body);
    const auto& s = std::get<SumCap>(cap);
    return Computation::match(v, s.left_hint, s.left, s.right_hint, s.right);
  }();
  return wrap_frames(k, inner);
}

std::size_t cont_len(const Continuation& k) { return k.frames().size(); }

std::size_t cont_interrupts(const Continuation& k) {
  std::size_t n = 0;
  for (const auto& f : k.frames()) n += std::holds_alternative<InterruptFrameK>(f) ? 1 : 0;
  return n;
}

std::string pretty(const Continuation& k, const NameContext& free) {
  auto under = [&](const std::string& hint) {
    NameContext names = free;
    names.push_back(hint);
    return names;
  };
  std::string out = "Id";
  for (const auto& f : k.frames()) {
    if (auto l = std::get_if<LetFrameK>(&f)) {
      out += " . (" + l->hint + ") " + pretty(l->body, under(l->hint));
    } else {
      const auto& i = std::get<InterruptFrameK>(f);
      bool atomic = i.payload.is<val::Unit>() || i.payload.is<val::Var>() || i.payload.is<val::Promise>();
      std::string payload = pretty(i.payload, free);
      out += " . recv " + i.op.text + " " + (atomic ? payload : "(" + payload + ")");
    }
  }
  if (auto cap = k.cap()) {
    if (auto a = std::get_if<AwaitCap>(&*cap)) {
      out += " . <" + a->hint + "> " + pretty(a->body, under(a->hint));
    } else {
      const auto& s = std::get<SumCap>(*cap);
      out += " . ((" + s.left_hint + ") " + pretty(s.left, under(s.left_hint)) + ", (" + s.right_hint + ") " +
             pretty(s.right, under(s.right_hint)) + ")";
    }
  }
  return out;
}

}  // namespace aeff
