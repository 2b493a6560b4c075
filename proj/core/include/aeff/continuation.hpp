#ifndef AEFF_CONTINUATION_HPP
#define AEFF_CONTINUATION_HPP

// Continuations K ::= Id | K∘(x)N | K∘↓op(V), optionally capped at the inner
// end by an await frame ⟨x⟩N or a match frame ((x)M,(y)N). Frames are stored
// in composition order: frames().front() sits next to Id, frames().back() is
// applied first.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aeff/effects.hpp"
#include "aeff/surface.hpp"
#include "aeff/syntax.hpp"

namespace aeff {

struct LetFrameK {
  std::string hint;
  Computation body;  ///< under one binder
};

struct InterruptFrameK {
  OpName op;
  Value payload;
};

struct AwaitCap {
  std::string hint;
  Computation body;  ///< under one binder
};

struct SumCap {
  std::string left_hint;
  Computation left;
  std::string right_hint;
  Computation right;
};

using ContFrame = std::variant<LetFrameK, InterruptFrameK>;
using ContCap = std::variant<AwaitCap, SumCap>;

class Continuation {
 public:
  static Continuation identity() { return Continuation(); }

  Continuation then_let(std::string hint, Computation body) const;
  Continuation then_interrupt(OpName op, Value payload) const;
  Continuation capped_await(std::string hint, Computation body) const;
  Continuation capped_match(std::string left_hint, Computation left, std::string right_hint,
                            Computation right) const;

  const std::vector<ContFrame>& frames() const { return frames_; }
  const std::optional<ContCap>& cap() const { return cap_; }
  bool has_cap() const { return cap_.has_value(); }

 private:
  Continuation() = default;
  std::vector<ContFrame> frames_;
  std::optional<ContCap> cap_;
};

/// K@M. Throws Error when K is capped.
Computation apply_cont(const Continuation& k, const Computation& m);
/// K⟨⟩@V or K⁺@V. Throws Error when K has no cap.
Computation apply_cont(const Continuation& k, const Value& v);

/// |K|: number of non-cap frames.
std::size_t cont_len(const Continuation& k);
/// |K|_↓: number of interrupt frames.
std::size_t cont_interrupts(const Continuation& k);

/// Renders K frame by frame from Id inwards, e.g. `Id . (x) return x . recv op ()`.
std::string pretty(const Continuation& k, const NameContext& free = {});

}  // namespace aeff

#endif  // AEFF_CONTINUATION_HPP
