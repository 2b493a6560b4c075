#include <gtest/gtest.h>

#include "aeff/continuation.hpp"
#include "aeff/explorer.hpp"
#include "aeff/surface.hpp"
#include "generators.hpp"

namespace aeff {
namespace {

using testing::gen_signature;

Computation C(const std::string& text, const NameContext& free = {}) {
  return parse_computation(text, gen_signature(), free);
}

TEST(Continuation, IdentityIsEmpty) {
  auto k = Continuation::identity();
  EXPECT_EQ(cont_len(k), 0u);
  EXPECT_EQ(cont_interrupts(k), 0u);
  EXPECT_TRUE(alpha_eq(apply_cont(k, C("return ()")), C("return ()")));
}

TEST(Continuation, LengthsCountFrames) {
  auto k = Continuation::identity().then_let("x", C("return x", {"x"})).then_interrupt(OpName("a"), Value::unit());
  EXPECT_EQ(cont_len(k), 2u);
  EXPECT_EQ(cont_interrupts(k), 1u);
  auto k2 = Continuation::identity().then_interrupt(OpName("a"), Value::unit()).then_interrupt(OpName("b"),
                                                                                             Value::unit());
  EXPECT_EQ(cont_interrupts(k2), 2u);
}

TEST(Continuation, LastFrameIsInnermost) {
  auto k = Continuation::identity()
               .then_let("x", C("send b () ; return x", {"x"}))
               .then_interrupt(OpName("a"), Value::unit());
  Computation plugged = apply_cont(k, C("return ()"));
  EXPECT_TRUE(alpha_eq(plugged, C("let x = (recv a () ; return ()) in send b () ; return x")));
}

TEST(Continuation, CapsTakeValues) {
  auto k = Continuation::identity().then_let("x", C("return x", {"x"})).capped_await("y", C("return <y>", {"y"}));
  EXPECT_TRUE(k.has_cap());
  EXPECT_EQ(cont_len(k), 1u);
  Computation plugged = apply_cont(k, Value::promise(Value::unit()));
  EXPECT_TRUE(alpha_eq(plugged, C("let x = (await <()> as y in return <y>) in return x")));
  EXPECT_THROW(apply_cont(k, C("return ()")), Error);
  EXPECT_THROW(apply_cont(Continuation::identity(), Value::unit()), Error);
  EXPECT_THROW(k.then_let("z", C("return z", {"z"})), Error);

  auto m = Continuation::identity().capped_match("l", C("return l", {"l"}), "r", C("return ()", {"r"}));
  EXPECT_TRUE(alpha_eq(apply_cont(m, Value::inl(Value::unit())),
                       C("match (inl ()) with { inl l -> return l | inr r -> return () }")));
}

TEST(Continuation, PrettyListsFrames) {
  auto k = Continuation::identity().then_let("x", C("return x", {"x"}));
  EXPECT_EQ(pretty(k, {}), "Id . (x) return x");
  auto k2 = k.then_interrupt(OpName("a"), Value::unit()).capped_await("y", C("return y", {"y"}));
  EXPECT_EQ(pretty(k2, {}), "Id . (x) return x . recv a () . <y> return y");
}

TEST(Continuation, PluggingPreservesSteps) {
  // a step of M lifts to a step of K@M
  testing::TypedGen gen(41);
  for (int i = 0; i < 100; ++i) {
    testing::GenType hole = gen.data_type();
    testing::GenType result;
    Continuation k = gen.continuation(hole, 3, 2, result);
    Computation m = gen.computation(hole, 3);
    for (const auto& s : step_seq(m)) {
      Computation lifted = apply_cont(k, s.result);
      bool found = false;
      for (const auto& t : step_seq(apply_cont(k, m))) found = found || alpha_eq(t.result, lifted);
      EXPECT_TRUE(found) << pretty(apply_cont(k, m));
    }
  }
}

}  // namespace
}  // namespace aeff
