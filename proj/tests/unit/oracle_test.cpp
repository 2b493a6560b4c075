#include <gtest/gtest.h>

#include "aeff/surface.hpp"
#include "aeff/typecheck.hpp"
#include "generators.hpp"
#include "oracles.hpp"

// Sanity checks on the test oracles themselves.

namespace aeff {
namespace {

using testing::gen_signature;

Computation C(const std::string& text) { return parse_computation(text, gen_signature()); }
EffectAnnotation E(const std::string& text) { return parse_effect(text, gen_signature()); }

TEST(Oracles, TreeWalkCounts) {
  EXPECT_EQ(testing::naive_max_steps(C("let x = return () in return x")), 1u);
  EXPECT_EQ(testing::naive_max_signals(C("let x = (send a () ; return ()) in send b () ; return x")), 2u);
  EXPECT_FALSE(testing::naive_max_steps(C("let x = return () in return x"), 1).has_value());
}

TEST(Oracles, ResultForms) {
  EXPECT_TRUE(testing::is_result_form(C("send a () ; promise (b x -> return <x>) as p in await p as y in return y")));
  EXPECT_FALSE(testing::is_result_form(C("let x = return () in return x")));
  EXPECT_FALSE(testing::is_result_form(C("await <()> as y in return y")));
}

TEST(Oracles, ShallowAnnotationUniverse) {
  auto all = testing::shallow_annotations({"a", "b"});
  EXPECT_EQ(all.size(), 100u);
}

TEST(Oracles, DeclarativeTypingBasics) {
  Signature sig;
  sig.declare("a", TypeExpr::unit());
  sig.declare("b", TypeExpr::unit());
  const TypeExpr unit = TypeExpr::unit();
  testing::DeclarativeTyping decl(sig, {unit, TypeExpr::promise(unit)}, testing::shallow_annotations({"a", "b"}));
  Computation handler = parse_computation("promise (a x -> send b () ; return <x>) as p in return ()", sig);
  EXPECT_TRUE(decl.accepts(handler, unit, parse_effect("({}, {a -> ({b}, {})})", sig)));
  EXPECT_TRUE(decl.accepts(handler, unit, parse_effect("({a}, {a -> ({a, b}, {})})", sig)));
  EXPECT_FALSE(decl.accepts(handler, unit, parse_effect("({b}, {})", sig)));
  Computation fired = parse_computation("recv a () ; promise (a x -> send b () ; return <x>) as p in return ()", sig);
  EXPECT_TRUE(decl.accepts(fired, unit, parse_effect("({b}, {})", sig)));
  EXPECT_FALSE(decl.accepts(fired, unit, parse_effect("({}, {})", sig)));
}

TEST(Oracles, ActMatchesDefinition) {
  EXPECT_EQ(testing::act(OpName("a"), E("({b}, {a -> ({c}, {b -> ({}, {})})})")), E("({b, c}, {b -> ({}, {})})"));
  EXPECT_EQ(testing::count_entries(E("({}, {a -> ({}, {b -> ({}, {})})})").handlers), 2u);
}

}  // namespace
}  // namespace aeff
