#include <gtest/gtest.h>

#include "aeff/surface.hpp"
#include "aeff/syntax.hpp"
#include "generators.hpp"

namespace aeff {
namespace {

using testing::gen_signature;

Computation C(const std::string& text, const NameContext& free = {}) {
  return parse_computation(text, gen_signature(), free);
}

TEST(Syntax, AlphaEquivalenceIgnoresNames) {
  EXPECT_TRUE(alpha_eq(C("let x = return () in return x"), C("let y = return () in return y")));
  EXPECT_FALSE(alpha_eq(C("let x = return () in return x"), C("let x = return () in return ()")));
  EXPECT_EQ(parse_value("fun (x : unit) -> return x", gen_signature()).hash(),
            parse_value("fun (z : unit) -> return z", gen_signature()).hash());
}

TEST(Syntax, HashAgreesWithAlphaEquality) {
  testing::RawGen gen(3);
  for (int i = 0; i < 300; ++i) {
    Computation a = gen.computation(0, 4);
    Computation b = parse_computation(pretty(a), gen_signature());
    ASSERT_TRUE(alpha_eq(a, b)) << pretty(a);
    EXPECT_EQ(a.hash(), b.hash());
  }
}

TEST(Syntax, InstantiateReplacesInnermostAndLowersTheRest) {
  // body under (w, x): send a w ; return x, with x innermost
  Computation body = C("send a w ; return x", {"w", "x"});
  Computation out = instantiate(body, Value::promise(Value::var(0, "w")));
  EXPECT_TRUE(alpha_eq(out, C("send a w ; return <w>", {"w"})));
}

TEST(Syntax, InstantiateIsCaptureAvoiding) {
  Computation body = C("let y = return () in return x", {"x"});
  Computation out = instantiate(body, Value::var(0, "y"));
  EXPECT_TRUE(alpha_eq(out, C("let z = return () in return y", {"y"})));
}

TEST(Syntax, ShiftThenInstantiateIsIdentity) {
  testing::RawGen gen(11);
  for (int i = 0; i < 200; ++i) {
    Computation m = gen.computation(2, 4);
    EXPECT_TRUE(alpha_eq(instantiate(shift(m, 1), Value::unit()), m)) << pretty(m, {"a0", "a1"});
  }
}

TEST(Syntax, FreeVariablesAndClosedness) {
  Computation m = C("let y = return x in await y as z in return w", {"w", "x"});
  EXPECT_EQ(free_vars(m), (std::set<std::size_t>{0, 1}));
  EXPECT_FALSE(is_closed(m));
  EXPECT_TRUE(is_closed(C("let x = return () in return x")));
  EXPECT_TRUE(occurs_free(m, 1));
}

TEST(Syntax, RenamingAndSubstitution) {
  Computation m = C("send a x ; return y", {"x", "y"});
  Computation swapped = rename(m, Renaming({1, 0}));
  EXPECT_TRUE(alpha_eq(swapped, C("send a y ; return x", {"x", "y"})));
  Computation sub = substitute(m, {{1, Value::unit()}});
  EXPECT_TRUE(alpha_eq(sub, C("send a () ; return y", {"x", "y"})));
  EXPECT_THROW(rename(m, Renaming({0})), ScopeError);
}

TEST(Syntax, UnshiftRefusesTheBoundVariable) {
  EXPECT_FALSE(unshift(Value::var(0)).has_value());
  auto v = unshift(Value::promise(Value::var(2)));
  ASSERT_TRUE(v.has_value());
  EXPECT_TRUE(alpha_eq(*v, Value::promise(Value::var(1))));
}

TEST(Syntax, StructuralQueries) {
  EXPECT_EQ(signal_spine(C("send a () ; send b () ; let x = send c () ; return () in return x")), 2u);
  EXPECT_EQ(term_size(C("return ()")), 2u);
  EXPECT_TRUE(has_reinstall(C("promise loop (a x -> return (inr ())) as p in return p")));
  EXPECT_TRUE(has_legacy_reinstall(C("promise rec (a x r -> r ()) as p in return p")));
  EXPECT_FALSE(has_reinstall(C("promise (a x -> return <x>) as p in return p")));
  Process p = parse_process("run (return ()) || send a () ; run (send b () ; return ())", gen_signature());
  auto leaves = run_leaves(p);
  ASSERT_EQ(leaves.size(), 2u);
  EXPECT_TRUE(alpha_eq(leaves[1], C("send b () ; return ()")));
}

}  // namespace
}  // namespace aeff
