#include <gtest/gtest.h>

#include "aeff/surface.hpp"
#include "aeff/typecheck.hpp"
#include "corpus.hpp"
#include "generators.hpp"

namespace aeff {
namespace {

using testing::gen_signature;

Computation C(const std::string& text) { return parse_computation(text, gen_signature()); }
EffectAnnotation E(const std::string& text) { return parse_effect(text, gen_signature()); }

std::string effects_of(const std::string& text) {
  return format_comp_type(infer_effects(gen_signature(), {}, C(text)), TypingMode::Effects);
}

TEST(Typecheck, SkeletalTypes) {
  EXPECT_EQ(format_type(infer_skeletal(gen_signature(), {}, C("return <()>"))), "promise unit");
  EXPECT_EQ(format_type(infer_skeletal(gen_signature(), {},
                                       C("promise (a x -> return <x>) as p in await p as y in return y"))),
            "unit");
  EXPECT_EQ(format_type(infer_skeletal(gen_signature(), {}, C("(fun x -> return x) ()"))), "unit");
}

TEST(Typecheck, EffectAnnotationsCollectSignalsAndHandlers) {
  EXPECT_EQ(effects_of("send a () ; return ()"), "unit ! ({a}, {})");
  EXPECT_EQ(effects_of("promise (a x -> send b () ; return <x>) as p in return p"),
            "promise unit ! ({}, {a -> ({b}, {})})");
  EXPECT_EQ(effects_of("recv a () ; promise (a x -> send b () ; return <x>) as p in return p"),
            "promise unit ! ({b}, {})");
}

TEST(Typecheck, NestedHandlersNestAnnotations) {
  EXPECT_EQ(effects_of("promise (a x -> promise (b y -> send c () ; return <y>) as q in return <x>) as p in "
                       "return ()"),
            "unit ! ({}, {a -> ({}, {b -> ({c}, {})})})");
}

TEST(Typecheck, Rejections) {
  const auto& sig = gen_signature();
  EXPECT_THROW(infer_skeletal(sig, {}, C("await () as x in return x")), TypeError);
  EXPECT_THROW(infer_skeletal(sig, {}, C("() ()")), TypeError);
  EXPECT_THROW(infer_skeletal(sig, {}, C("match () with { inl x -> return x | inr y -> return y }")), TypeError);
  EXPECT_THROW(infer_skeletal(sig, {}, C("promise (a x -> return x) as p in return p")), TypeError);
  // unannotated parameters only make sense without effects
  EXPECT_THROW(infer_effects(sig, {}, C("(fun x -> return x) ()")), TypeError);
  // legacy reinstall has no finite annotation
  EXPECT_THROW(infer_effects(sig, {}, C("promise rec (a x r -> r ()) as p in return p")), TypeError);
  EXPECT_NO_THROW(infer_skeletal(sig, {}, C("promise rec (a x r -> r ()) as p in return p")));
}

TEST(Typecheck, SumReinstallHandlers) {
  EXPECT_EQ(effects_of("promise loop (a x -> send b () ; return (inr ())) as p in return p"),
            "promise _ ! ({}, {a -> ({b}, {})})");
  EXPECT_THROW(infer_effects(gen_signature(), {}, C("promise loop (a x -> return <x>) as p in return p")),
               TypeError);
}

TEST(Typecheck, CheckAgainstAscription) {
  const auto& sig = gen_signature();
  Computation m = C("send a () ; return ()");
  EXPECT_TRUE(check_effects(sig, {}, m, TypeExpr::unit(), E("({a, b}, {})")));
  EXPECT_FALSE(check_effects(sig, {}, m, TypeExpr::unit(), E("({b}, {})")));
  EXPECT_FALSE(check_effects(sig, {}, m, TypeExpr::promise(TypeExpr::unit()), E("({a}, {})")));
}

TEST(Typecheck, ArrowSubtypingFollowsEffects) {
  TypeExpr small = TypeExpr::arrow(TypeExpr::unit(), TypeExpr::unit(), E("({a}, {})"));
  TypeExpr big = TypeExpr::arrow(TypeExpr::unit(), TypeExpr::unit(), E("({a, b}, {})"));
  EXPECT_TRUE(subtype(small, big));
  EXPECT_FALSE(subtype(big, small));
}

TEST(Typecheck, ContextVariables) {
  Context ctx;
  ctx.push("f", TypeExpr::arrow(TypeExpr::unit(), TypeExpr::unit(), E("({c}, {})")));
  Computation m = parse_computation("f ()", gen_signature(), ctx.names());
  EXPECT_EQ(format_comp_type(infer_effects(gen_signature(), ctx, m), TypingMode::Effects), "unit ! ({c}, {})");
}

TEST(Typecheck, ProcessesActOnLeaves) {
  Process p = parse_process("recv a () ; run (promise (a x -> send b () ; return <x>) as p in return p)",
                            gen_signature());
  auto report = typecheck_process(TypingMode::Effects, gen_signature(), {}, p);
  ASSERT_TRUE(report.composite.is_run());
  EXPECT_EQ(format_comp_type(*report.composite.run, TypingMode::Effects), "promise unit ! ({b}, {})");
  ASSERT_EQ(report.leaves.size(), 1u);
  EXPECT_EQ(format_process_path(report.leaves[0].path), "interrupt");
}

TEST(Typecheck, GeneratedTermsTypeInBothModes) {
  testing::TypedGen gen(21);
  for (int i = 0; i < 300; ++i) {
    testing::GenType t = gen.any_type();
    Computation m = gen.computation(t, 1 + i % 6);
    ASSERT_NO_THROW(infer_effects(gen_signature(), {}, m)) << pretty(m);
    TypeExpr skeletal = infer_skeletal(gen_signature(), {}, m);
    EXPECT_TRUE(compatible(erase(skeletal), erase(testing::to_type(t)))) << pretty(m);
  }
}

TEST(Typecheck, CorpusAscriptionsHold) {
  for (const auto& name : testing::corpus_files()) {
    auto prog = testing::load_corpus(name);
    if (!prog.ascription || prog.is_process()) continue;
    const auto& a = *prog.ascription;
    auto skeletal = infer_skeletal(prog.signature, {}, prog.computation());
    EXPECT_TRUE(compatible(erase(skeletal), erase(a.type))) << name;
    if (a.effect) {
      EXPECT_TRUE(check_effects(prog.signature, {}, prog.computation(), a.type, *a.effect)) << name;
    }
  }
}

}  // namespace
}  // namespace aeff
