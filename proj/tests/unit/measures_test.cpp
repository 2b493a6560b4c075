#include <gtest/gtest.h>

#include <random>

#include "aeff/measures.hpp"
#include "aeff/surface.hpp"
#include "corpus.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace aeff {
namespace {

using testing::gen_signature;
using S = ParallelShape;

Computation C(const std::string& text) { return parse_computation(text, gen_signature()); }
Process P(const std::string& text) { return parse_process(text, gen_signature()); }

ProcMeasures measures_of(const std::string& text) {
  MeasureCache cache(gen_signature());
  return proc_measures(P(text), cache).totals;
}

TEST(Measures, MaxSignals) {
  EXPECT_EQ(max_signals(C("return ()")), 0u);
  EXPECT_EQ(max_signals(C("send a () ; return ()")), 1u);
  // the normal form carries both signals on its spine
  EXPECT_EQ(max_signals(C("let x = (send a () ; return ()) in send b () ; return x")), 2u);
  // a signal trapped under a handler that mentions the promise is not top-level
  EXPECT_EQ(max_signals(C("promise (a x -> return <x>) as p in send b () ; return p")), 1u);
  EXPECT_EQ(max_signals(C("promise (a x -> return <x>) as p in send c p ; return ()")), 0u);
}

TEST(Measures, MaxStepsSimpleCases) {
  EXPECT_EQ(max_steps(C("return ()")), 0u);
  EXPECT_EQ(max_steps(C("(fun (x : unit) -> return x) ()")), 1u);
  EXPECT_EQ(max_steps(C("let x = return () in return x")), 1u);
}

TEST(Measures, UndefinedOutsideSn) {
  Computation m1 = testing::load_corpus("m1.aeff").computation();
  EXPECT_THROW(max_signals(m1, 200), MeasureUndefined);
  EXPECT_THROW(max_steps(m1, 200), MeasureUndefined);
}

TEST(Measures, AgreeWithTreeOracles) {
  testing::TypedGen gen(51);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    Computation m = gen.computation(gen.data_type(), 1 + i % 5);
    auto steps = testing::naive_max_steps(m, 30000);
    auto signals = testing::naive_max_signals(m, 30000);
    if (!steps || !signals) continue;
    ++compared;
    EXPECT_EQ(max_steps(m), *steps) << pretty(m);
    EXPECT_EQ(max_signals(m), *signals) << pretty(m);
  }
  EXPECT_GT(compared, 150);
}

TEST(Shapes, ShapeOfAndFormat) {
  S s = shape_of(P("recv a () ; (run (return ()) || send b () ; run (return ()))"));
  EXPECT_EQ(format_shape(s), "down (run || up run)");
  EXPECT_EQ(format_shape(S::run()), "run");
}

TEST(Shapes, Rules) {
  auto reducts = [](const S& s) {
    std::vector<S> out;
    for (const auto& st : step_shape(s)) out.push_back(st.result);
    return out;
  };
  auto has = [](const std::vector<S>& v, const S& s) { return std::find(v.begin(), v.end(), s) != v.end(); };
  EXPECT_TRUE(has(reducts(S::down(S::run())), S::run()));
  EXPECT_TRUE(has(reducts(S::par(S::up(S::run()), S::run())), S::up(S::par(S::run(), S::down(S::run())))));
  EXPECT_TRUE(has(reducts(S::par(S::run(), S::up(S::run()))), S::up(S::par(S::down(S::run()), S::run()))));
  EXPECT_TRUE(has(reducts(S::down(S::par(S::run(), S::run()))), S::par(S::down(S::run()), S::down(S::run()))));
  EXPECT_TRUE(has(reducts(S::down(S::up(S::run()))), S::up(S::down(S::run()))));
  EXPECT_TRUE(reducts(S::run()).empty());
  EXPECT_EQ(max_sh(S::run()), 0u);
  EXPECT_EQ(max_sh(S::down(S::run())), 1u);
}

S random_shape(std::mt19937_64& rng, int budget) {
  if (budget <= 1) return S::run();
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return S::run();
    case 1: {
      if (budget < 3) return S::run();
      int left = std::uniform_int_distribution<int>(1, budget - 2)(rng);
      return S::par(random_shape(rng, left), random_shape(rng, budget - 1 - left));
    }
    case 2: return S::down(random_shape(rng, budget - 1));
    default: return S::up(random_shape(rng, budget - 1));
  }
}

TEST(Shapes, GeneratedShapesNormaliseAndMatchOracle) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    S s = random_shape(rng, 8);
    ASSERT_LE(s.size(), 8u);
    auto ex = explore(s, 100000);
    ASSERT_TRUE(ex.strongly_normalising()) << format_shape(s);
    auto naive = testing::naive_max_sh(s, 2000000);
    ASSERT_TRUE(naive.has_value());
    EXPECT_EQ(max_sh(s), *naive) << format_shape(s);
  }
}

TEST(ProcMeasures, Examples) {
  EXPECT_EQ(measures_of("run (return ())").tuple(), std::make_tuple(0u, 0u, 0u, 0u));
  EXPECT_EQ(measures_of("recv a () ; run (return ())").tuple(), std::make_tuple(0u, 0u, 1u, 0u));
  // the signal leaf is sequentially normal, so it contributes no run steps
  EXPECT_TRUE(step_seq(C("send a () ; return ()")).empty());
  EXPECT_EQ(measures_of("run (send a () ; return ())").tuple(), std::make_tuple(0u, 1u, 0u, 0u));
  EXPECT_EQ(measures_of("run (promise (a x -> promise (b y -> return <y>) as q in return <x>) as p in "
                        "let z = return p in return z)")
                .str(),
            "(2, 0, 0, 1)");
}

TEST(ProcMeasures, LeafReportsNamePaths) {
  MeasureCache cache(gen_signature());
  auto report = proc_measures(P("run (return ()) || recv a () ; run (send b () ; return ())"), cache);
  ASSERT_EQ(report.leaves.size(), 2u);
  EXPECT_EQ(report.leaves[0].path, "left");
  EXPECT_EQ(report.leaves[1].path, "right.interrupt");
  EXPECT_EQ(report.totals.max_up, 1u);
  EXPECT_EQ(report.totals.max_sh, max_sh(shape_of(P("run (return ()) || recv a () ; run (return ())"))));
}

TEST(ProcMeasures, UntypeableLeafIsNamed) {
  MeasureCache cache(gen_signature());
  try {
    proc_measures(P("run (return ()) || run (await () as x in return x)"), cache);
    FAIL();
  } catch (const MeasureUndefined& e) {
    EXPECT_NE(std::string(e.what()).find("right"), std::string::npos) << e.what();
  }
}

TEST(ProcMeasures, FlatTotals) {
  MeasureCache cache(gen_signature());
  auto flat = to_flat(P("run (send a () ; return ()) || run (let x = return () in return x)"));
  ASSERT_TRUE(flat.has_value());
  auto report = flat_measures(*flat, cache);
  EXPECT_EQ(report.totals.tuple(), std::make_tuple(0u, 1u, 1u));
  EXPECT_EQ(report.leaves[1].path, "thread 1");
}

}  // namespace
}  // namespace aeff
