#include <gtest/gtest.h>

#include "aeff/audit.hpp"
#include "aeff/surface.hpp"
#include "corpus.hpp"
#include "generators.hpp"

namespace aeff {
namespace {

using testing::gen_signature;

Process P(const std::string& text) { return parse_process(text, gen_signature()); }

TEST(Audit, SignalBroadcastDecreases) {
  auto r = audit_lex_decrease(P("run (send a () ; return ()) || run (return ())"), gen_signature());
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.edges, 0u);
  EXPECT_TRUE(r.quiescent);
}

TEST(Audit, NoEdgesPassesVacuously) {
  auto r = audit_lex_decrease(P("run (return ())"), gen_signature());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.edges, 0u);
  EXPECT_EQ(r.root_measures, "(0, 0, 0, 0)");
}

TEST(Audit, ReinstallHandlersFailThePrecondition) {
  auto prog = testing::load_corpus("pingpong.aeff");
  auto r = audit_lex_decrease(prog.process(), prog.signature, 1000);
  EXPECT_FALSE(r.precondition_ok());
  EXPECT_FALSE(r.passed());
}

TEST(Audit, UntypedLeafFailsThePrecondition) {
  auto r = audit_lex_decrease(P("run (await () as x in return x)"), gen_signature());
  EXPECT_FALSE(r.precondition_ok());
}

TEST(Audit, TriggeredHandlerShrinksAnnotation) {
  auto r = audit_lex_decrease(P("run (send a () ; return ()) || "
                                "run (promise (a x -> send b () ; return <x>) as p in return p)"),
                              gen_signature());
  EXPECT_TRUE(r.passed()) << (r.violations.empty() ? "" : r.violations.front().label);
}

TEST(Audit, FlatModel) {
  auto flat = to_flat(P("run (send a () ; return ()) || run (promise (a x -> return <x>) as p in return p) "
                        "|| run (recv b () ; return ())"));
  ASSERT_TRUE(flat.has_value());
  auto r = audit_lex_decrease(*flat, gen_signature());
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.edges, 0u);
}

TEST(Audit, BudgetStopsBeforeQuiescence) {
  auto r = audit_lex_decrease(P("run (send a () ; send b () ; return ()) || run (send c () ; return ()) || "
                                "run (let x = return () in return x)"),
                              gen_signature(), 3);
  EXPECT_FALSE(r.quiescent);
  EXPECT_FALSE(r.passed());
}

TEST(Audit, GeneratedProcesses) {
  testing::TypedGen gen(71);
  MeasureCache cache(gen_signature(), 20000);
  int audited = 0;
  for (int i = 0; i < 80; ++i) {
    Process p = gen.process(2, 2);
    if (explore(p, 20000).verdict.kind != VerdictKind::SN) continue;
    auto r = audit_lex_decrease(p, cache);
    ++audited;
    EXPECT_TRUE(r.passed()) << pretty(p);
  }
  EXPECT_GT(audited, 40);
}

}  // namespace
}  // namespace aeff
