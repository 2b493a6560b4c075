#include <gtest/gtest.h>

#include "aeff/reduce_par.hpp"
#include "aeff/surface.hpp"
#include "rule_goldens.hpp"

namespace aeff {
namespace {

using testing::golden_signature;

Process P(const std::string& text) { return parse_process(text, golden_signature(), {"v", "w"}); }

class ProcGolden : public ::testing::TestWithParam<testing::RuleGolden> {};

TEST_P(ProcGolden, ExactReduct) {
  auto r = testing::run_golden(GetParam());
  EXPECT_TRUE(r.passed) << r.detail;
}

std::vector<testing::RuleGolden> process_goldens() {
  std::vector<testing::RuleGolden> out;
  for (const auto& g : testing::rule_goldens()) {
    if (g.process) out.push_back(g);
  }
  return out;
}

INSTANTIATE_TEST_SUITE_P(Rules, ProcGolden, ::testing::ValuesIn(process_goldens()),
                         [](const auto& info) { return info.param.rule; });

std::vector<std::string> labels(const Process& p) {
  std::vector<std::string> out;
  for (const auto& s : step_proc(p)) out.push_back(s.label.str());
  return out;
}

TEST(ReducePar, ProcessNormalForms) {
  EXPECT_TRUE(labels(P("send op v ; (run (return v) || run (return w))")).empty());
  EXPECT_TRUE(labels(P("run (promise (op x -> return <x>) as p in await p as y in return y)")).empty());
}

TEST(ReducePar, SignalsInsideRunHoist) {
  auto l = labels(P("run (send op v ; let x = return w in return x)"));
  EXPECT_EQ(l, (std::vector<std::string>{"r14[r13@signal:r2]", "r15"}));
}

TEST(ReducePar, CongruencePaths) {
  auto l = labels(P("send note v ; (run (return v) || recv op v ; run (return w))"));
  EXPECT_EQ(l, std::vector<std::string>{"r21@signal.right:r18"});
}

TEST(ReducePar, FlatModel) {
  Process p = P("run (send op v ; return ()) || run (return w) || run (let x = return v in return x)");
  auto flat = to_flat(p);
  ASSERT_TRUE(flat.has_value());
  ASSERT_EQ(flat->threads.size(), 3u);
  auto steps = step_flat(*flat);
  std::vector<std::string> l;
  for (const auto& s : steps) l.push_back(s.label.str());
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0].rfind("flat-broadcast(op,", 0), 0u);
  EXPECT_EQ(l[1], "flat-run(2)[r2]");
  const auto& broadcast = steps[0].result;
  EXPECT_TRUE(alpha_eq(broadcast.threads[0], parse_computation("return ()", golden_signature(), {"v", "w"})));
  EXPECT_TRUE(alpha_eq(broadcast.threads[1], parse_computation("recv op v ; return w", golden_signature(),
                                                               {"v", "w"})));
  EXPECT_FALSE(to_flat(P("send op v ; run (return v)")).has_value());
}

TEST(ReducePar, FlatEqualityAndHash) {
  auto a = to_flat(P("run (let x = return v in return x) || run (return w)"));
  auto b = to_flat(P("run (let y = return v in return y) || run (return w)"));
  ASSERT_TRUE(a && b);
  EXPECT_TRUE(alpha_eq(*a, *b));
  EXPECT_EQ(flat_hash(*a), flat_hash(*b));
}

}  // namespace
}  // namespace aeff
