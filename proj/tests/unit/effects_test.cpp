#include <gtest/gtest.h>

#include <random>

#include "aeff/effects.hpp"
#include "aeff/measures.hpp"
#include "aeff/surface.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace aeff {
namespace {

using testing::gen_signature;

EffectAnnotation E(const std::string& text) { return parse_effect(text, gen_signature()); }

TEST(Effects, LeqIsComponentwise) {
  EXPECT_TRUE(leq(E("({}, {})"), E("({a}, {b -> ({c}, {})})")));
  EXPECT_TRUE(leq(E("({a}, {b -> ({}, {})})"), E("({a, c}, {b -> ({c}, {})})")));
  EXPECT_FALSE(leq(E("({a}, {})"), E("({b}, {})")));
  EXPECT_FALSE(leq(E("({}, {b -> ({c}, {})})"), E("({}, {b -> ({}, {})})")));
  EXPECT_FALSE(leq(E("({}, {a -> ({}, {})})"), E("({}, {})")));
}

TEST(Effects, JoinMergesNestedMaps) {
  auto j = join(E("({a}, {b -> ({a}, {})})"), E("({c}, {b -> ({c}, {}), a -> ({}, {})})"));
  EXPECT_EQ(j, E("({a, c}, {a -> ({}, {}), b -> ({a, c}, {})})"));
}

TEST(Effects, OpActFiresHandledOperation) {
  auto e = E("({a}, {b -> ({c}, {a -> ({}, {})}), c -> ({}, {})})");
  EXPECT_EQ(op_act(OpName("b"), e), E("({a, c}, {a -> ({}, {}), c -> ({}, {})})"));
  EXPECT_EQ(op_act(OpName("a"), e), e);
}

TEST(Effects, SizeCountsEveryEntry) {
  auto e = E("({}, {a -> ({}, {b -> ({}, {c -> ({}, {})})}), b -> ({}, {})})");
  EXPECT_EQ(handler_size(e), 4u);
  EXPECT_EQ(size_i(e), 4u);
  EXPECT_EQ(depth(e.handlers), 3u);
  EXPECT_EQ(size_i(EffectAnnotation{}), 0u);
}

TEST(Effects, PathsAreRootedChains) {
  auto e = E("({}, {a -> ({}, {b -> ({}, {})}), b -> ({}, {})})");
  auto p = paths(e.handlers);
  std::set<Path> expected{{}, {OpName("a")}, {OpName("a"), OpName("b")}, {OpName("b")}};
  EXPECT_EQ(p, expected);
  EXPECT_EQ(size_i_paths(e.handlers), 4u);
  EXPECT_TRUE(paths(EffectMap{}).empty());
}

TEST(Effects, FormatParsesBack) {
  auto e = E("({a, b}, {c -> ({a}, {a -> ({}, {})})})");
  EXPECT_EQ(format_effect(e), "({a, b}, {c -> ({a}, {a -> ({}, {})})})");
  EXPECT_EQ(E(format_effect(e)), e);
}

class EffectProperties : public ::testing::TestWithParam<int> {};

TEST_P(EffectProperties, OrderJoinAndAction) {
  std::mt19937_64 rng(1000 + GetParam());
  const std::vector<std::string> ops{"a", "b", "c"};
  for (int i = 0; i < 50; ++i) {
    auto x = testing::random_annotation(rng, ops, 2);
    auto y = testing::random_annotation(rng, ops, 2);
    auto j = join(x, y);
    // join is an upper bound, and the least one among x, y, j
    EXPECT_TRUE(leq(x, j));
    EXPECT_TRUE(leq(y, j));
    EXPECT_EQ(join(x, x), x);
    EXPECT_EQ(join(x, y), join(y, x));
    EXPECT_EQ(leq(x, y), join(x, y) == y);
    for (const auto& name : ops) {
      OpName op(name);
      EXPECT_EQ(op_act(op, x), testing::act(op, x));
      EXPECT_EQ(size_i(x), testing::count_entries(x.handlers));
      if (x.handlers.contains(op)) {
        EXPECT_LT(size_i(op_act(op, x)), size_i(x));
      } else {
        EXPECT_EQ(size_i(op_act(op, x)), size_i(x));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, EffectProperties, ::testing::Range(0, 8));

TEST(Effects, PathCountIsEntryCountPlusRoot) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    auto e = testing::random_annotation(rng, {"a", "b", "c"}, 3);
    std::size_t root = e.handlers.empty() ? 0 : 1;
    EXPECT_EQ(size_i_paths(e.handlers), size_i(e) + root);
    for (const char* name : {"a", "b", "c"}) {
      auto acted = op_act(OpName(name), e);
      if (e.handlers.contains(OpName(name))) {
        EXPECT_LT(size_i_paths(acted.handlers), size_i_paths(e.handlers));
      } else {
        EXPECT_EQ(size_i_paths(acted.handlers), size_i_paths(e.handlers));
      }
    }
  }
}

}  // namespace
}  // namespace aeff
