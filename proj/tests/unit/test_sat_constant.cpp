#include <gtest/gtest.h>

#include "corpus_cache.hpp"
#include "qml/check.hpp"
#include "qml/sat_constant.hpp"
#include "qml/syntax.hpp"

namespace qml {
namespace {

TEST(SatConstant, Examples) {
  EXPECT_FALSE(sat_constant(parse("E[<=0] x P0(x) & E x P0(x)"), {4, 3, 2, 2}));
  const Formula life = parse("<>E[>=2] x (P1(x) & P2(x))");
  auto w = sat_constant(life, {4, 3, 2, 2});
  ASSERT_TRUE(w);
  EXPECT_TRUE(validate_model(w->model, DomainRegime::Constant));
  EXPECT_TRUE(check(w->model, w->world, w->object, life));
  EXPECT_GE(w->model.object_count(), 2u);
  EXPECT_FALSE(sat_constant(life, {4, 1, 2, 2}));
}

TEST(SatConstant, AgreesWithOracleOnCorpusSample) {
  const auto& c = testing::corpus();
  for (std::size_t i = 0; i < c.size(); i += 5) {
    const bool oracle = oracle_sat(c[i], DomainRegime::Constant, {4, 3, 2, 2}).has_value();
    auto w = sat_constant(c[i], {4, 3, 2, 2});
    EXPECT_EQ(oracle, w.has_value()) << print(c[i]);
    if (w) EXPECT_TRUE(check(w->model, w->world, w->object, c[i]));
  }
}

TEST(SatConstant, DefaultBounds) {
  const Formula f = parse("<>E[<=1] x P0(x)");
  const SearchBounds b = default_constant_bounds(f);
  EXPECT_EQ(b.max_depth, 1u);
  EXPECT_EQ(b.max_branching, 3u);
  EXPECT_EQ(b.max_objects, 6u);
}

}  // namespace
}  // namespace qml
