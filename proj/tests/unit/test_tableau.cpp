#include <sstream>

#include <gtest/gtest.h>

#include "corpus_cache.hpp"
#include "qml/check.hpp"
#include "qml/syntax.hpp"
#include "qml/tableau.hpp"

namespace qml {
namespace {

TypeSet bits(const Closure& cl, std::initializer_list<const char*> members) {
  TypeSet t(cl.size());
  for (const char* m : members) t.set(*cl.find(parse(m)));
  return t;
}

TEST(DomainCap, Examples) {
  EXPECT_EQ(domain_cap(parse("<>~P0(x)")), 3);
  EXPECT_EQ(domain_cap(parse("P0(x)")), 1);
  // n = 3, m = 2, C = 1.
  EXPECT_EQ(domain_cap(parse("<><>E[<=1] x P0(x)")), 4 * 2 * 2);
}

TEST(CheckLocal, SaturationAndCounting) {
  const Closure cl(parse("E[<=1] x P0(x)"));
  const TypeSet in = bits(cl, {"P0(x)", "E[<=1] x P0(x)"});
  const TypeSet out = bits(cl, {"P0(x)"});
  EXPECT_TRUE(check_local(cl, {{in}}));
  EXPECT_FALSE(check_local(cl, {{in, in}}));
  EXPECT_TRUE(check_local(cl, {{out, out}}));
  EXPECT_FALSE(check_local(cl, {{out}}));
}

TEST(Qkworld, DepthZeroIsLocal) {
  const Formula phi = parse("<>P0(x) & ~P0(x)");
  const Closure cl(phi);
  const TypeSet t = bits(cl, {"<>P0(x)", "~P0(x)", "<>P0(x) & ~P0(x)"});
  EXPECT_TRUE(qkworld(phi, {1, 0}, {{t}}));
  EXPECT_TRUE(qkworld(phi, {1, 1}, {{t}}));
  const TypeSet broken = bits(cl, {"<>P0(x)", "<>P0(x) & ~P0(x)"});
  EXPECT_FALSE(qkworld(phi, {1, 0}, {{broken}}));
  EXPECT_FALSE(qkworld(phi, {1, 1}, {{t, t}}));
}

TEST(SatExpanding, Examples) {
  EXPECT_FALSE(sat_expanding(parse("A x P0(x) & E x ~P0(x)")));
  auto w = sat_expanding(parse("E x <>P0(x) & E x <>~P0(x)"));
  ASSERT_TRUE(w);
  EXPECT_TRUE(validate_model(w->model, DomainRegime::Expanding));
  EXPECT_TRUE(check(w->model, w->world, w->object, parse("E x <>P0(x) & E x <>~P0(x)")));
  // Objects may appear at successors but never disappear.
  auto grow = sat_expanding(parse("E[<=1] x P0(x) & <>E[>=2] x P0(x)"));
  ASSERT_TRUE(grow);
  EXPECT_FALSE(sat_expanding(parse("E[>=2] x P0(x) & <>E[<=0] x ~P1(x) & []E[<=0] x P1(x)")));
}

TEST(SatExpanding, Refusal) {
  ExpandingOptions o;
  o.n_cap = 1;
  EXPECT_THROW(sat_expanding(parse("E x P0(x)"), o), TableauRefusal);
  o.domain_limit = 1;
  EXPECT_THROW(sat_expanding(parse("E x P0(x)"), o), TableauRefusal);
}

TEST(SatExpanding, MemoizationDoesNotChangeVerdicts) {
  std::size_t checked = 0;
  const auto& formulas = testing::corpus();
  for (std::size_t i = 0; i < formulas.size(); i += 3) {
    const Formula& phi = formulas[i];
    ExpandingOptions on, off;
    on.domain_limit = off.domain_limit = 3;
    off.memoize = false;
    TableauStats stats;
    on.stats = &stats;
    auto a = sat_expanding(phi, on);
    auto b = sat_expanding(phi, off);
    EXPECT_EQ(a.has_value(), b.has_value()) << print(phi);
    if (a) EXPECT_TRUE(check(a->model, a->world, a->object, phi)) << print(phi);
    ++checked;
  }
  EXPECT_EQ(checked, 100u);
}

TEST(SatExpanding, AgreesWithOracle) {
  const auto& formulas = testing::corpus();
  for (std::size_t i = 0; i < formulas.size(); i += 4) {
    const Formula& phi = formulas[i];
    ExpandingOptions o;
    o.domain_limit = 3;
    const bool tab = sat_expanding(phi, o).has_value();
    const bool oracle = oracle_sat(phi, DomainRegime::Expanding, {4, 3, 2, 2}).has_value();
    EXPECT_EQ(tab, oracle) << print(phi);
  }
}

TEST(SatExpanding, TraceLines) {
  std::ostringstream trace;
  ExpandingOptions o;
  o.trace = &trace;
  ASSERT_TRUE(sat_expanding(parse("<>P0(x)"), o));
  EXPECT_FALSE(trace.str().empty());
}

}  // namespace
}  // namespace qml
