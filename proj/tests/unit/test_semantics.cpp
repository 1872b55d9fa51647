#include <set>

#include <gtest/gtest.h>

#include "corpus_cache.hpp"
#include "qml/check.hpp"
#include "qml/enumerate.hpp"
#include "qml/syntax.hpp"
#include "reference_eval.hpp"

namespace qml {
namespace {

KripkeModel two_worlds(const char* du, const char* dv, const char* p0v) {
  std::string text = "worlds: u v\nedges: u->v\nobjects: a b\n";
  text += std::string("domain u: ") + du + "\ndomain v: " + dv + "\npred P0 v: " + p0v + "\n";
  return read_model(text);
}

TEST(Validate, RegimeConditions) {
  const KripkeModel single = read_model("worlds: w\nobjects: a\ndomain w: a\npred P0 w: a\n");
  for (auto r : {DomainRegime::Constant, DomainRegime::Expanding, DomainRegime::Decreasing, DomainRegime::Varying})
    EXPECT_TRUE(validate_model(single, r));
  const KripkeModel dec = two_worlds("a b", "a", "a");
  EXPECT_TRUE(validate_model(dec, DomainRegime::Decreasing));
  EXPECT_FALSE(validate_model(dec, DomainRegime::Expanding));
  EXPECT_FALSE(validate_model(dec, DomainRegime::Constant));
}

TEST(Validate, InterpretationOutsideDomain) {
  KripkeModel m = two_worlds("a b", "a", "a");
  m.interp["P0"][1].set(1);
  const ModelVerdict v = validate_model(m, DomainRegime::Varying);
  EXPECT_FALSE(v);
  EXPECT_FALSE(v.diagnostic.empty());
}

TEST(Check, ClauseInstances) {
  const KripkeModel m = read_model(
      "worlds: w v\nedges: w->v\nobjects: a b\ndomain w: a b\ndomain v: a b\n"
      "pred P0 w: a b\npred P0 v: a\n");
  EXPECT_TRUE(check(m, 0, 0, parse("P0(x)")));
  EXPECT_FALSE(check(m, 0, 0, parse("E[<=1] x P0(x)")));
  EXPECT_TRUE(check(m, 0, 0, parse("<>P0(x)")));
  EXPECT_FALSE(check(m, 0, 1, parse("<>P0(x)")));
  EXPECT_THROW(check(two_worlds("a", "a b", ""), 0, 1, parse("P0(x)")), std::out_of_range);
}

TEST(Check, AbsentObjectsAtSuccessors) {
  // b leaves the domain at v: its atoms are false there, counting skips it.
  KripkeModel m = two_worlds("a b", "a", "a");
  EXPECT_FALSE(check(m, 0, 1, parse("<>P0(x)")));
  EXPECT_TRUE(check(m, 0, 1, parse("<>E[<=0] x ~P0(x)")));
  EXPECT_FALSE(check(m, 0, 1, parse("<>E[<=0] x ~P0(x)"), CountingScope::Possibilist));
}

TEST(Check, BarcanInstances) {
  const Formula gbf = parse("E[<=1] x <>P0(x) -> <>E[<=1] x P0(x)");
  const KripkeModel dec = two_worlds("a b", "a", "a");
  const KripkeModel exp = two_worlds("a", "a b", "a b");
  for (const KripkeModel* m : {&dec, &exp})
    EXPECT_EQ(check(*m, 0, 0, gbf), testing::reference_holds(*m, 0, 0, gbf));
  EXPECT_TRUE(check(dec, 0, 0, gbf));
  EXPECT_FALSE(check(exp, 0, 0, gbf));
}

TEST(Enumerate, Counts) {
  std::size_t n = 0;
  enumerate_models({"P0"}, {1, 1, 0, 1}, DomainRegime::Constant, [&](const KripkeModel&) {
    ++n;
    return true;
  });
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(count_models(1, {1, 1, 0, 1}, DomainRegime::Constant), 2u);
  // Multisets of k objects over 2 profiles, k = 1, 2: C(2,1) + C(3,2).
  EXPECT_EQ(count_models(1, {1, 2, 0, 1}, DomainRegime::Constant), 5u);
  EXPECT_EQ(enumerate_tree_shapes(2, 1, 1).size(), 2u);
}

TEST(Enumerate, NoDuplicates) {
  std::set<std::string> seen;
  enumerate_models({"P0"}, {3, 2, 1, 2}, DomainRegime::Varying, [&](const KripkeModel& m) {
    EXPECT_TRUE(seen.insert(write_model(m)).second);
    return true;
  });
  EXPECT_EQ(seen.size(), count_models(1, {3, 2, 1, 2}, DomainRegime::Varying));
}

TEST(Oracle, Examples) {
  const Formula contra = parse("E x P0(x) & E[<=0] x P0(x)");
  for (auto r : {DomainRegime::Constant, DomainRegime::Expanding, DomainRegime::Decreasing})
    EXPECT_FALSE(oracle_sat(contra, r, {4, 3, 2, 2}));
  auto w = oracle_sat(parse("A x P0(x)"), DomainRegime::Constant, {4, 3, 2, 2});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->model.world_count(), 1u);
  EXPECT_EQ(w->model.object_count(), 1u);
}

TEST(Check, AgreesWithReferenceEvaluator) {
  std::size_t compared = 0;
  for (const Formula& f : testing::corpus()) {
    auto w = oracle_sat(f, DomainRegime::Varying, {4, 3, 2, 2});
    if (!w) continue;
    const KripkeModel& m = w->model;
    for (const Formula& g : subformulas(f)) {
      const Evaluation ev(m, g);
      for (std::size_t u = 0; u < m.world_count(); ++u)
        for (std::size_t a = 0; a < m.object_count(); ++a) {
          // Atoms of absent objects are false; the evaluator is total over D.
          EXPECT_EQ(ev.holds(u, a), testing::reference_holds(m, u, a, g)) << print(g);
          ++compared;
        }
    }
  }
  EXPECT_GT(compared, 1000u);
}

}  // namespace
}  // namespace qml
