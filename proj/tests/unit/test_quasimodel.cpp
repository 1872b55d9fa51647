#include <gtest/gtest.h>

#include "corpus_cache.hpp"
#include "qml/check.hpp"
#include "qml/quasimodel.hpp"
#include "qml/syntax.hpp"

namespace qml {
namespace {

TypeSet bits(const Closure& cl, std::initializer_list<const char*> members) {
  TypeSet t(cl.size());
  for (const char* m : members) t.set(*cl.find(parse(m)));
  return t;
}

TEST(Types, BooleanSaturation) {
  const Closure neg(parse("~P0(x)"));
  EXPECT_TRUE(validate_type(bits(neg, {"P0(x)"}), neg));
  EXPECT_TRUE(validate_type(bits(neg, {"~P0(x)"}), neg));
  EXPECT_EQ(validate_type(bits(neg, {}), neg).clause, "tp1");
  EXPECT_EQ(validate_type(bits(neg, {"P0(x)", "~P0(x)"}), neg).clause, "tp1");
  const Closure conj(parse("P0(x) & P1(x)"));
  EXPECT_EQ(validate_type(bits(conj, {"P0(x)", "P0(x) & P1(x)"}), conj).clause, "tp2");
  EXPECT_TRUE(validate_type(bits(conj, {"P0(x)", "P1(x)", "P0(x) & P1(x)"}), conj));
}

TEST(Quasistates, CountingSaturation) {
  const Formula phi = parse("E[<=1] x P0(x)");
  const Closure cl(phi);
  const TypeSet tp = bits(cl, {"P0(x)", "E[<=1] x P0(x)"});
  const TypeSet tn = bits(cl, {"E[<=1] x P0(x)"});
  EXPECT_TRUE(validate_quasistate({{tp, tn}, {1, 1}}, cl));
  EXPECT_EQ(validate_quasistate({{tp, tn}, {2, 1}}, cl).clause, "qs3");
  // μ = C+1 stands for "more than C": the formula must be absent everywhere.
  const TypeSet tp_out = bits(cl, {"P0(x)"});
  const TypeSet tn_out = bits(cl, {});
  EXPECT_TRUE(validate_quasistate({{tp_out, tn_out}, {2, 1}}, cl));
  EXPECT_EQ(validate_quasistate({{tp, tn}, {3, 1}}, cl).clause, "qs2");
  EXPECT_EQ(validate_quasistate({{}, {}}, cl).clause, "qs1");
}

TEST(ModelToQuasimodel, SingleWorld) {
  const Formula phi = parse("E x P0(x)");
  const KripkeModel m = read_model("worlds: w\nobjects: a\ndomain w: a\npred P0 w: a\n");
  const Quasimodel q = model_to_quasimodel(m, phi);
  ASSERT_EQ(q.world_count(), 1u);
  ASSERT_EQ(q.states[0].types.size(), 1u);
  EXPECT_TRUE(q.states[0].types[0].test(Closure(phi).root()));
  EXPECT_EQ(q.run_count(), 1u);
  EXPECT_TRUE(validate_quasimodel(q, phi));
}

TEST(ModelToQuasimodel, MultiplicityCap) {
  const Formula phi = parse("E[<=1] x P0(x)");
  const KripkeModel m = read_model("worlds: w\nobjects: a b c\ndomain w: a b c\npred P0 w: a b c\n");
  const Quasimodel q = model_to_quasimodel(m, phi);
  ASSERT_EQ(q.states[0].types.size(), 1u);
  EXPECT_EQ(q.states[0].multiplicity[0], 2);
  EXPECT_EQ(q.run_count(), 3u);
}

TEST(ModelToQuasimodel, RejectsVaryingDomains) {
  const KripkeModel m = read_model("worlds: u v\nedges: u->v\nobjects: a b\ndomain u: a b\ndomain v: a\n");
  EXPECT_THROW(model_to_quasimodel(m, parse("<>P0(x)")), std::invalid_argument);
}

TEST(Quasimodel, Mutations) {
  const Formula phi = parse("E[<=1] x <>P0(x) & <>~P0(x)");
  auto w = oracle_sat(phi, DomainRegime::Constant, {4, 3, 2, 2});
  ASSERT_TRUE(w);
  const Quasimodel q = model_to_quasimodel(w->model, phi);
  const Closure cl(phi);
  ASSERT_TRUE(validate_quasimodel(q, cl));

  Quasimodel dropped = q;
  dropped.runs.pop_back();
  const auto v = validate_quasimodel(dropped, cl);
  EXPECT_FALSE(v);

  Quasimodel flipped = q;
  const std::size_t d = cl.diamonds().front();
  flipped.runs[0][0].flip(d);
  const auto f = validate_quasimodel(flipped, cl);
  EXPECT_FALSE(f);
}

TEST(Quasimodel, CellwiseEquivalenceAndRoundTrip) {
  std::size_t done = 0;
  for (const Formula& phi : testing::corpus()) {
    auto w = oracle_sat(phi, DomainRegime::Constant, {4, 3, 2, 2});
    if (!w) continue;
    const Quasimodel q = model_to_quasimodel(w->model, phi);
    ASSERT_TRUE(validate_quasimodel(q, phi)) << print(phi);
    const SatWitness back = quasimodel_to_model(q, phi);
    const Evaluation ev(back.model, phi);
    const Closure& cl = ev.closure();
    for (std::size_t i = 0; i < q.run_count(); ++i)
      for (std::size_t u = 0; u < q.world_count(); ++u)
        for (std::size_t s = 0; s < cl.size(); ++s) EXPECT_EQ(q.runs[i][u].test(s), ev.holds(u, i, s));
    EXPECT_TRUE(check(back.model, back.world, back.object, phi));
    if (++done == 40) break;
  }
  EXPECT_EQ(done, 40u);
}

TEST(Prune, ValidSmallerAndWithinBounds) {
  for (const char* text : {"E x P0(x)", "<>E[>=2] x (P1(x) & P2(x))", "E x <>P0(x) & E x <>~P0(x) & <>E[>=2] x P1(x)",
                           "<><>P0(x) & <>~P0(x) & E[>=2] x <>P1(x)"}) {
    const Formula phi = parse(text);
    auto w = oracle_sat(phi, DomainRegime::Constant, {4, 3, 2, 2});
    ASSERT_TRUE(w) << text;
    const Quasimodel q = model_to_quasimodel(w->model, phi);
    const Quasimodel p = prune(q, phi);
    EXPECT_TRUE(validate_quasimodel(p, phi)) << text;
    EXPECT_LE(p.world_count(), q.world_count()) << text;
    const SatWitness back = quasimodel_to_model(p, phi);
    EXPECT_TRUE(check(back.model, back.world, back.object, phi));
    const FormulaMetrics mt = metrics(phi, EncodingMode::Binary);
    EXPECT_LE(Natural(p.world_count()), pruning_world_bound(mt.n_sub, mt.modal_depth, mt.capacity));
    EXPECT_LE(Natural(p.run_count()), pruning_index_bound(mt.n_sub, mt.modal_depth, mt.capacity));
  }
}

TEST(Prune, BoundExpressions) {
  EXPECT_EQ(pruning_world_bound(2, 1, 1), Natural(1) << 16);
  EXPECT_EQ(pruning_index_bound(2, 2, 3), Natural(2 * 3) * (Natural(1) << 20));
  // m = 0 and C = 0 are read as 1.
  EXPECT_EQ(pruning_world_bound(1, 0, 0), Natural(256));
}

TEST(QuasimodelIo, RoundTripAndErrors) {
  const Formula phi = parse("<>E[<=1] x P0(x) & E x P1(x)");
  auto w = oracle_sat(phi, DomainRegime::Constant, {4, 3, 2, 2});
  ASSERT_TRUE(w);
  const Quasimodel q = model_to_quasimodel(w->model, phi);
  const std::string text = write_quasimodel(q);
  const Quasimodel r = read_quasimodel(text);
  EXPECT_EQ(write_quasimodel(r), text);
  EXPECT_TRUE(validate_quasimodel(r, phi));
  EXPECT_THROW(read_quasimodel("world 0 parent -\n"), std::runtime_error);
  EXPECT_THROW(read_quasimodel("quasimodel 2\nworld 0 parent -\ntype 0 0 mult 1 : 5\n"), std::runtime_error);
}

}  // namespace
}  // namespace qml
