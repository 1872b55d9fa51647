#include <algorithm>

#include <gtest/gtest.h>

#include "corpus_cache.hpp"
#include "qml/corpus.hpp"
#include "qml/syntax.hpp"

namespace qml {
namespace {

const Formula P0 = Formula::atom("P0");
const Formula P1 = Formula::atom("P1");

TEST(Parser, BeliefExample) {
  const Formula f = parse("E[<=4] x (P0(x) & []P1(x))");
  EXPECT_EQ(f, Formula::count_leq(4, Formula::conj(P0, Formula::box(P1))));
  const FormulaMetrics b = metrics(f, EncodingMode::Binary);
  EXPECT_EQ(b.modal_depth, 1u);
  EXPECT_EQ(b.capacity, 4);
  EXPECT_EQ(b.n_sub, 7u);
  EXPECT_EQ(b.size, 10);
  EXPECT_EQ(metrics(f, EncodingMode::Unary).size, 11);
}

TEST(Parser, DerivedQuantifiers) {
  EXPECT_EQ(parse("E x P0(x)"), Formula::neg(Formula::count_leq(0, P0)));
  EXPECT_EQ(parse("A x P0(x)"), Formula::count_leq(0, Formula::neg(P0)));
  EXPECT_EQ(parse("E[>=2] x P0(x)"), Formula::neg(Formula::count_leq(1, P0)));
  EXPECT_EQ(parse("E[=2] x P0(x)"),
            Formula::conj(Formula::count_leq(2, P0), Formula::neg(Formula::count_leq(1, P0))));
  EXPECT_EQ(parse("<>P0(x) -> P1(x)"), Formula::implies(Formula::diamond(P0), P1));
  EXPECT_EQ(parse("P0(x) | P1(x) & P0(x)"), Formula::disj(P0, Formula::conj(P1, P0)));
}

TEST(Parser, NestedExactCountUsesFreshPredicate) {
  const Formula f = parse("<>E[=1] x P0(x)");
  const auto preds = predicates_of(f);
  EXPECT_NE(std::find(preds.begin(), preds.end(), "Q_0"), preds.end());
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    parse("P0(x) & ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 8u);
  }
  EXPECT_THROW(parse("P0(y)"), ParseError);
  EXPECT_THROW(parse("E[<=-1] x P0(x)"), ParseError);
  EXPECT_THROW(parse("R(x)"), ParseError);
  EXPECT_THROW(parse("(P0(x)"), ParseError);
}

TEST(Subformulas, Examples) {
  EXPECT_EQ(subformulas(Formula::neg(P0)).size(), 2u);
  EXPECT_EQ(subformulas(Formula::conj(P0, P0)).size(), 2u);
  EXPECT_EQ(subformulas(Formula::diamond(Formula::neg(P0))).size(), 3u);
  const auto s = subformulas(Formula::conj(P1, Formula::neg(P0)));
  EXPECT_EQ(s.back(), Formula::conj(P1, Formula::neg(P0)));
}

TEST(Printer, RoundTripOnCorpus) {
  for (const Formula& f : testing::corpus()) {
    const std::string text = print(f);
    EXPECT_EQ(parse(text, EncodingMode::Unary), f) << text;
    EXPECT_EQ(parse(text, EncodingMode::Binary), f) << text;
    EXPECT_EQ(print(parse(text)), text);
  }
}

TEST(Metrics, SubformulaNeverExceedsParent) {
  for (const Formula& f : testing::corpus()) {
    const FormulaMetrics top = metrics(f, EncodingMode::Binary);
    for (const Formula& g : subformulas(f)) {
      const FormulaMetrics m = metrics(g, EncodingMode::Binary);
      EXPECT_LE(m.n_sub, top.n_sub);
      EXPECT_LE(m.modal_depth, top.modal_depth);
      EXPECT_LE(m.capacity, top.capacity);
    }
  }
}

TEST(Metrics, BoundLength) {
  EXPECT_EQ(bound_length(0, EncodingMode::Unary), 1);
  EXPECT_EQ(bound_length(0, EncodingMode::Binary), 1);
  EXPECT_EQ(bound_length(1000, EncodingMode::Unary), 1000);
  EXPECT_EQ(bound_length(1000, EncodingMode::Binary), 10);
}

TEST(Corpus, DeterministicAndWithinSpec) {
  const auto a = generate_corpus(7, 100);
  const auto b = generate_corpus(7, 100);
  ASSERT_EQ(a.size(), 100u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  for (const Formula& f : testing::corpus()) {
    const FormulaMetrics m = metrics(f, EncodingMode::Binary);
    EXPECT_LE(m.n_sub, 8u);
    EXPECT_LE(m.modal_depth, 2u);
    EXPECT_LE(m.capacity, 2);
    for (const auto& p : predicates_of(f)) EXPECT_TRUE(p == "P0" || p == "P1") << p;
  }
}

TEST(Symbols, FreshAndCollision) {
  EXPECT_EQ(fresh_symbol("E_", {"E_0", "E_1", "P0"}), "E_2");
  EXPECT_TRUE(mentions_predicate(Formula::conj(P0, P1), "P1"));
  EXPECT_THROW(desugar_count_eq(1, P0, "P0"), SymbolCollision);
}

}  // namespace
}  // namespace qml
