#include <set>

#include <gtest/gtest.h>

#include "qml/bimodal.hpp"

namespace qml {
namespace {

TEST(BimodalParser, SugarAndPrinting) {
  const Bimodal p0 = Bimodal::var(0);
  EXPECT_EQ(parse_bimodal("[h]p0"), Bimodal::neg(Bimodal::dia(BOp::DiaH, Bimodal::neg(p0))));
  EXPECT_EQ(parse_bimodal("p0 -> p1"), Bimodal::neg(Bimodal::conj(p0, Bimodal::neg(Bimodal::var(1)))));
  for (const char* text : {"p0", "~<v>p1", "<h>(p0 & <u>~p0)", "p0 & p1 & <v><h>p2"}) {
    const Bimodal f = parse_bimodal(text);
    EXPECT_EQ(parse_bimodal(print(f)), f) << text;
  }
  EXPECT_THROW(parse_bimodal("<x>p0"), BimodalParseError);
  EXPECT_THROW(parse_bimodal("p0 &"), BimodalParseError);
}

TEST(BimodalMetrics, Examples) {
  const Bimodal f = parse_bimodal("<h>(p0 & <h>p2) & <v>p0");
  EXPECT_EQ(horizontal_depth(f), 2u);
  EXPECT_EQ(variable_count(f), 3u);
  EXPECT_EQ(connectives(f), 5u);
  EXPECT_TRUE(uses(f, BOp::DiaV));
  EXPECT_FALSE(uses(f, BOp::DiaU));
  EXPECT_EQ(subformulas(parse_bimodal("p0 & p0")).size(), 2u);
}

TEST(BimodalEnumerator, CountsAndUniqueness) {
  const auto fs = enumerate_bimodal(3, 2, {BOp::Neg, BOp::And, BOp::DiaH, BOp::DiaU});
  EXPECT_EQ(fs.size(), 672u);
  std::set<std::string> seen;
  for (const Bimodal& f : fs) {
    EXPECT_LE(connectives(f), 3u);
    EXPECT_TRUE(seen.insert(print(f)).second);
  }
  EXPECT_EQ(enumerate_bimodal(0, 2, {BOp::Neg}).size(), 2u);
  // Level 1: ~p0, ~p1, <h>p0, <h>p1 and 4 ordered conjunctions.
  EXPECT_EQ(enumerate_bimodal(1, 2, {BOp::Neg, BOp::And, BOp::DiaH}).size(), 2u + 8u);
}

TEST(KuOracle, Examples) {
  EXPECT_TRUE(ku_oracle(parse_bimodal("p0 & <u>~p0")));
  EXPECT_FALSE(ku_oracle(parse_bimodal("p0 & [u]~p0")));
  EXPECT_TRUE(ku_oracle(parse_bimodal("<h>p0 & [h]<h>p0")));
  EXPECT_FALSE(ku_oracle(parse_bimodal("<u>p0 & [u][h]~p0 & <u><h>p0")));
  EXPECT_THROW(ku_oracle(parse_bimodal("<v>p0")), std::invalid_argument);
}

TEST(ProductOracle, Examples) {
  const Bimodal v = parse_bimodal("<v>p0");
  EXPECT_TRUE(product_oracle(v, Vertical::S5, DomainRegime::Constant));
  EXPECT_FALSE(product_oracle(v, Vertical::Diff, DomainRegime::Constant, {1, 1, 1}));
  EXPECT_TRUE(product_oracle(v, Vertical::Diff, DomainRegime::Constant, {1, 1, 2}));
  const Bimodal self = parse_bimodal("p0 & [v]~p0 & <v>~p0");
  EXPECT_TRUE(product_oracle(self, Vertical::Diff, DomainRegime::Constant));
  EXPECT_FALSE(product_oracle(self, Vertical::S5, DomainRegime::Constant));
  EXPECT_THROW(product_oracle(parse_bimodal("<u>p0"), Vertical::S5, DomainRegime::Constant), std::invalid_argument);
}

TEST(ProductOracle, RegimesDifferOnVerticalGrowth) {
  // A point with no vertical neighbour whose successor has one.
  const Bimodal grow = parse_bimodal("[v](p0 & ~p0) & <h><v>p1");
  EXPECT_FALSE(product_oracle(grow, Vertical::Diff, DomainRegime::Constant));
  EXPECT_TRUE(product_oracle(grow, Vertical::Diff, DomainRegime::Expanding));
  EXPECT_FALSE(product_oracle(grow, Vertical::Diff, DomainRegime::Decreasing));
}

}  // namespace
}  // namespace qml
