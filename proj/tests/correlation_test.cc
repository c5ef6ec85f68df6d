#include "qapnet/correlation.h"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles/ks.h"
#include "qapnet/error.h"

namespace qapnet {
namespace {

NodeValues Wrap(const std::vector<double>& v) { return NodeValues(v.begin(), v.end()); }

TEST(Pearson, HandComputed) {
  std::vector<double> x = {1, 2, 3, 4, 5}, y = {2, 4, 5, 4, 5};
  EXPECT_NEAR(Pearson(x, y), 6 / std::sqrt(60.0), 1e-12);
  std::vector<double> lin = {3, 5, 7, 9, 11};
  EXPECT_NEAR(Pearson(x, lin), 1, 1e-12);
  std::vector<double> neg = {10, 8, 6, 4, 2};
  EXPECT_NEAR(Pearson(x, neg), -1, 1e-12);
}

TEST(MidRanks, Ties) {
  EXPECT_EQ(MidRanks(std::vector<double>{10, 20, 20, 30}),
            (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(MidRanks(std::vector<double>{3, 1, 2}), (std::vector<double>{3, 1, 2}));
}

TEST(Spearman, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  std::vector<double> x(40), y(40), fx(40), gy(40);
  for (int i = 0; i < 40; ++i) {
    x[i] = d(rng);
    y[i] = x[i] + d(rng);
    fx[i] = std::exp(3 * x[i]);
    gy[i] = std::pow(y[i] + 10, 3);
  }
  EXPECT_NEAR(Spearman(x, y), Spearman(fx, gy), 1e-12);
  EXPECT_NEAR(Spearman(x, fx), 1, 1e-12);
}

TEST(CorrelationPValue, StudentTReference) {
  // t = 2 with 10 degrees of freedom: two-sided p = 0.0733880
  const double r = 2 / std::sqrt(14.0);
  EXPECT_NEAR(CorrelationPValue(r, 12), 0.0733880, 1e-6);
  EXPECT_NEAR(CorrelationPValue(0.0, 12), 1.0, 1e-12);
  EXPECT_EQ(CorrelationPValue(1.0, 12), 0.0);
}

TEST(SignificanceStars, Thresholds) {
  EXPECT_EQ(SignificanceStars(0.0005), "***");
  EXPECT_EQ(SignificanceStars(0.005), "**");
  EXPECT_EQ(SignificanceStars(0.03), "*");
  EXPECT_EQ(SignificanceStars(0.05), "");
}

TEST(NodePermutationCorrelation, PerfectAssociation) {
  std::vector<double> x = {1, 4, 2, 8, 5, 7, 3, 6, 9, 0};
  std::vector<double> minus(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) minus[i] = -x[i];
  auto same = NodePermutationCorrelation(Wrap(x), Wrap(x), 999, 1);
  EXPECT_NEAR(same.r, 1, 1e-12);
  EXPECT_DOUBLE_EQ(same.p.one, 1.0 / 1000);
  auto opposite = NodePermutationCorrelation(Wrap(x), Wrap(minus), 999, 1);
  EXPECT_NEAR(opposite.r, -1, 1e-12);
  EXPECT_DOUBLE_EQ(opposite.p.lower, 1.0 / 1000);
  EXPECT_DOUBLE_EQ(opposite.p.one, opposite.p.lower);
}

TEST(NodePermutationCorrelation, PairwiseCompleteAndErrors) {
  NodeValues x = {1.0, 2.0, std::nullopt, 4.0, 5.0};
  NodeValues y = {2.0, 1.0, 3.0, std::nullopt, 7.0};
  auto r = NodePermutationCorrelation(x, y, 10, 1);
  EXPECT_EQ(r.n, 3u);
  EXPECT_THROW(NodePermutationCorrelation(x, NodeValues{1.0, 1.0, 1.0, 1.0, 1.0}, 10, 1),
               Error);
  EXPECT_THROW(NodePermutationCorrelation(NodeValues{1.0, 2.0}, NodeValues{2.0, 1.0}, 10, 1),
               Error);
}

TEST(NodePermutationCorrelation, IndependentVectors) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d;
  int large = 0;
  std::vector<double> ps;
  for (int trial = 0; trial < 200; ++trial) {
    NodeValues x(100), y(100);
    for (int i = 0; i < 100; ++i) {
      x[i] = d(rng);
      y[i] = d(rng);
    }
    auto res = NodePermutationCorrelation(x, y, 199, trial);
    if (std::abs(res.r) >= 0.3) ++large;
    ps.push_back(res.p.upper);
  }
  EXPECT_LE(large, 3);
  const double ks = oracle::KsStatisticUniform(ps);
  EXPECT_GT(oracle::KsPValue(ks, ps.size()), 0.001);
}

TEST(NodePermutationCorrelation, DeterministicUnderSeed) {
  NodeValues x = {1.0, 3.0, 2.0, 5.0, 4.0, 6.0}, y = {2.0, 1.0, 4.0, 3.0, 6.0, 5.0};
  auto a = NodePermutationCorrelation(x, y, 500, 42);
  auto b = NodePermutationCorrelation(x, y, 500, 42);
  EXPECT_EQ(a.p.upper, b.p.upper);
  EXPECT_EQ(a.p.two, b.p.two);
}

TEST(CorrelationTable, MethodSelectionAndDiagonal) {
  std::vector<NodeVariable> vars = {
      {"depression", {3.0, 10.0, 7.0, 15.0, 2.0, 9.0}, false},
      {"gender", {0.0, 1.0, 1.0, 0.0, 1.0, 0.0}, false},
      {"ratio", {0.2, 0.5, 0.4, 0.9, 0.1, std::nullopt}, false},
      {"sparse", {1.0, std::nullopt, std::nullopt, std::nullopt, 2.0, std::nullopt}, false}};
  auto table = BuildCorrelationTable(vars);
  EXPECT_NEAR(*table.cells[0][0].r, 1, 1e-12);
  EXPECT_EQ(table.cells[0][1].method, CorrelationMethod::kSpearman);
  EXPECT_EQ(table.cells[0][2].method, CorrelationMethod::kPearson);
  EXPECT_EQ(table.cells[0][2].n, 5u);
  EXPECT_EQ(*table.cells[2][0].r, *table.cells[0][2].r);
  EXPECT_FALSE(table.cells[0][3].r.has_value());

  std::ostringstream out;
  WriteCorrelationTable(out, table);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "var_a,var_b,method,n,r,p,stars");
  EXPECT_NE(out.str().find("depression,gender,spearman,6,"), std::string::npos);
  EXPECT_NE(out.str().find("depression,sparse,spearman,2,,,\n"), std::string::npos);
}

}  // namespace
}  // namespace qapnet
