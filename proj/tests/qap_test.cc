#include "qapnet/qap.h"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles/naive_ols.h"
#include "qapnet/builders.h"
#include "qapnet/ols.h"

namespace qapnet {
namespace {

TEST(PermutationPValues, EstimateAboveEveryReplicate) {
  std::vector<double> null(999);
  std::iota(null.begin(), null.end(), -500.0);
  auto p = PermutationPValues(1000.0, null);
  EXPECT_DOUBLE_EQ(p.upper, 1.0 / 1000);
  EXPECT_DOUBLE_EQ(p.lower, 1.0);
  EXPECT_DOUBLE_EQ(p.one, 1.0 / 1000);
  EXPECT_DOUBLE_EQ(p.two, 2.0 / 1000);
}

TEST(PermutationPValues, PercentRankNinetyNine) {
  // 99 replicates below the estimate: percent rank .99, upper-tail p = .01.
  std::vector<double> null(99);
  std::iota(null.begin(), null.end(), 0.0);
  auto p = PermutationPValues(0.5 + 98, null);
  EXPECT_DOUBLE_EQ(p.upper, 0.01);
}

TEST(PermutationPValues, TailFollowsSignAndTiesCount) {
  std::vector<double> null = {-3, -2, -1, 0, 1, 2, 3};
  auto neg = PermutationPValues(-2.0, null);
  EXPECT_DOUBLE_EQ(neg.lower, 3.0 / 8);
  EXPECT_DOUBLE_EQ(neg.upper, 7.0 / 8);
  EXPECT_DOUBLE_EQ(neg.one, neg.lower);
  EXPECT_DOUBLE_EQ(neg.two, 6.0 / 8);
  auto mid = PermutationPValues(0.0, null);
  EXPECT_DOUBLE_EQ(mid.two, 1.0);
  for (double obs : {-10.0, -1.5, 0.0, 2.5, 10.0}) {
    auto p = PermutationPValues(obs, null);
    EXPECT_GE(p.one, 1.0 / 8);
    EXPECT_LE(p.one, 1.0);
    EXPECT_LE(p.two, 1.0);
  }
}

TEST(Quantile, LinearInterpolation) {
  std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(Quantile(v, 0.0), 1);
  EXPECT_DOUBLE_EQ(Quantile(v, 1.0), 4);
  EXPECT_DOUBLE_EQ(Quantile(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(Quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(Quantile(std::vector<double>{7}, 0.975), 7);
  EXPECT_TRUE(std::isnan(Quantile(std::vector<double>{}, 0.5)));
}

TEST(Transform, ParseAndPrint) {
  EXPECT_EQ(Transform::Parse("none").kind, Transform::Kind::kNone);
  auto log = Transform::Parse("log");
  EXPECT_EQ(log.kind, Transform::Kind::kLog);
  EXPECT_EQ(log.offset, 1.0);
  EXPECT_EQ(Transform::Parse("log:0.5").offset, 0.5);
  EXPECT_EQ(Transform::Parse("log:0").ToString(), "log:0");
  EXPECT_EQ(Transform::Parse("none").ToString(), "none");
  EXPECT_THROW(Transform::Parse("sqrt"), Error);
  EXPECT_THROW(Transform::Parse("log:abc"), Error);
}

TEST(QapModelSpec, Validate) {
  QapModelSpec spec;
  EXPECT_THROW(spec.Validate(), Error);
  spec.terms.push_back({"", "mean(x)"});
  EXPECT_NO_THROW(spec.Validate());
  spec.permutations = 0;
  EXPECT_THROW(spec.Validate(), Error);
}

TEST(Vectorize, RowCounts) {
  DyadicMatrix y(73);
  DyadInclusion all(73);
  for (std::size_t i = 0; i < 73; ++i)
    for (std::size_t j = i + 1; j < 73; ++j) all.Include(i, j);
  EXPECT_EQ(Vectorize(y, {}, all).y.size(), 2628);

  std::vector<int> groups(123, 0);
  std::fill(groups.begin() + 73, groups.end(), 1);
  DyadicMatrix y2(123);
  const DyadicMatrix* ms[] = {&y2};
  auto d = Vectorize(y2, {}, ListwiseDelete(ms, groups));
  EXPECT_EQ(d.y.size(), 3853);
  for (const auto& [i, j] : d.dyads) {
    EXPECT_EQ(groups[i], groups[j]);
  }
}

TEST(Vectorize, Errors) {
  DyadicMatrix y(4);
  EXPECT_THROW(Vectorize(y, {}, DyadInclusion(4)), Error);
  DyadicMatrix directed(4, "d", false);
  directed.Set(0, 1, 1);
  DyadInclusion all(4);
  all.Include(0, 1);
  EXPECT_THROW(Vectorize(directed, {}, all), Error);
}

struct Problem {
  DyadicMatrix y;
  std::vector<DyadicMatrix> terms;
  std::vector<std::string> labels;
  std::vector<int> groups;
};

Problem RandomProblem(std::uint64_t seed, std::size_t n, std::size_t m, double signal,
                      bool missing_y = false) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Problem p;
  p.groups.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.groups[i] = i < n / 2 ? 0 : 1;
  for (std::size_t k = 0; k < m; ++k) {
    NumericValues v(n);
    for (auto& x : v) x = d(rng);
    p.terms.push_back(k % 2 ? SimilarityMatrix(v) : MeanMatrix(v));
    p.labels.push_back("t" + std::to_string(k));
  }
  p.y = DyadicMatrix(n);
  std::bernoulli_distribution hole(0.05);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.groups[i] != p.groups[j]) continue;
      if (missing_y && hole(rng)) {
        p.y.SetMissing(i, j);
        continue;
      }
      double v = d(rng);
      for (std::size_t k = 0; k < m; ++k) v += signal * p.terms[k].value(i, j);
      p.y.Set(i, j, v);
    }
  return p;
}

TEST(QapRegression, ObservedFitMatchesOracle) {
  auto p = RandomProblem(1, 16, 3, 0.5);
  QapOptions opts;
  opts.permutations = 20;
  auto fit = QapRegression(p.y, p.terms, p.labels, p.groups, opts);
  std::vector<double> y;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = i + 1; j < 16; ++j) {
      if (p.groups[i] != p.groups[j]) continue;
      y.push_back(p.y.value(i, j));
      rows.push_back({});
      for (const auto& t : p.terms) rows.back().push_back(t.value(i, j));
    }
  auto want = oracle::NormalEquations(y, rows);
  ASSERT_EQ(fit.terms.size(), 4u);
  EXPECT_EQ(fit.terms[0].label, "(intercept)");
  EXPECT_EQ(fit.terms[2].label, "t1");
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(fit.terms[k].estimate, want.beta[k], 1e-10);
  }
  EXPECT_NEAR(fit.r2, want.r2, 1e-10);
  EXPECT_EQ(fit.n_dyads, y.size());
  EXPECT_EQ(fit.permutations, 20u);
  EXPECT_EQ(fit.failed_replicates, 0u);
}

TEST(QapRegression, SummaryInvariants) {
  auto p = RandomProblem(2, 20, 2, 0.3);
  QapOptions opts;
  opts.permutations = 300;
  opts.seed = 9;
  opts.keep_distributions = true;
  auto fit = QapRegression(p.y, p.terms, p.labels, p.groups, opts);
  ASSERT_EQ(fit.null_distributions.size(), 3u);
  for (std::size_t k = 0; k < fit.terms.size(); ++k) {
    const auto& t = fit.terms[k];
    EXPECT_LE(t.pct_2_5, t.e_est);
    EXPECT_LE(t.e_est, t.pct_97_5);
    EXPECT_GE(t.p.one, 1.0 / 301);
    EXPECT_LE(t.p.one, 1.0);
    const auto& null = fit.null_distributions[k];
    ASSERT_EQ(null.size(), 300u);
    EXPECT_NEAR(t.e_est, std::accumulate(null.begin(), null.end(), 0.0) / 300, 1e-12);
  }
  EXPECT_LE(fit.adj_r2, fit.r2);
  EXPECT_GE(fit.r2, 0);
}

TEST(QapRegression, DeterministicAcrossThreadCounts) {
  for (bool missing : {false, true}) {
    auto p = RandomProblem(3, 18, 3, 0.2, missing);
    QapOptions opts;
    opts.permutations = 200;
    opts.seed = 77;
    opts.keep_distributions = true;
    opts.threads = 1;
    auto a = QapRegression(p.y, p.terms, p.labels, p.groups, opts);
    opts.threads = 4;
    auto b = QapRegression(p.y, p.terms, p.labels, p.groups, opts);
    EXPECT_EQ(a.null_distributions, b.null_distributions);
    for (std::size_t k = 0; k < a.terms.size(); ++k) {
      EXPECT_EQ(a.terms[k].estimate, b.terms[k].estimate);
      EXPECT_EQ(a.terms[k].p.one, b.terms[k].p.one);
      EXPECT_EQ(a.terms[k].e_est, b.terms[k].e_est);
    }
    opts.seed = 78;
    auto c = QapRegression(p.y, p.terms, p.labels, p.groups, opts);
    EXPECT_NE(a.null_distributions, c.null_distributions);
    EXPECT_EQ(a.terms[1].estimate, c.terms[1].estimate);
  }
}

TEST(QapRegression, StrongSignalIsSignificant) {
  auto p = RandomProblem(4, 30, 1, 3.0);
  QapOptions opts;
  opts.permutations = 199;
  auto fit = QapRegression(p.y, p.terms, p.labels, p.groups, opts);
  EXPECT_DOUBLE_EQ(fit.terms[1].p.one, 1.0 / 200);
}

TEST(QapRegression, DegenerateReplicatesAreCountedThenAbort) {
  // One group of four; y is observed on three dyads only. The term is nonzero
  // on a single dyad, so any permutation that hides that dyad leaves a
  // constant column.
  DyadicMatrix y(4), x(4);
  y.SetMissing(1, 2);
  y.SetMissing(1, 3);
  y.SetMissing(2, 3);
  y.Set(0, 1, 3);
  y.Set(0, 2, 1);
  y.Set(0, 3, 2);
  x.Set(0, 1, 1);
  std::vector<DyadicMatrix> terms = {x};
  std::vector<std::string> labels = {"x"};
  std::vector<int> groups(4, 0);
  QapOptions opts;
  opts.permutations = 200;
  EXPECT_THROW(QapRegression(y, terms, labels, groups, opts), ReplicateFailureError);
  opts.max_failure_fraction = 1.0;
  auto fit = QapRegression(y, terms, labels, groups, opts);
  EXPECT_GT(fit.failed_replicates, 0u);
  EXPECT_LT(fit.failed_replicates, 200u);
}

TEST(QapRegression, InputValidation) {
  auto p = RandomProblem(5, 10, 1, 1.0);
  QapOptions opts;
  opts.permutations = 10;
  EXPECT_THROW(QapRegression(p.y, {}, {}, p.groups, opts), Error);
  EXPECT_THROW(QapRegression(p.y, p.terms, {}, p.groups, opts), Error);
  EXPECT_THROW(QapRegression(p.y, p.terms, p.labels, std::vector<int>(3), opts), Error);
  opts.permutations = 0;
  EXPECT_THROW(QapRegression(p.y, p.terms, p.labels, p.groups, opts), Error);
}

Dataset ModelData() {
  NodeSet nodes;
  for (int i = 0; i < 20; ++i) nodes.Add(i < 10 ? "1" : "2", std::to_string(i));
  Dataset data;
  data.panel = NodePanel(nodes);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> score(0, 30);
  NumericValues dep(20), org(20);
  for (std::size_t i = 0; i < 20; ++i) {
    dep[i] = score(rng);
    org[i] = i < 10 ? 0.0 : static_cast<double>(i % 2);
  }
  data.panel.AddNumeric("depression", dep);
  data.panel.AddNumeric("org", org);
  DyadicMatrix y(20, "seconds_per_hour");
  std::exponential_distribution<double> ex(0.1);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = i + 1; j < 20; ++j)
      if (nodes.group(i) == nodes.group(j)) y.Set(i, j, ex(rng));
  data.dyadic["seconds_per_hour"] = y;
  return data;
}

TEST(FitModel, TransformsAndLabels) {
  auto data = ModelData();
  QapModelSpec spec;
  spec.terms = {{"Mean", "mean(depression)"}, {"", "similarity(depression)"}};
  spec.permutations = 50;
  spec.seed = 3;
  auto fit = FitModel(spec, data);
  ASSERT_EQ(fit.terms.size(), 3u);
  EXPECT_EQ(fit.terms[1].label, "Mean");
  EXPECT_EQ(fit.terms[2].label, "similarity(depression)");

  auto logged = LogTransform(data.dyadic.at("seconds_per_hour"), 1.0);
  std::vector<DyadicMatrix> terms = {EvaluateTerm("mean(depression)", data),
                                     EvaluateTerm("similarity(depression)", data)};
  std::vector<std::string> labels = {"Mean", "similarity(depression)"};
  QapOptions opts;
  opts.permutations = 50;
  opts.seed = 3;
  auto direct = QapRegression(logged, terms, labels, data.nodes().groups(), opts);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(fit.terms[k].estimate, direct.terms[k].estimate);
    EXPECT_EQ(fit.terms[k].p.two, direct.terms[k].p.two);
  }

  spec.transform = Transform::Parse("none");
  auto raw = FitModel(spec, data);
  EXPECT_NE(raw.terms[1].estimate, fit.terms[1].estimate);

  spec.dependent = "missing_matrix";
  EXPECT_THROW(FitModel(spec, data), Error);
}

TEST(FitModel, DropsConstantTermsOnRequest) {
  auto data = ModelData().RestrictToSample("1");
  QapModelSpec spec;
  spec.terms = {{"", "mean(depression)"}, {"", "both(org=1)"}};
  spec.permutations = 20;
  EXPECT_THROW(FitModel(spec, data), RankDeficientError);
  auto fit = FitModel(spec, data, {.drop_constant_terms = true});
  ASSERT_EQ(fit.terms.size(), 3u);
  EXPECT_FALSE(fit.terms[1].dropped);
  EXPECT_TRUE(fit.terms[2].dropped);
  EXPECT_EQ(fit.terms[2].label, "both(org=1)");
}

}  // namespace
}  // namespace qapnet
