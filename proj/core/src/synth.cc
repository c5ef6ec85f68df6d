#include "qapnet/synth.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "qapnet/builders.h"
#include "qapnet/error.h"
#include "qapnet/permutation.h"

namespace qapnet {
namespace {

constexpr int kMaxDepression = 60;
const char* const kBigFive[] = {"openness", "conscientiousness", "extraversion",
                                "agreeableness", "neuroticism"};

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void DiscretizedMoments(const LatentNormal& latent, int max_score, double& mean,
                        double& sd) {
  double mass = 0, m1 = 0, m2 = 0;
  for (int k = 0; k <= max_score; ++k) {
    const double p = NormalCdf((k + 0.5 - latent.mean) / latent.sd) -
                     NormalCdf((k - 0.5 - latent.mean) / latent.sd);
    mass += p;
    m1 += p * k;
    m2 += p * k * k;
  }
  mean = m1 / mass;
  sd = std::sqrt(std::max(0.0, m2 / mass - mean * mean));
}

bool Bernoulli(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

void CheckShare(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(fmt::format("{} must lie in [0, 1]", name));
}

}  // namespace

void SynthConfig::Validate() const {
  if (sample_sizes.empty()) throw Error("at least one sample is required");
  for (auto n : sample_sizes)
    if (n < 4) throw Error("every sample needs at least 4 nodes");
  if (!(sigma >= 0)) throw Error("sigma must be non-negative");
  if (!(offset >= 0)) throw Error("offset must be non-negative");
  if (!(depression_sd > 0) || depression_mean <= 0 || depression_mean >= kMaxDepression)
    throw Error("depression mean must lie inside (0, 60) with positive SD");
  CheckShare(female_share, "female share");
  CheckShare(org_share, "organization share");
  CheckShare(nomination_density, "nomination density");
  CheckShare(reciprocity, "reciprocity");
  CheckShare(nonresponse, "nonresponse");
}

std::vector<PlantedTerm> PublishedModelTerms(std::size_t sample_count) {
  std::vector<PlantedTerm> terms;
  if (sample_count >= 2) terms.push_back({"Sample two", "both(sample=2)", 0.806});
  const std::vector<PlantedTerm> rest = {
      {"At least one female", "any(gender=female)", -0.095},
      {"Both female", "both(gender=female)", -0.148},
      {"Age mean (centered)", "centered_mean(age)", 0.065},
      {"Age similarity", "similarity(age)", 0.042},
      {"One student organization", "one(org=1)", -0.028},
      {"Same student status", "both(org=1)", 0.269},
      {"Being friends", "or(friendship)", 2.128},
      {"Depression mean", "mean(depression)", -0.059},
      {"Depression similarity", "similarity(depression)", 0.047},
      {"Depression mean * depression similarity",
       "product(mean(depression),similarity(depression))", -0.004},
      {"Depression mean * being friends", "product(mean(depression),or(friendship))",
       -0.012},
  };
  terms.insert(terms.end(), rest.begin(), rest.end());
  return terms;
}

SynthConfig PublishedModelConfig() {
  SynthConfig cfg;
  cfg.intercept = 2.504;
  cfg.terms = PublishedModelTerms(cfg.sample_sizes.size());
  return cfg;
}

QapModelSpec PlantedModelSpec(const SynthConfig& cfg) {
  QapModelSpec spec;
  spec.dependent = "seconds_per_hour";
  for (const auto& t : cfg.terms) spec.terms.push_back({t.label, t.expression});
  spec.transform = {Transform::Kind::kLog, cfg.offset};
  spec.seed = cfg.seed;
  return spec;
}

LatentNormal SolveDiscretizedNormal(double mean, double sd, int max_score) {
  LatentNormal latent{mean, sd};
  for (int iter = 0; iter < 500; ++iter) {
    double m = 0, s = 0;
    DiscretizedMoments(latent, max_score, m, s);
    if (std::abs(m - mean) < 1e-12 && std::abs(s - sd) < 1e-12) break;
    latent.mean += mean - m;
    latent.sd *= sd / s;
  }
  return latent;
}

SynthDataset GenerateDataset(const SynthConfig& cfg) {
  cfg.Validate();
  Rng rng = ReplicateRng(cfg.seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);

  NodeSet nodes;
  std::size_t next_id = 1;
  for (std::size_t s = 0; s < cfg.sample_sizes.size(); ++s)
    for (std::size_t k = 0; k < cfg.sample_sizes[s]; ++k)
      nodes.Add(std::to_string(s + 1), std::to_string(next_id++));
  const std::size_t n = nodes.size();

  const LatentNormal latent =
      SolveDiscretizedNormal(cfg.depression_mean, cfg.depression_sd, kMaxDepression);
  std::vector<bool> respondent(n);
  NumericValues depression(n), age(n), org(n);
  CategoricalValues gender(n);
  std::vector<NumericValues> traits(std::size(kBigFive), NumericValues(n));
  for (std::size_t i = 0; i < n; ++i) {
    respondent[i] = !Bernoulli(rng, cfg.nonresponse);
    long score;
    do {
      score = std::lround(latent.mean + latent.sd * normal(rng));
    } while (score < 0 || score > kMaxDepression);
    if (respondent[i]) depression[i] = static_cast<double>(score);
    age[i] = std::clamp<double>(std::round(cfg.age_mean + cfg.age_sd * normal(rng)), 16, 80);
    gender[i] = Bernoulli(rng, cfg.female_share) ? "female" : "male";
    org[i] = Bernoulli(rng, cfg.org_share) ? 1.0 : 0.0;
    if (cfg.big_five) {
      std::uniform_int_distribution<int> item(1, 5);
      for (auto& t : traits) {
        const double v = (item(rng) + item(rng)) / 2.0;
        if (respondent[i]) t[i] = v;
      }
    }
  }

  SynthDataset out;
  NodePanel panel(nodes);
  panel.AddNumeric("depression", depression);
  panel.AddNumeric("age", age);
  panel.AddCategorical("gender", gender);
  panel.AddNumeric("org", org);
  if (cfg.big_five)
    for (std::size_t t = 0; t < std::size(kBigFive); ++t) panel.AddNumeric(kBigFive[t], traits[t]);
  out.data.panel = std::move(panel);

  NominationNetwork friendship(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (nodes.group(i) != nodes.group(j)) continue;
      if (!Bernoulli(rng, cfg.nomination_density)) continue;
      if (Bernoulli(rng, cfg.reciprocity)) {
        friendship.AddTie(i, j);
        friendship.AddTie(j, i);
      } else if (Bernoulli(rng, 0.5)) {
        friendship.AddTie(i, j);
      } else {
        friendship.AddTie(j, i);
      }
    }
  // Non-respondents' own nominations are unobserved.
  NominationNetwork observed(n);
  for (std::size_t i = 0; i < n; ++i) {
    observed.SetRespondent(i, respondent[i]);
    if (!respondent[i]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && friendship.Tie(i, j)) observed.AddTie(i, j);
  }
  out.data.networks.emplace("friendship", std::move(observed));

  out.linear_predictor = DyadicMatrix(n, "linear_predictor", true, cfg.intercept);
  for (const auto& term : cfg.terms) {
    const DyadicMatrix x = EvaluateTerm(term.expression, out.data);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!x.missing(i, j))
          out.linear_predictor.Set(i, j, out.linear_predictor.value(i, j) + term.beta * x.value(i, j));
  }

  out.log_duration = DyadicMatrix(n, "log_duration");
  out.durations = DyadicMatrix(n, "seconds_per_hour");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (nodes.group(i) != nodes.group(j)) {
        out.linear_predictor.Set(i, j, 0.0);
        continue;
      }
      const double y = out.linear_predictor.value(i, j) + cfg.sigma * normal(rng);
      out.log_duration.Set(i, j, y);
      out.durations.Set(i, j, std::max(0.0, std::exp(y) - cfg.offset));
    }
  out.data.dyadic.emplace("seconds_per_hour", out.durations);
  return out;
}

double CalibrateSigma(const SynthConfig& cfg, double target_r2) {
  if (!(target_r2 > 0 && target_r2 < 1)) throw Error("target R^2 must lie in (0, 1)");
  SynthConfig pilot = cfg;
  pilot.sigma = 0.0;
  const SynthDataset d = GenerateDataset(pilot);
  std::vector<DyadicMatrix> terms;
  for (const auto& t : cfg.terms) terms.push_back(EvaluateTerm(t.expression, d.data));
  std::vector<const DyadicMatrix*> ptrs;
  for (const auto& t : terms) ptrs.push_back(&t);
  const DyadInclusion inc = ListwiseDelete(ptrs, d.data.nodes().groups());
  if (inc.count() < 2) throw Error("too few complete dyads to calibrate");
  double sum = 0, sum2 = 0;
  for (std::size_t i = 0; i < d.linear_predictor.size(); ++i)
    for (std::size_t j = i + 1; j < d.linear_predictor.size(); ++j)
      if (inc.Included(i, j)) {
        const double v = d.linear_predictor.value(i, j);
        sum += v;
        sum2 += v * v;
      }
  const double count = static_cast<double>(inc.count());
  const double variance = sum2 / count - (sum / count) * (sum / count);
  return std::sqrt(std::max(0.0, variance) * (1.0 - target_r2) / target_r2);
}

std::vector<ContactEvent> GenerateContactStream(const DyadicMatrix& target_seconds,
                                                std::span<const int> groups,
                                                const ContactStreamOptions& options) {
  const std::size_t n = target_seconds.size();
  if (groups.size() != n) throw Error("group labels do not match matrix size");
  if (options.min_gap < 1 || options.max_gap < options.min_gap || options.max_piece < 1)
    throw Error("invalid fragmentation parameters");
  Rng rng = ReplicateRng(options.seed, 1);
  std::vector<ContactEvent> events;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (target_seconds.missing(i, j)) continue;
      const double target = target_seconds.value(i, j);
      if (target < 0 || target != std::floor(target))
        throw Error(fmt::format("target duration {} for dyad ({}, {}) is not a whole "
                                "non-negative number of seconds",
                                target, i, j));
      if (target == 0) continue;
      if (groups[i] != groups[j]) throw Error("nonzero target across samples");
      auto remaining = static_cast<std::int64_t>(target);

      std::vector<std::int64_t> pieces;
      if (!options.fragment) {
        pieces.push_back(remaining);
      } else {
        std::uniform_int_distribution<std::int64_t> piece(1, options.max_piece);
        while (remaining > 0) {
          const std::int64_t len = std::min(remaining, piece(rng));
          pieces.push_back(len);
          remaining -= len;
        }
      }
      std::uniform_int_distribution<std::int64_t> gap(options.min_gap, options.max_gap);
      std::vector<std::int64_t> gaps(pieces.size() - 1);
      std::int64_t span = 0;
      for (auto p : pieces) span += p;
      for (auto& g : gaps) span += (g = gap(rng));
      std::uniform_int_distribution<std::int64_t> start(0, std::max<std::int64_t>(0, options.window - span));
      std::int64_t t = start(rng);
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        events.push_back(MakeContact(groups[i], i, j, t, t + pieces[k]));
        t += pieces[k];
        if (k < gaps.size()) t += gaps[k];
      }
    }
  std::sort(events.begin(), events.end(), ContactLess);
  return events;
}

DyadicMatrix PerHourToSeconds(const DyadicMatrix& per_hour, double window_seconds) {
  if (!(window_seconds > 0)) throw Error("window must be positive");
  DyadicMatrix out(per_hour.size(), "seconds");
  for (std::size_t i = 0; i < per_hour.size(); ++i)
    for (std::size_t j = i + 1; j < per_hour.size(); ++j) {
      if (per_hour.missing(i, j))
        out.SetMissing(i, j);
      else
        out.Set(i, j, std::round(per_hour.value(i, j) * window_seconds / 3600.0));
    }
  return out;
}

}  // namespace qapnet
