#ifndef QAPNET_SYNTH_H_
#define QAPNET_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qapnet/contacts.h"
#include "qapnet/dyadic_matrix.h"
#include "qapnet/qap.h"
#include "qapnet/terms.h"

namespace qapnet {

struct PlantedTerm {
  std::string label;
  std::string expression;  // same grammar as model terms
  double beta = 0.0;
};

// Forward model for synthetic data: node attributes and friendship
// nominations are drawn per sample, the covariates are built with the same
// term evaluator the fitting path uses, and
//
//   log duration = intercept + sum_k beta_k x_k + Normal(0, sigma)
//   duration     = max(0, exp(log duration) - offset)
//
// on every within-sample dyad. Sample ids are "1", "2", ...; node ids are
// globally unique integers.
struct SynthConfig {
  std::vector<std::size_t> sample_sizes = {30, 30};
  double depression_mean = 10.28;
  double depression_sd = 5.25;
  double age_mean = 21.0;
  double age_sd = 2.5;
  double female_share = 0.5;
  double org_share = 0.2;
  double nomination_density = 0.05;  // P(an unordered pair has a tie)
  double reciprocity = 0.5;          // P(a tie is mutual)
  double nonresponse = 0.0;          // P(a node skipped the survey)
  bool big_five = true;
  double intercept = 2.504;
  std::vector<PlantedTerm> terms;
  double sigma = 1.0;
  double offset = 0.0;
  std::uint64_t seed = 1;

  // Throws Error: node counts < 4, sigma < 0, shares outside [0, 1].
  void Validate() const;
};

// Planted coefficients mirroring the published multi-group model (twelve
// terms plus intercept). The sample dummy is left out for a single sample.
std::vector<PlantedTerm> PublishedModelTerms(std::size_t sample_count);
SynthConfig PublishedModelConfig();

// Model spec that fits exactly the planted terms of `cfg`.
QapModelSpec PlantedModelSpec(const SynthConfig& cfg);

struct SynthDataset {
  // panel, networks {"friendship"}, dyadic {"seconds_per_hour"}.
  Dataset data;
  DyadicMatrix linear_predictor;  // noise-free log scale
  DyadicMatrix log_duration;      // with noise
  DyadicMatrix durations;         // seconds per hour
};

SynthDataset GenerateDataset(const SynthConfig& cfg);

// Noise SD giving an expected R^2 of `target_r2` on the log scale:
// sigma^2 = var(linear predictor) (1 - R^2) / R^2 over the dyads that
// survive listwise deletion, measured on `cfg`'s own draw.
double CalibrateSigma(const SynthConfig& cfg, double target_r2);

// Parameters of the normal whose rounded draws, rejected outside
// [0, max_score], have the requested mean and SD.
struct LatentNormal {
  double mean = 0.0;
  double sd = 1.0;
};
LatentNormal SolveDiscretizedNormal(double mean, double sd, int max_score);

struct ContactStreamOptions {
  bool fragment = false;
  std::int64_t min_gap = 1;     // silence between fragments
  std::int64_t max_gap = 74;
  std::int64_t max_piece = 300;  // longest fragment
  std::int64_t window = 36 * 3600;
  std::uint64_t seed = 1;
};

// Events whose per-dyad durations sum to `target_seconds` exactly. Targets
// must be non-negative integers; cross-group dyads must be zero.
std::vector<ContactEvent> GenerateContactStream(const DyadicMatrix& target_seconds,
                                                std::span<const int> groups,
                                                const ContactStreamOptions& options);

// Rounds per-hour durations over a window to integer seconds.
DyadicMatrix PerHourToSeconds(const DyadicMatrix& per_hour, double window_seconds);

}  // namespace qapnet

#endif  // QAPNET_SYNTH_H_
