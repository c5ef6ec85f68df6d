#include "qapnet/scale.h"

#include <fmt/format.h>

#include "qapnet/error.h"

namespace qapnet {
namespace {

double SampleVariance(const Eigen::VectorXd& x) {
  const double mean = x.mean();
  return (x.array() - mean).square().sum() / static_cast<double>(x.size() - 1);
}

}  // namespace

std::optional<int> ScaleScore(std::span<const std::optional<int>> items,
                              int item_count, int max_item) {
  if (static_cast<int>(items.size()) != item_count)
    throw Error(fmt::format("expected {} items, got {}", item_count, items.size()));
  int sum = 0;
  bool complete = true;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (!items[k]) {
      complete = false;
      continue;
    }
    if (*items[k] < 0 || *items[k] > max_item)
      throw Error(fmt::format("item {} has value {} outside [0, {}]", k + 1,
                              *items[k], max_item));
    sum += *items[k];
  }
  if (!complete) return std::nullopt;
  return sum;
}

double CronbachAlpha(const Eigen::MatrixXd& items) {
  const auto k = items.cols();
  if (k < 2) throw Error("Cronbach's alpha needs at least two items");
  if (items.rows() < 2) throw Error("Cronbach's alpha needs at least two respondents");
  double item_variance = 0.0;
  for (Eigen::Index c = 0; c < k; ++c) {
    const double v = SampleVariance(items.col(c));
    if (!(v > 0)) throw Error(fmt::format("item {} has zero variance", c + 1));
    item_variance += v;
  }
  const double total_variance = SampleVariance(items.rowwise().sum());
  if (!(total_variance > 0)) throw Error("total score has zero variance");
  const double kd = static_cast<double>(k);
  return kd / (kd - 1.0) * (1.0 - item_variance / total_variance);
}

}  // namespace qapnet
