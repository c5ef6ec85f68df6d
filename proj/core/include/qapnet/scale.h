#ifndef QAPNET_SCALE_H_
#define QAPNET_SCALE_H_

#include <optional>
#include <span>

#include <Eigen/Core>

namespace qapnet {

// Depressive-symptom style sum scale: `item_count` items each in
// [0, max_item]. Any missing item makes the score missing; an out-of-range
// item throws.
std::optional<int> ScaleScore(std::span<const std::optional<int>> items,
                              int item_count = 20, int max_item = 3);

// Cronbach's alpha over a respondents x items matrix using sample
// variances. Needs >= 2 items and >= 2 respondents; throws when any item or
// the total score has zero variance.
double CronbachAlpha(const Eigen::MatrixXd& items);

}  // namespace qapnet

#endif  // QAPNET_SCALE_H_
