#ifndef QAPNET_DESCRIPTIVES_H_
#define QAPNET_DESCRIPTIVES_H_

#include <span>
#include <vector>

#include "qapnet/contacts.h"
#include "qapnet/correlation.h"
#include "qapnet/dyadic_matrix.h"
#include "qapnet/panel.h"

namespace qapnet {

// Node-level interaction aggregates:
//   T                   row sum of `per_hour` within the node's sample
//   T_friends           row sum over OR-symmetrized friends
//   T_per_friend        T_friends / number of friends (unset without friends)
//   T_mutual_friends, T_per_mutual_friend   same over mutual friends
//   T_dyadic, T_group, ratio_dyadic          from co-presence exposures
// Friend-based variables are emitted only with a network; exposure-based
// ones only when `exposures` is non-empty.
std::vector<NodeVariable> InteractionAggregates(const DyadicMatrix& per_hour,
                                                std::span<const int> groups,
                                                const NominationNetwork* friends,
                                                std::span<const NodeExposure> exposures);

// Numeric attributes become variables directly. Categorical attributes with
// exactly two levels are coded 0/1 (first level in sorted order is 0) and
// flagged ordinal; others are skipped. The built-in "sample" is skipped.
std::vector<NodeVariable> AttributeVariables(const NodePanel& panel);

}  // namespace qapnet

#endif  // QAPNET_DESCRIPTIVES_H_
