#include "qapnet/descriptives.h"

#include <set>
#include <string>

#include "qapnet/builders.h"
#include "qapnet/error.h"

namespace qapnet {

std::vector<NodeVariable> InteractionAggregates(const DyadicMatrix& per_hour,
                                                std::span<const int> groups,
                                                const NominationNetwork* friends,
                                                std::span<const NodeExposure> exposures) {
  const std::size_t n = per_hour.size();
  if (groups.size() != n) throw Error("group labels do not match matrix size");
  std::vector<NodeVariable> out;

  NodeVariable total{"T", NodeValues(n), false};
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && groups[j] == groups[i] && !per_hour.missing(i, j)) {
        sum += per_hour.value(i, j);
        any = true;
      }
    if (any) total.values[i] = sum;
  }
  out.push_back(std::move(total));

  if (friends) {
    if (friends->size() != n) throw Error("nomination network does not match node set");
    auto with = [&](const DyadicMatrix& tie, const std::string& name,
                    const std::string& per_name) {
      NodeVariable t{name, NodeValues(n), false};
      NodeVariable per{per_name, NodeValues(n), false};
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || tie.missing(i, j) || tie.value(i, j) == 0) continue;
          if (!per_hour.missing(i, j)) sum += per_hour.value(i, j);
          ++count;
        }
        t.values[i] = sum;
        if (count > 0) per.values[i] = sum / static_cast<double>(count);
      }
      out.push_back(std::move(t));
      out.push_back(std::move(per));
    };
    with(SymmetrizeOr(*friends), "T_friends", "T_per_friend");
    with(MutualMatrix(*friends), "T_mutual_friends", "T_per_mutual_friend");
  }

  if (!exposures.empty()) {
    if (exposures.size() != n) throw Error("exposures do not match node set");
    NodeVariable dyadic{"T_dyadic", NodeValues(n), false};
    NodeVariable group{"T_group", NodeValues(n), false};
    NodeVariable ratio{"ratio_dyadic", NodeValues(n), false};
    for (const auto& x : exposures) {
      dyadic.values[x.node] = static_cast<double>(x.seconds_dyadic);
      group.values[x.node] = static_cast<double>(x.seconds_group);
      ratio.values[x.node] = x.ratio_dyadic;
    }
    out.push_back(std::move(dyadic));
    out.push_back(std::move(group));
    out.push_back(std::move(ratio));
  }
  return out;
}

std::vector<NodeVariable> AttributeVariables(const NodePanel& panel) {
  std::vector<NodeVariable> out;
  for (const auto& name : panel.names()) {
    if (name == "sample") continue;
    if (panel.IsNumeric(name)) {
      out.push_back({name, panel.Numeric(name), false});
      continue;
    }
    const auto& cats = panel.Categorical(name);
    std::set<std::string> levels;
    for (const auto& c : cats)
      if (c) levels.insert(*c);
    if (levels.size() != 2) continue;
    NodeVariable v{name, NodeValues(cats.size()), true};
    for (std::size_t i = 0; i < cats.size(); ++i)
      if (cats[i]) v.values[i] = *cats[i] == *levels.begin() ? 0.0 : 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace qapnet
