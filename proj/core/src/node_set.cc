#include "qapnet/node_set.h"

namespace qapnet {

std::size_t NodeSet::Add(const std::string& sample, const std::string& node) {
  NodeKey key{sample, node};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  auto [sit, inserted] =
      sample_index_.emplace(sample, static_cast<int>(samples_.size()));
  if (inserted) samples_.push_back(sample);
  const std::size_t idx = keys_.size();
  keys_.push_back(key);
  groups_.push_back(sit->second);
  index_.emplace(std::move(key), idx);
  return idx;
}

std::optional<std::size_t> NodeSet::Find(const std::string& sample,
                                         const std::string& node) const {
  auto it = index_.find(NodeKey{sample, node});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> NodeSet::FindSample(const std::string& sample) const {
  auto it = sample_index_.find(sample);
  if (it == sample_index_.end()) return std::nullopt;
  return it->second;
}

NodeSet NodeSet::Restrict(const std::string& sample,
                          std::vector<std::size_t>* mapping) const {
  NodeSet out;
  if (mapping) mapping->clear();
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (keys_[i].sample != sample) continue;
    out.Add(keys_[i].sample, keys_[i].node);
    if (mapping) mapping->push_back(i);
  }
  return out;
}

}  // namespace qapnet
